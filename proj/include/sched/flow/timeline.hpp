#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "sched/core/instance.hpp"
#include "sched/core/schedule.hpp"
#include "sched/core/ticks.hpp"

namespace sched::flow {

using Wide = __int128;

// Fractional flow values are exact multiples of 2^-45 time units; charge
// integrals are exact multiples of 2^-65.
inline constexpr int kFlowBits = 45;
inline constexpr int kChargeBits = 65;
inline constexpr int kMaxClass = 24;
// Fractions y_j are stored as integers over 2^20.
inline constexpr std::int64_t kFull = kTicksPerUnit;
inline constexpr Ticks kForever = std::numeric_limits<Ticks>::max() / 4;

struct Piece {
  int job = 0;
  Ticks start = 0;
  Ticks end = 0;

  Ticks length() const { return end - start; }
  friend bool operator==(const Piece&, const Piece&) = default;
};

// Single-machine fractional schedule. Gaps between pieces and everything
// after the last piece are free time.
struct Timeline {
  std::vector<Piece> pieces;  // sorted by start, disjoint, non-empty

  Ticks end() const { return pieces.empty() ? 0 : pieces.back().end; }
  Ticks processed() const;                      // P = total processed length
  std::vector<Ticks> amounts(int jobs) const;   // processed length per job
  std::vector<std::pair<Ticks, Ticks>> free_intervals() const;  // gaps before end()
};

// Sort, merge touching pieces of one job, drop empty ones. Throws
// InternalError on overlap.
void normalize_pieces(Timeline& tl);

// LP flow sum_t (x_jt / p~_j)(t + 1/2 - r_j) + x_jt / 2 of every job with
// pieces, in units of 2^-45. x_jt is the job's length inside [t, t+1).
Wide lp_flow(const FlowInstance& inst, const Timeline& tl);
Wide lp_flow_class(const FlowInstance& inst, const Timeline& tl, int k);

// V_{k,t}: class-k processing at or after integer time t, in ticks.
Ticks suffix_volume(const FlowInstance& inst, const Timeline& tl, int k, std::int64_t t);

// Class-k jobs never interleave out of (release, id) order.
bool non_alternating(const FlowInstance& inst, const Timeline& tl, int k);
// No free time between a class-k job's release and its last processed point.
bool packed(const FlowInstance& inst, const Timeline& tl, int k);

// Jobs processed for exactly p_j.
std::vector<int> full_jobs(const FlowInstance& inst, const Timeline& tl);

SegmentSchedule to_schedule(const Timeline& tl, std::vector<int> selected);

// Union of class-k time and free time, flattened into one axis starting at
// 0. The axis continues forever past the timeline end.
class ClassSpace {
 public:
  ClassSpace(const FlowInstance& inst, const Timeline& tl, int k);

  // Measure of the space before real time x.
  Ticks to_virtual(Ticks x) const;
  // Real point at virtual position v (first space point with that offset).
  Ticks to_real(Ticks v) const;
  // End of the space interval containing real point x, which must lie in it.
  Ticks interval_end(Ticks x) const;
  // Real pieces covering virtual [va, vb).
  std::vector<std::pair<Ticks, Ticks>> to_real(Ticks va, Ticks vb) const;

 private:
  std::vector<Ticks> start_, end_, offset_;
};

}  // namespace sched::flow
