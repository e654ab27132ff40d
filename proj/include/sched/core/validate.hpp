#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sched/core/instance.hpp"
#include "sched/core/schedule.hpp"
#include "sched/core/ticks.hpp"

namespace sched {

enum class ViolationKind {
  Overlap,
  ReleaseDate,
  UnderProcessing,
  OverProcessing,
  Migration,
  UnselectedProcessing,
  ProfitShortfall,
  Unsorted,
};

const char* to_string(ViolationKind k);

struct Violation {
  ViolationKind kind;
  int job = -1;      // -1 when not job specific
  int machine = -1;  // -1 when not machine specific
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  // gap: total assignment cost; wct: sum of w_j C_j; flow: sum of C_j - r_j.
  Dyadic objective;
  Dyadic makespan;         // latest segment end over all machines
  std::int64_t cost = 0;   // gap only
  std::vector<std::int64_t> profit;  // scheduled profit per target (one entry for gap and flow)

  bool feasible() const { return violations.empty(); }
  bool has(ViolationKind k) const;
};

// Throws StructuralError when the schedule names a job or machine id that
// the instance does not have.
ValidationReport validate_schedule(const Instance& inst, const SegmentSchedule& sched);

}  // namespace sched
