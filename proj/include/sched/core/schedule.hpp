#pragma once

#include <vector>

#include "sched/core/ticks.hpp"

namespace sched {

struct Segment {
  int job = 0;
  int machine = 0;
  Ticks start = 0;
  Ticks end = 0;

  Ticks length() const { return end - start; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

struct SegmentSchedule {
  std::vector<Segment> segments;  // sorted by (machine, start)
  std::vector<int> selected;      // ascending job ids

  friend bool operator==(const SegmentSchedule&, const SegmentSchedule&) = default;
};

// Sort segments by (machine, start, job), merge touching pieces of the same
// job, drop empty pieces, and sort the selected ids.
void canonicalize(SegmentSchedule& s);

// Latest segment end of each job, 0 for jobs without segments.
std::vector<Ticks> completion_ticks(const SegmentSchedule& s, int jobs);

}  // namespace sched
