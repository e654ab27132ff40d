#include "sched/core/schedule.hpp"

#include <algorithm>
#include <tuple>

namespace sched {

void canonicalize(SegmentSchedule& s) {
  auto& seg = s.segments;
  std::erase_if(seg, [](const Segment& x) { return x.end <= x.start; });
  std::sort(seg.begin(), seg.end(), [](const Segment& a, const Segment& b) {
    return std::tie(a.machine, a.start, a.job) < std::tie(b.machine, b.start, b.job);
  });
  std::vector<Segment> merged;
  for (const auto& x : seg) {
    if (!merged.empty() && merged.back().machine == x.machine && merged.back().job == x.job &&
        merged.back().end == x.start) {
      merged.back().end = x.end;
    } else {
      merged.push_back(x);
    }
  }
  seg = std::move(merged);
  std::sort(s.selected.begin(), s.selected.end());
  s.selected.erase(std::unique(s.selected.begin(), s.selected.end()), s.selected.end());
}

std::vector<Ticks> completion_ticks(const SegmentSchedule& s, int jobs) {
  std::vector<Ticks> c(jobs, 0);
  for (const auto& x : s.segments) c[x.job] = std::max(c[x.job], x.end);
  return c;
}

}  // namespace sched
