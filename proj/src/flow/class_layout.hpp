#pragma once

#include <vector>

#include "sched/flow/timeline.hpp"

namespace sched::flow::detail {

// A class-k job occupying [start, start + len) of the class space.
struct Placed {
  int job;
  Ticks start;
  Ticks len;
};

// Replace the class-k pieces of base by the given virtual placement.
Timeline write_class(const FlowInstance& inst, const Timeline& base, int k, const ClassSpace& space,
                     const std::vector<Placed>& placed);

}  // namespace sched::flow::detail
