#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace sched::gap {

struct MatchEdge {
  int left;
  int right;
  std::int64_t cost;
};

// Minimum-cost matching saturating every left vertex, by successive
// shortest paths with potentials. Returns the right vertex of each left
// vertex, or nullopt when no saturating matching exists. Costs must be
// non-negative.
std::optional<std::vector<int>> min_cost_left_perfect_matching(int left, int right,
                                                                const std::vector<MatchEdge>& edges);

}  // namespace sched::gap
