#include <stdexcept>

#include "sched/flow/flow.hpp"

namespace sched::flow {

GapConstruction gen_gap_instance(int k) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("k must be even and at least 2");
  if (k > 20) throw std::invalid_argument("k above 20 is too large to build");
  GapConstruction g;
  g.k = k;
  g.small_count = std::int64_t{1} << (k + 1);
  g.grey_start = (std::int64_t{1} << (k + 1)) - 2;
  // Block j (1 <= j <= k) starts once blocks k..j+1 have passed.
  for (int j = 1; j <= k; ++j) {
    g.large.push_back(static_cast<int>(g.instance.jobs.size()));
    g.instance.jobs.push_back({std::int64_t{1} << (j + 1), (std::int64_t{1} << (k + 1)) - (std::int64_t{1} << (j + 1))});
  }
  g.large.push_back(static_cast<int>(g.instance.jobs.size()));
  g.instance.jobs.push_back({std::int64_t{1} << (k + 1), g.grey_start + g.small_count});
  for (std::int64_t i = 0; i < g.small_count; ++i) {
    g.small.push_back(static_cast<int>(g.instance.jobs.size()));
    g.instance.jobs.push_back({1, g.grey_start + i});
  }
  g.instance.profit_target = g.small_count + k / 2 + 1;
  return g;
}

}  // namespace sched::flow
