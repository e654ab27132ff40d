#include <string>

#include "sched/core/errors.hpp"
#include "sched/oracles/oracles.hpp"

namespace sched::oracle {

namespace {

std::int64_t binomial_capped(std::int64_t n, std::int64_t k, std::int64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  // Exact while below the cap; each partial product is itself a binomial.
  __int128 v = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    v = v * (n - k + i) / i;
    if (v > cap) return cap + 1;
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

OracleResult brute_flow(const FlowInstance& inst, std::int64_t cap) {
  const int n = static_cast<int>(inst.jobs.size());
  const int k = static_cast<int>(inst.profit_target);
  if (binomial_capped(n, k, cap) > cap) {
    throw SizeError("brute_flow: C(" + std::to_string(n) + ", " + std::to_string(k) + ") exceeds the cap");
  }
  OracleResult best;
  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  std::int64_t explored = 0;
  while (true) {
    OracleResult r = srpt(inst, pick);
    ++explored;
    if (!best.feasible || r.objective < best.objective) best = r;
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int a = i + 1; a < k; ++a) pick[a] = pick[a - 1] + 1;
  }
  best.explored = explored;
  return best;
}

}  // namespace sched::oracle
