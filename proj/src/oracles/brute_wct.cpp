#include <algorithm>
#include <limits>
#include <string>
#include <tuple>

#include "sched/core/errors.hpp"
#include "sched/oracles/oracles.hpp"

namespace sched::oracle {

namespace {

struct Point {
  std::int64_t makespan;
  std::int64_t cost;
  int last;  // job appended last, -1 for the empty sequence
  int prev;  // index of the predecessor point in the subset without `last`
};

// Pareto sets of (makespan, cost) over all orders of every job subset on one
// machine, with ASAP starts.
std::vector<std::vector<Point>> pareto_by_subset(const WctInstance& inst, int machine) {
  const int n = static_cast<int>(inst.jobs.size());
  std::vector<std::vector<Point>> f(std::size_t{1} << n);
  f[0] = {{0, 0, -1, -1}};
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    std::vector<Point> cand;
    for (int j = 0; j < n; ++j) {
      if (!(s >> j & 1)) continue;
      const auto& from = f[s ^ (1u << j)];
      const auto& job = inst.jobs[j];
      for (std::size_t a = 0; a < from.size(); ++a) {
        std::int64_t c = std::max(from[a].makespan, job.release) + job.proc[machine];
        cand.push_back({c, from[a].cost + job.weight * c, j, static_cast<int>(a)});
      }
    }
    std::sort(cand.begin(), cand.end(), [](const Point& a, const Point& b) {
      return std::tie(a.makespan, a.cost, a.last) < std::tie(b.makespan, b.cost, b.last);
    });
    auto& out = f[s];
    for (const auto& p : cand) {
      if (out.empty() || p.cost < out.back().cost) out.push_back(p);
    }
  }
  return f;
}

}  // namespace

OracleResult brute_wct(const WctInstance& inst, std::int64_t cap) {
  const int n = static_cast<int>(inst.jobs.size());
  const int m = inst.machines;
  if (n > 16) throw SizeError("brute_wct: too many jobs for subset enumeration");
  double space = 1;
  for (int j = 0; j < n; ++j) space *= (m + 1);
  if (space > static_cast<double>(cap)) throw SizeError("brute_wct: (m+1)^n exceeds the cap");

  std::vector<std::vector<std::vector<Point>>> f;
  std::vector<std::vector<std::int64_t>> best_cost(m);
  for (int i = 0; i < m; ++i) {
    f.push_back(pareto_by_subset(inst, i));
    best_cost[i].resize(f[i].size());
    for (std::size_t s = 0; s < f[i].size(); ++s) {
      std::int64_t b = std::numeric_limits<std::int64_t>::max();
      for (const auto& p : f[i][s]) b = std::min(b, p.cost);
      best_cost[i][s] = b;
    }
  }

  const std::size_t targets = inst.profit_targets.size();
  OracleResult res;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::vector<std::uint32_t> best_masks;
  std::vector<std::uint32_t> masks(m, 0);
  std::vector<std::int64_t> profit(targets, 0);

  // Assign each job to a machine or leave it out.
  auto rec = [&](auto&& self, int j) -> void {
    if (j == n) {
      ++res.explored;
      for (std::size_t k = 0; k < targets; ++k) {
        if (profit[k] < inst.profit_targets[k].target) return;
      }
      std::int64_t total = 0;
      for (int i = 0; i < m; ++i) total += best_cost[i][masks[i]];
      if (total < best) {
        best = total;
        best_masks = masks;
      }
      return;
    }
    self(self, j + 1);
    for (std::size_t k = 0; k < targets; ++k) profit[k] += inst.profit_targets[k].profits[j];
    for (int i = 0; i < m; ++i) {
      masks[i] |= 1u << j;
      self(self, j + 1);
      masks[i] ^= 1u << j;
    }
    for (std::size_t k = 0; k < targets; ++k) profit[k] -= inst.profit_targets[k].profits[j];
  };
  rec(rec, 0);
  if (best_masks.empty()) return res;

  res.feasible = true;
  res.objective = Dyadic::integer(best);
  for (int i = 0; i < m; ++i) {
    std::uint32_t s = best_masks[i];
    const auto& pts = f[i][s];
    int idx = static_cast<int>(std::min_element(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
                                 return a.cost < b.cost;
                               }) - pts.begin());
    // Walk predecessors back to the empty set; completions come out reversed.
    while (s != 0) {
      const Point& p = f[i][s][idx];
      const auto& job = inst.jobs[p.last];
      res.witness.segments.push_back(
          {p.last, i, units_to_ticks(p.makespan - job.proc[i]), units_to_ticks(p.makespan)});
      res.witness.selected.push_back(p.last);
      s ^= 1u << p.last;
      idx = p.prev;
    }
  }
  canonicalize(res.witness);
  return res;
}

}  // namespace sched::oracle
