#include <algorithm>
#include <limits>

#include "sched/core/errors.hpp"
#include "sched/oracles/oracles.hpp"

namespace sched::oracle {

namespace {

// Visit every assignment of jobs to machines or to -1 (outlier) that meets
// the profit target, with its cost and makespan.
template <class F>
std::int64_t for_each_assignment(const GapInstance& inst, std::int64_t cap, F&& visit) {
  const int n = static_cast<int>(inst.jobs.size());
  const int m = inst.machines;
  double space = 1;
  for (int j = 0; j < n; ++j) space *= (m + 1);
  if (space > static_cast<double>(cap)) throw SizeError("brute_gap: (m+1)^n exceeds the cap");
  std::vector<int> machine_of(n, -1);
  std::vector<std::int64_t> load(m, 0);
  std::int64_t explored = 0;
  auto rec = [&](auto&& self, int j, std::int64_t cost, std::int64_t profit) -> void {
    if (j == n) {
      ++explored;
      if (profit < inst.profit_target) return;
      std::int64_t mk = 0;
      for (auto l : load) mk = std::max(mk, l);
      visit(machine_of, cost, mk, profit);
      return;
    }
    machine_of[j] = -1;
    self(self, j + 1, cost, profit);
    for (int i = 0; i < m; ++i) {
      machine_of[j] = i;
      load[i] += inst.jobs[j].proc[i];
      self(self, j + 1, cost + inst.jobs[j].cost[i], profit + inst.jobs[j].profit);
      load[i] -= inst.jobs[j].proc[i];
    }
    machine_of[j] = -1;
  };
  rec(rec, 0, 0, 0);
  return explored;
}

}  // namespace

SegmentSchedule gap_schedule(const GapInstance& inst, const std::vector<int>& machine_of) {
  SegmentSchedule s;
  std::vector<std::int64_t> load(inst.machines, 0);
  for (std::size_t j = 0; j < machine_of.size(); ++j) {
    int i = machine_of[j];
    if (i < 0) continue;
    std::int64_t p = inst.jobs[j].proc[i];
    s.segments.push_back({static_cast<int>(j), i, units_to_ticks(load[i]), units_to_ticks(load[i] + p)});
    s.selected.push_back(static_cast<int>(j));
    load[i] += p;
  }
  canonicalize(s);
  return s;
}

GapOracleResult brute_gap(const GapInstance& inst, std::int64_t cap) {
  GapOracleResult res;
  bool found = false;
  res.explored = for_each_assignment(inst, cap, [&](const std::vector<int>& a, std::int64_t cost, std::int64_t mk,
                                                    std::int64_t profit) {
    if (cost > inst.cost_bound) return;
    if (!found || std::pair(mk, cost) < std::pair(res.makespan, res.cost)) {
      found = true;
      res.machine_of = a;
      res.cost = cost;
      res.makespan = mk;
      res.profit = profit;
    }
  });
  if (!found) return res;
  res.feasible = res.makespan <= inst.makespan_bound;
  res.witness = gap_schedule(inst, res.machine_of);
  return res;
}

std::vector<GapParetoPoint> gap_pareto(const GapInstance& inst, std::int64_t cap) {
  std::vector<GapParetoPoint> all;
  for_each_assignment(inst, cap, [&](const std::vector<int>&, std::int64_t cost, std::int64_t mk, std::int64_t) {
    all.push_back({cost, mk});
  });
  std::sort(all.begin(), all.end(), [](const GapParetoPoint& a, const GapParetoPoint& b) {
    return std::pair(a.cost, a.makespan) < std::pair(b.cost, b.makespan);
  });
  std::vector<GapParetoPoint> front;
  for (const auto& p : all) {
    if (front.empty() || p.makespan < front.back().makespan) front.push_back(p);
  }
  return front;
}

}  // namespace sched::oracle
