#include <algorithm>
#include <numeric>

#include "sched/core/errors.hpp"
#include "sched/gap/gap.hpp"
#include "sched/gap/min_cost_matching.hpp"

namespace sched::gap {

namespace {

constexpr double kIntegral = 1e-6;  // x within this of 1 counts as integral
constexpr double kShare = 1e-9;     // smaller pieces are LP noise

}  // namespace

Assignment shmoys_tardos_round(const VirtualInstance& vi, const FractionalAssignment& fa) {
  const int m = vi.machines();
  const int n = vi.jobs();
  std::vector<int> machine_of(n, -1);
  std::vector<int> frac_index(n, -1);
  std::vector<int> frac_jobs;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) {
      if (fa.x[i][j] >= 1.0 - kIntegral) machine_of[j] = i;
    }
    if (machine_of[j] < 0) {
      frac_index[j] = static_cast<int>(frac_jobs.size());
      frac_jobs.push_back(j);
    }
  }
  if (frac_jobs.empty()) return make_assignment(vi, std::move(machine_of));

  // Pour the fractional jobs of each machine into unit slots, largest
  // processing time first.
  std::vector<MatchEdge> edges;
  std::vector<int> slot_machine;
  for (int i = 0; i < m; ++i) {
    std::vector<int> on;
    for (int j : frac_jobs) {
      if (fa.x[i][j] > kShare) on.push_back(j);
    }
    std::stable_sort(on.begin(), on.end(), [&](int a, int b) { return vi.proc[i][a] > vi.proc[i][b]; });
    int slot = -1;
    double fill = 1.0;
    for (int j : on) {
      double left = fa.x[i][j];
      while (left > kShare) {
        if (fill >= 1.0 - kShare) {
          slot = static_cast<int>(slot_machine.size());
          slot_machine.push_back(i);
          fill = 0.0;
        }
        double put = std::min(left, 1.0 - fill);
        edges.push_back({frac_index[j], slot, vi.cost[i][j]});
        fill += put;
        left -= put;
      }
    }
  }
  auto match = min_cost_left_perfect_matching(static_cast<int>(frac_jobs.size()),
                                               static_cast<int>(slot_machine.size()), edges);
  if (!match) throw InternalError("slot graph has no job-saturating matching");
  for (std::size_t a = 0; a < frac_jobs.size(); ++a) machine_of[frac_jobs[a]] = slot_machine[(*match)[a]];
  return make_assignment(vi, std::move(machine_of));
}

Assignment repair_profit(const VirtualInstance& vi, Assignment a) {
  if (a.profit >= vi.profit_target) return a;
  const int v = vi.virtual_machine();
  int pick = -1, to = -1;
  for (int j = 0; j < vi.jobs(); ++j) {
    if (a.machine_of[j] != v) continue;
    int best = -1;
    for (int i = 0; i < vi.real_machines; ++i) {
      if (!vi.allowed[i][j] || vi.proc[i][j] > vi.capacity[i]) continue;
      if (best < 0 || vi.proc[i][j] < vi.proc[best][j]) best = i;
    }
    if (best < 0) continue;
    if (pick < 0 || vi.profit[j] > vi.profit[pick]) {
      pick = j;
      to = best;
    }
  }
  if (pick < 0) throw InternalError("profit short and no virtual job can move to a real machine");
  a.machine_of[pick] = to;
  a = make_assignment(vi, std::move(a.machine_of));
  if (a.profit < vi.profit_target) throw InternalError("profit still short after repair");
  return a;
}

}  // namespace sched::gap
