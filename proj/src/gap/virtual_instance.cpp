#include <algorithm>

#include "sched/core/errors.hpp"
#include "sched/gap/gap.hpp"

namespace sched::gap {

VirtualInstance build_virtual_instance(const GapInstance& inst) {
  const int m = inst.machines;
  const std::int64_t T = inst.makespan_bound;
  VirtualInstance vi;
  vi.real_machines = m;
  vi.proc.assign(m + 1, {});
  vi.cost.assign(m + 1, {});
  vi.allowed.assign(m + 1, {});
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    const GapJob& job = inst.jobs[j];
    if (*std::min_element(job.proc.begin(), job.proc.end()) > T) continue;
    vi.job_ids.push_back(static_cast<int>(j));
    for (int i = 0; i < m; ++i) {
      vi.proc[i].push_back(job.proc[i]);
      vi.cost[i].push_back(job.cost[i]);
      vi.allowed[i].push_back(job.proc[i] <= T);
    }
    vi.proc[m].push_back(job.profit);
    vi.cost[m].push_back(0);
    vi.allowed[m].push_back(1);
    vi.profit.push_back(job.profit);
  }
  std::int64_t total = 0;
  for (auto p : vi.profit) total += p;
  if (inst.profit_target > total) {
    throw InfeasibleError("profit target exceeds the profit of jobs that fit within the makespan bound");
  }
  vi.capacity.assign(m, T);
  vi.capacity.push_back(total - inst.profit_target);
  vi.cost_bound = inst.cost_bound;
  vi.profit_target = inst.profit_target;
  return vi;
}

Assignment make_assignment(const VirtualInstance& vi, std::vector<int> machine_of) {
  Assignment a;
  a.machine_of = std::move(machine_of);
  a.load.assign(vi.machines(), 0);
  for (int j = 0; j < vi.jobs(); ++j) {
    int i = a.machine_of[j];
    a.load[i] += vi.proc[i][j];
    a.cost += vi.cost[i][j];
    if (i != vi.virtual_machine()) a.profit += vi.profit[j];
  }
  return a;
}

}  // namespace sched::gap
