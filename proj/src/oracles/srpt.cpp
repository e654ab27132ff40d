#include <algorithm>
#include <limits>

#include "sched/oracles/oracles.hpp"

namespace sched::oracle {

OracleResult srpt(const FlowInstance& inst, const std::vector<int>& jobs) {
  OracleResult res;
  res.feasible = true;
  std::vector<int> order = jobs;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::pair(inst.jobs[a].release, a) < std::pair(inst.jobs[b].release, b);
  });
  std::vector<std::int64_t> remaining(inst.jobs.size(), 0);
  for (int j : order) remaining[j] = inst.jobs[j].proc;

  std::vector<int> active;
  std::size_t next = 0;
  std::int64_t t = 0;
  std::int64_t total_flow = 0;
  while (next < order.size() || !active.empty()) {
    if (active.empty()) t = std::max(t, inst.jobs[order[next]].release);
    while (next < order.size() && inst.jobs[order[next]].release <= t) active.push_back(order[next++]);
    int run = *std::min_element(active.begin(), active.end(), [&](int a, int b) {
      return std::pair(remaining[a], a) < std::pair(remaining[b], b);
    });
    std::int64_t until = t + remaining[run];
    if (next < order.size()) until = std::min(until, inst.jobs[order[next]].release);
    res.witness.segments.push_back({run, 0, units_to_ticks(t), units_to_ticks(until)});
    remaining[run] -= until - t;
    t = until;
    ++res.explored;
    if (remaining[run] == 0) {
      total_flow += t - inst.jobs[run].release;
      active.erase(std::find(active.begin(), active.end(), run));
    }
  }
  res.witness.selected = jobs;
  canonicalize(res.witness);
  res.objective = Dyadic::integer(total_flow);
  return res;
}

}  // namespace sched::oracle
