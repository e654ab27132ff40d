#include <algorithm>
#include <cmath>
#include <limits>

#include "sched/core/errors.hpp"
#include "sched/gap/gap.hpp"

namespace sched::gap {

namespace {

struct Pair {
  int job;  // retained-job index in the virtual instance
  int machine;
};

std::vector<std::int64_t> proof_bounds(const GapInstance& inst) {
  const std::int64_t T = inst.makespan_bound;
  std::vector<std::int64_t> out;
  for (int i = 0; i < inst.machines; ++i) {
    std::int64_t pmax = 0;
    for (const auto& job : inst.jobs) {
      if (job.proc[i] <= T) pmax = std::max(pmax, job.proc[i]);
    }
    out.push_back(T + 2 * std::min(pmax, T));
  }
  return out;
}

GapResult finish(const GapInstance& inst, const std::vector<int>& machine_of) {
  GapResult r;
  r.machine_of = machine_of;
  r.load.assign(inst.machines, 0);
  r.schedule.selected.clear();
  std::vector<std::int64_t> at(inst.machines, 0);
  for (std::size_t j = 0; j < machine_of.size(); ++j) {
    int i = machine_of[j];
    if (i < 0) continue;
    const auto& job = inst.jobs[j];
    r.schedule.segments.push_back(
        {static_cast<int>(j), i, units_to_ticks(at[i]), units_to_ticks(at[i] + job.proc[i])});
    r.schedule.selected.push_back(static_cast<int>(j));
    at[i] += job.proc[i];
    r.load[i] += job.proc[i];
    r.cost += job.cost[i];
    r.profit += job.profit;
  }
  canonicalize(r.schedule);
  for (auto l : r.load) r.makespan = std::max(r.makespan, l);
  r.proof_bound = proof_bounds(inst);
  return r;
}

// LP, rounding and repair on a virtual instance. Returns the machine of each
// retained job (virtual machine for outliers).
std::optional<std::vector<int>> round_virtual(const VirtualInstance& vi) {
  auto x = solve_assignment_lp(vi);
  if (!x) return std::nullopt;
  Assignment a = repair_profit(vi, shmoys_tardos_round(vi, *x));
  return a.machine_of;
}

std::vector<int> to_original(const GapInstance& inst, const VirtualInstance& vi, const std::vector<int>& machine_of) {
  std::vector<int> out(inst.jobs.size(), -1);
  for (int j = 0; j < vi.jobs(); ++j) {
    int i = machine_of[j];
    out[vi.job_ids[j]] = i == vi.virtual_machine() ? -1 : i;
  }
  return out;
}

bool better(const GapResult& a, const GapResult& b) {
  return std::pair(a.cost, a.makespan) < std::pair(b.cost, b.makespan);
}

}  // namespace

std::optional<GapResult> solve_gap_basic(const GapInstance& inst) {
  VirtualInstance vi;
  try {
    vi = build_virtual_instance(inst);
  } catch (const InfeasibleError&) {
    return std::nullopt;
  }
  auto machine_of = round_virtual(vi);
  if (!machine_of) return std::nullopt;
  return finish(inst, to_original(inst, vi, *machine_of));
}

std::optional<GapResult> solve_gap_outliers(const GapInstance& inst, double eps) {
  if (!(eps > 0) || eps > 1) throw std::invalid_argument("eps must lie in (0, 1]");
  VirtualInstance vi;
  try {
    vi = build_virtual_instance(inst);
  } catch (const InfeasibleError&) {
    return std::nullopt;
  }
  const int g = static_cast<int>(std::ceil(1.0 / eps - 1e-9));
  const int n = vi.jobs();
  const int m = vi.real_machines;
  const std::int64_t T = inst.makespan_bound;

  std::optional<GapResult> best;
  std::int64_t tried = 0;
  std::vector<Pair> guess;
  std::vector<std::int64_t> load(m, 0);

  auto consider = [&](std::vector<int> machine_of) {
    GapResult r = finish(inst, machine_of);
    r.guessed_pairs = static_cast<int>(guess.size());
    if (!best || better(r, *best)) best = std::move(r);
  };

  // Evaluate one guess: the pairs in `guess` are the most expensive real
  // assignments of some optimum. With fewer than g pairs they are all of it.
  auto evaluate = [&]() {
    ++tried;
    std::int64_t cost = 0, profit = 0;
    std::int64_t cheapest = std::numeric_limits<std::int64_t>::max();
    std::vector<int> fixed(n, -1);
    for (const auto& p : guess) {
      cost += vi.cost[p.machine][p.job];
      profit += vi.profit[p.job];
      cheapest = std::min(cheapest, vi.cost[p.machine][p.job]);
      fixed[p.job] = p.machine;
    }
    if (cost > vi.cost_bound) return;
    if (static_cast<int>(guess.size()) < g) {
      if (profit < vi.profit_target) return;
      std::vector<int> machine_of(n, vi.virtual_machine());
      for (const auto& p : guess) machine_of[p.job] = p.machine;
      consider(to_original(inst, vi, machine_of));
      return;
    }
    VirtualInstance res;
    res.real_machines = m;
    res.proc.assign(m + 1, {});
    res.cost.assign(m + 1, {});
    res.allowed.assign(m + 1, {});
    std::vector<int> res_to_vi;
    std::int64_t rest_profit = 0;
    for (int j = 0; j < n; ++j) {
      if (fixed[j] >= 0) continue;
      res_to_vi.push_back(j);
      res.job_ids.push_back(vi.job_ids[j]);
      for (int i = 0; i <= m; ++i) {
        res.proc[i].push_back(vi.proc[i][j]);
        res.cost[i].push_back(vi.cost[i][j]);
        bool ok = vi.allowed[i][j] && (i == m || vi.cost[i][j] <= cheapest);
        res.allowed[i].push_back(ok);
      }
      res.profit.push_back(vi.profit[j]);
      rest_profit += vi.profit[j];
    }
    res.profit_target = std::max<std::int64_t>(0, vi.profit_target - profit);
    if (res.profit_target > rest_profit) return;
    for (int i = 0; i < m; ++i) res.capacity.push_back(T - load[i]);
    res.capacity.push_back(rest_profit - res.profit_target);
    res.cost_bound = vi.cost_bound - cost;
    auto sub = round_virtual(res);
    if (!sub) return;
    std::vector<int> machine_of(n, vi.virtual_machine());
    for (const auto& p : guess) machine_of[p.job] = p.machine;
    for (std::size_t a = 0; a < res_to_vi.size(); ++a) machine_of[res_to_vi[a]] = (*sub)[a];
    consider(to_original(inst, vi, machine_of));
  };

  // Pairs are chosen in increasing job order so each set is visited once.
  auto rec = [&](auto&& self, int from) -> void {
    evaluate();
    if (static_cast<int>(guess.size()) == g) return;
    for (int j = from; j < n; ++j) {
      for (int i = 0; i < m; ++i) {
        if (load[i] + vi.proc[i][j] > T) continue;
        guess.push_back({j, i});
        load[i] += vi.proc[i][j];
        self(self, j + 1);
        load[i] -= vi.proc[i][j];
        guess.pop_back();
      }
    }
  };
  rec(rec, 0);
  if (best) best->guesses_tried = tried;
  return best;
}

}  // namespace sched::gap
