#include <algorithm>
#include <cmath>
#include <string>

#include "sched/core/errors.hpp"
#include "sched/flow/flow.hpp"

namespace sched::flow {

using lp::Relation;
using lp::Term;

int flow_horizon(const FlowInstance& inst, int kstar) {
  std::int64_t rmax = 0, sum = 0;
  for (const auto& job : inst.jobs) {
    if (flow_class(job.proc) > kstar) continue;
    rmax = std::max(rmax, job.release);
    sum += job.proc;
  }
  return static_cast<int>(rmax + sum);
}

FlowLp build_flow_lp(const FlowInstance& inst, int kstar, int horizon, std::int64_t max_vars) {
  if (kstar > kMaxClass) throw SizeError("class index above 24");
  const int n = static_cast<int>(inst.jobs.size());
  const int T = horizon >= 0 ? horizon : flow_horizon(inst, kstar);
  std::int64_t count = 0;
  for (const auto& job : inst.jobs) {
    if (flow_class(job.proc) <= kstar) count += std::max<std::int64_t>(0, T - job.release);
  }
  if (count > max_vars) {
    throw SizeError("flow LP needs " + std::to_string(count) + " variables, cap is " + std::to_string(max_vars));
  }
  FlowLp out;
  FlowLpLayout& L = out.layout;
  L.jobs = n;
  L.horizon = T;
  L.kstar = kstar;
  L.x_index.assign(static_cast<std::size_t>(n) * T, -1);
  L.y_index.assign(n, -1);
  lp::LpModel& model = out.model;

  for (int j = 0; j < n; ++j) {
    const auto& job = inst.jobs[j];
    const int k = flow_class(job.proc);
    if (k > kstar) continue;
    const double size = std::ldexp(1.0, k);
    for (int t = static_cast<int>(job.release); t < T; ++t) {
      const double cost = (t + 0.5 - static_cast<double>(job.release)) / size + 0.5;
      L.x_index[static_cast<std::size_t>(j) * T + t] = model.add_variable(0, lp::kInf, cost);
    }
    L.y_index[j] = model.add_variable(0, 1, 0, "y" + std::to_string(j));
  }
  std::vector<Term> count_row;
  for (int j = 0; j < n; ++j) {
    if (L.y_index[j] < 0) continue;
    std::vector<Term> extent{{L.y_index[j], static_cast<double>(inst.jobs[j].proc)}};
    for (int t = 0; t < T; ++t) {
      if (int v = L.x(j, t); v >= 0) extent.push_back({v, -1.0});
    }
    model.add_constraint(std::move(extent), Relation::Equal, 0, "extent" + std::to_string(j));
    count_row.push_back({L.y_index[j], 1.0});
  }
  for (int t = 0; t < T; ++t) {
    std::vector<Term> row;
    for (int j = 0; j < n; ++j) {
      if (int v = L.x(j, t); v >= 0) row.push_back({v, 1.0});
    }
    if (!row.empty()) model.add_constraint(std::move(row), Relation::LessEq, 1.0, "slot" + std::to_string(t));
  }
  if (inst.profit_target > 0) {
    model.add_constraint(std::move(count_row), Relation::GreaterEq, static_cast<double>(inst.profit_target), "count");
  }
  return out;
}

FlowLpSolution snap_flow_solution(const FlowInstance& inst, const FlowLpLayout& layout,
                                  const std::vector<double>& values, double lp_value) {
  const int n = layout.jobs;
  const int T = layout.horizon;
  FlowLpSolution out;
  out.kstar = layout.kstar;
  out.horizon = T;
  out.lp_value = lp_value;
  out.y.assign(n, 0);

  std::vector<long double> mass(n, 0), exact(n, 0);
  for (int j = 0; j < n; ++j) {
    if (layout.y_index[j] < 0) continue;
    for (int t = 0; t < T; ++t) {
      if (int v = layout.x(j, t); v >= 0) mass[j] += std::max(0.0, values[v]);
    }
    exact[j] = mass[j] / static_cast<long double>(inst.jobs[j].proc) * kFull;
    out.y[j] = std::clamp<std::int64_t>(std::llround(static_cast<double>(exact[j])), 0, kFull);
  }
  // Tolerance can leave sum y a hair under the target; top up the jobs
  // rounded down the most.
  std::int64_t total = 0;
  for (auto y : out.y) total += y;
  std::int64_t need = inst.profit_target * kFull - total;
  while (need > 0) {
    int best = -1;
    for (int j = 0; j < n; ++j) {
      if (layout.y_index[j] < 0 || out.y[j] >= kFull) continue;
      if (best < 0 || exact[j] - out.y[j] > exact[best] - out.y[best]) best = j;
    }
    if (best < 0) throw InternalError("too few jobs to meet the target after rounding");
    const std::int64_t add = std::min(need, kFull - out.y[best]);
    out.y[best] += add;
    need -= add;
  }

  // Slot amounts per job by largest remainder.
  std::vector<std::vector<Ticks>> slot(n);
  for (int j = 0; j < n; ++j) {
    if (out.y[j] == 0) continue;
    const Ticks amount = out.y[j] * inst.jobs[j].proc;
    auto& a = slot[j];
    a.assign(T, 0);
    if (mass[j] <= 0) {
      a[inst.jobs[j].release] = amount;  // only reachable through the top-up
      continue;
    }
    std::vector<std::pair<long double, int>> rem;
    Ticks used = 0;
    for (int t = 0; t < T; ++t) {
      int v = layout.x(j, t);
      if (v < 0 || values[v] <= 0) continue;
      long double share = static_cast<long double>(amount) * values[v] / mass[j];
      Ticks whole = static_cast<Ticks>(std::floor(share));
      a[t] = whole;
      used += whole;
      rem.emplace_back(share - whole, t);
    }
    std::sort(rem.begin(), rem.end(), [](auto& x, auto& y) { return x.first != y.first ? x.first > y.first : x.second < y.second; });
    for (std::size_t i = 0; used < amount; i = (i + 1) % rem.size()) {
      ++a[rem[i].second];
      ++used;
    }
    for (std::size_t i = 0; used > amount; i = (i + 1) % rem.size()) {
      if (a[rem[rem.size() - 1 - i].second] > 0) {
        --a[rem[rem.size() - 1 - i].second];
        --used;
      }
    }
  }

  Ticks cursor = 0;
  for (int t = 0; t < T; ++t) {
    cursor = std::max(cursor, units_to_ticks(t));
    for (int j = 0; j < n; ++j) {
      if (slot[j].empty() || slot[j][t] == 0) continue;
      out.timeline.pieces.push_back({j, cursor, cursor + slot[j][t]});
      cursor += slot[j][t];
    }
  }
  normalize_pieces(out.timeline);
  return out;
}

}  // namespace sched::flow
