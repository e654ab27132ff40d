#include <algorithm>
#include <cmath>
#include <string>

#include "sched/core/errors.hpp"
#include "sched/wct/wct.hpp"

namespace sched::wct {

using lp::Relation;
using lp::Term;

int horizon(const WctInstance& inst) {
  std::int64_t rmax = 0, sum = 0;
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    rmax = std::max(rmax, inst.jobs[j].release);
    sum += inst.min_proc(static_cast<int>(j));
  }
  return static_cast<int>(rmax + sum);
}

WctLp build_wct_lp(const WctInstance& inst, double opt_guess, const LpOptions& opts) {
  const int m = inst.machines;
  const int n = static_cast<int>(inst.jobs.size());
  const int T = horizon(inst);
  std::int64_t count = 0;
  for (const auto& job : inst.jobs) count += static_cast<std::int64_t>(m) * std::max<std::int64_t>(0, T - job.release);
  if (count > opts.max_vars) {
    throw SizeError("time-indexed LP needs " + std::to_string(count) + " variables, cap is " +
                    std::to_string(opts.max_vars));
  }
  WctLp out;
  LpLayout& L = out.layout;
  L.machines = m;
  L.jobs = n;
  L.horizon = T;
  L.x_index.assign(static_cast<std::size_t>(m) * n * T, -1);
  lp::LpModel& model = out.model;

  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int t = static_cast<int>(inst.jobs[j].release); t < T; ++t) {
        L.x_index[(static_cast<std::size_t>(i) * n + j) * T + t] = model.add_variable(0, lp::kInf, 0);
      }
    }
  }
  for (int j = 0; j < n; ++j) L.y_index.push_back(model.add_variable(0, 1, 0, "y" + std::to_string(j)));
  for (int j = 0; j < n; ++j) {
    L.c_index.push_back(model.add_variable(0, lp::kInf, static_cast<double>(inst.jobs[j].weight),
                                           "C" + std::to_string(j)));
  }

  for (int j = 0; j < n; ++j) {
    std::vector<Term> extent{{L.y_index[j], -1.0}};
    std::vector<Term> completion{{L.c_index[j], 1.0}};
    for (int i = 0; i < m; ++i) {
      double p = static_cast<double>(inst.jobs[j].proc[i]);
      for (int t = 0; t < T; ++t) {
        int v = L.x(i, j, t);
        if (v < 0) continue;
        extent.push_back({v, 1.0 / p});
        completion.push_back({v, -((t + 0.5) / p + 0.5)});
      }
    }
    model.add_constraint(std::move(extent), Relation::Equal, 0, "extent" + std::to_string(j));
    model.add_constraint(std::move(completion), Relation::Equal, 0, "completion" + std::to_string(j));
  }
  for (int i = 0; i < m; ++i) {
    for (int t = 0; t < T; ++t) {
      std::vector<Term> row;
      for (int j = 0; j < n; ++j) {
        if (int v = L.x(i, j, t); v >= 0) row.push_back({v, 1.0});
      }
      if (!row.empty()) model.add_constraint(std::move(row), Relation::LessEq, 1.0, "slot");
    }
  }
  for (std::size_t k = 0; k < inst.profit_targets.size(); ++k) {
    const ProfitTarget& tg = inst.profit_targets[k];
    if (tg.target <= 0) continue;
    std::vector<Term> row;
    for (int j = 0; j < n; ++j) {
      std::int64_t c = opts.profit_rows == ProfitRows::KnapsackCover ? std::min(tg.profits[j], tg.target)
                                                                     : tg.profits[j];
      if (c > 0) row.push_back({L.y_index[j], static_cast<double>(c)});
    }
    model.add_constraint(std::move(row), Relation::GreaterEq, static_cast<double>(tg.target),
                         "profit" + std::to_string(k));
  }
  if (opts.budget_row) {
    std::vector<Term> row;
    for (int j = 0; j < n; ++j) {
      if (inst.jobs[j].weight != 0) row.push_back({L.c_index[j], static_cast<double>(inst.jobs[j].weight)});
    }
    model.add_constraint(std::move(row), Relation::LessEq, opt_guess, "budget");
  }
  return out;
}

std::optional<KcViolation> kc_separate(std::span<const double> y, const std::vector<ProfitTarget>& targets,
                                       double threshold) {
  constexpr double kTol = 1e-7;
  const int n = static_cast<int>(y.size());
  std::vector<int> a_star;
  for (int j = 0; j < n; ++j) {
    if (y[j] >= threshold - 1e-9) a_star.push_back(j);
  }
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const ProfitTarget& tg = targets[k];
    std::int64_t covered = 0;
    for (int j : a_star) covered += tg.profits[j];
    if (covered >= tg.target) continue;
    const std::int64_t residual = tg.target - covered;
    KcViolation v;
    v.target = static_cast<int>(k);
    v.a_star = a_star;
    v.coeff.assign(n, 0.0);
    v.rhs = static_cast<double>(residual);
    double lhs = 0;
    std::size_t a = 0;
    for (int j = 0; j < n; ++j) {
      if (a < a_star.size() && a_star[a] == j) {
        ++a;
        continue;
      }
      v.coeff[j] = static_cast<double>(std::min(tg.profits[j], residual));
      lhs += v.coeff[j] * y[j];
    }
    if (lhs < v.rhs - kTol * std::max(1.0, v.rhs)) return v;
  }
  return std::nullopt;
}

lp::Constraint kc_row(const KcViolation& v, const LpLayout& layout) {
  lp::Constraint c;
  for (std::size_t j = 0; j < v.coeff.size(); ++j) {
    if (v.coeff[j] != 0) c.terms.push_back({layout.y_index[j], v.coeff[j]});
  }
  c.rel = Relation::GreaterEq;
  c.rhs = v.rhs;
  c.name = "kc" + std::to_string(v.target);
  return c;
}

double TimeIndexedSolution::weighted_completion(const WctInstance& inst) const {
  double s = 0;
  for (int j = 0; j < jobs; ++j) s += static_cast<double>(inst.jobs[j].weight) * completion[j];
  return s;
}

namespace {

// y_j * 2^20 as a double; exact enough to steer trimming.
double y_ticks(const WctInstance& inst, const TimeIndexedSolution& s, int j) {
  double y = 0;
  for (int i = 0; i < s.machines; ++i) {
    Ticks tot = 0;
    for (int t = 0; t < s.horizon; ++t) tot += s.at(i, j, t);
    y += static_cast<double>(tot) / static_cast<double>(inst.jobs[j].proc[i]);
  }
  return y;
}

// Exact test of y_j <= 1: sum_i X_ij / p_ij <= 2^20 over a common denominator.
bool y_within_one(const WctInstance& inst, const TimeIndexedSolution& s, int j) {
  __int128 den = 1;
  for (int i = 0; i < s.machines; ++i) den *= inst.jobs[j].proc[i];
  __int128 lhs = 0;
  for (int i = 0; i < s.machines; ++i) {
    Ticks tot = 0;
    for (int t = 0; t < s.horizon; ++t) tot += s.at(i, j, t);
    lhs += static_cast<__int128>(tot) * (den / inst.jobs[j].proc[i]);
  }
  return lhs <= den * kTicksPerUnit;
}

}  // namespace

TimeIndexedSolution snap_solution(const WctInstance& inst, const LpLayout& layout, std::span<const double> values,
                                  std::vector<int> a_star, double threshold) {
  TimeIndexedSolution s;
  s.machines = layout.machines;
  s.jobs = layout.jobs;
  s.horizon = layout.horizon;
  s.threshold = threshold;
  s.a_star = std::move(a_star);
  s.x.assign(layout.x_index.size(), 0);
  for (std::size_t k = 0; k < layout.x_index.size(); ++k) {
    if (layout.x_index[k] >= 0) s.x[k] = std::max<Ticks>(0, snap_to_ticks(values[layout.x_index[k]]));
  }
  auto cell = [&](int i, int j, int t) -> Ticks& { return s.x[(static_cast<std::size_t>(i) * s.jobs + j) * s.horizon + t]; };

  // Slot capacity: trim the largest entries, larger job id first on ties.
  for (int i = 0; i < s.machines; ++i) {
    for (int t = 0; t < s.horizon; ++t) {
      Ticks sum = 0;
      for (int j = 0; j < s.jobs; ++j) sum += cell(i, j, t);
      while (sum > kTicksPerUnit) {
        int big = 0;
        for (int j = 1; j < s.jobs; ++j) {
          if (cell(i, j, t) >= cell(i, big, t)) big = j;
        }
        Ticks cut = std::min(sum - kTicksPerUnit, cell(i, big, t));
        cell(i, big, t) -= cut;
        sum -= cut;
      }
    }
  }

  // Extent caps, trimming from the latest slots.
  std::vector<char> in_a(s.jobs, 0);
  for (int j : s.a_star) in_a[j] = 1;
  for (int j = 0; j < s.jobs; ++j) {
    const double cap = in_a[j] ? 1.0 : threshold;
    auto over = [&]() {
      if (cap == 1.0) return !y_within_one(inst, s, j);
      return y_ticks(inst, s, j) > cap * static_cast<double>(kTicksPerUnit);
    };
    for (int t = s.horizon - 1; t >= 0 && over(); --t) {
      for (int i = s.machines - 1; i >= 0 && over(); --i) {
        Ticks& c = cell(i, j, t);
        if (c == 0) continue;
        double excess = y_ticks(inst, s, j) - cap * static_cast<double>(kTicksPerUnit);
        Ticks cut = std::min<Ticks>(c, static_cast<Ticks>(std::ceil(excess * inst.jobs[j].proc[i])) + 1);
        c -= cut;
      }
    }
  }

  s.y.assign(s.jobs, 0.0);
  s.completion.assign(s.jobs, 0.0);
  for (int j = 0; j < s.jobs; ++j) {
    for (int i = 0; i < s.machines; ++i) {
      double p = static_cast<double>(inst.jobs[j].proc[i]);
      for (int t = 0; t < s.horizon; ++t) {
        double x = static_cast<double>(s.at(i, j, t)) / static_cast<double>(kTicksPerUnit);
        s.y[j] += x / p;
        s.completion[j] += x / p * (t + 0.5) + x / 2;
      }
    }
  }
  return s;
}

}  // namespace sched::wct
