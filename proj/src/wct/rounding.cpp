#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sched/core/errors.hpp"
#include "sched/wct/wct.hpp"

namespace sched::wct {

std::mt19937_64 trial_stream(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

namespace {

// Uniform in [0, 1) from the top 53 bits; identical on every platform.
double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

RoundingOutcome randomized_round(const WctInstance& inst, const TimeIndexedSolution& sol, std::uint64_t seed,
                                 std::uint64_t trial) {
  const int n = sol.jobs;
  const int m = sol.machines;
  RoundingOutcome out;
  MarkVector& mv = out.marks;
  mv.mark.assign(n, std::nullopt);
  mv.draw.assign(n, 0.0);
  mv.a_star = sol.a_star;
  mv.seed = seed;
  mv.trial = trial;
  std::vector<char> in_a(n, 0);
  for (int j : sol.a_star) in_a[j] = 1;

  std::mt19937_64 rng = trial_stream(seed, trial);
  const double unit = static_cast<double>(kTicksPerUnit);
  for (int j = 0; j < n; ++j) {
    const double r = uniform(rng);
    mv.draw[j] = r;
    if (!in_a[j] && sol.y[j] / sol.threshold > 1.0 + 1e-12) {
      throw InternalError("job outside A* would be marked with probability above 1");
    }
    double cum = 0;
    std::optional<Mark> last_positive;
    // Sub-intervals of [0, 1] in lexicographic (machine, slot) order.
    for (int i = 0; i < m && !mv.mark[j]; ++i) {
      const double p = static_cast<double>(inst.jobs[j].proc[i]);
      for (int t = 0; t < sol.horizon; ++t) {
        Ticks x = sol.at(i, j, t);
        if (x == 0) continue;
        double l = in_a[j] ? static_cast<double>(x) / unit / (p * sol.y[j])
                           : static_cast<double>(x) / unit / (p * sol.threshold);
        last_positive = Mark{i, t};
        cum += l;
        if (r < cum) {
          mv.mark[j] = Mark{i, t};
          break;
        }
      }
    }
    // Lengths of an A* job sum to one; guard the last ulp.
    if (in_a[j] && !mv.mark[j] && last_positive) mv.mark[j] = last_positive;
  }

  out.completion.assign(n, 0);
  for (int i = 0; i < m; ++i) {
    std::vector<int> on;
    for (int j = 0; j < n; ++j) {
      if (mv.mark[j] && mv.mark[j]->machine == i) on.push_back(j);
    }
    std::sort(on.begin(), on.end(), [&](int a, int b) {
      return std::pair(mv.mark[a]->slot, a) < std::pair(mv.mark[b]->slot, b);
    });
    Ticks cursor = 0;
    for (int j : on) {
      Ticks start = std::max(cursor, units_to_ticks(inst.jobs[j].release));
      Ticks end = start + units_to_ticks(inst.jobs[j].proc[i]);
      out.schedule.segments.push_back({j, i, start, end});
      out.schedule.selected.push_back(j);
      out.completion[j] = end;
      cursor = end;
    }
  }
  canonicalize(out.schedule);

  out.meets_targets = true;
  for (const auto& tg : inst.profit_targets) {
    std::int64_t p = 0;
    for (int j : out.schedule.selected) p += tg.profits[j];
    out.profit.push_back(p);
    if (p < tg.target) out.meets_targets = false;
  }
  for (int j = 0; j < n; ++j) {
    out.cost += static_cast<double>(inst.jobs[j].weight) * static_cast<double>(out.completion[j]) / unit;
  }
  return out;
}

TrialsReport round_until_feasible(const WctInstance& inst, const TimeIndexedSolution& sol, std::uint64_t seed,
                                  int max_trials) {
  if (max_trials < 1) throw std::invalid_argument("max_trials must be at least 1");
  TrialsReport rep;
  for (int trial = 0; trial < max_trials; ++trial) {
    RoundingOutcome o = randomized_round(inst, sol, seed, static_cast<std::uint64_t>(trial));
    rep.trials_used = trial + 1;
    rep.stats.push_back({o.profit, o.cost, o.meets_targets});
    if (o.meets_targets) {
      rep.success = std::move(o);
      break;
    }
  }
  return rep;
}

double beta_for_targets(int targets) {
  if (targets < 1) throw std::invalid_argument("need at least one target");
  // (b - 1)^2 / (2 b) is increasing for b > 1; find where it reaches ln(10 K).
  const double goal = std::log(10.0 * targets);
  auto f = [&](double b) { return (b - 1) * (b - 1) / (2 * b) - goal; };
  double lo = 1.0, hi = 2.0;
  while (f(hi) < 0) hi *= 2;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (f(mid) < 0 ? lo : hi) = mid;
  }
  // Step past rounding in exp so the tail bound holds as evaluated.
  const double bound = 1.0 / (10.0 * targets);
  while (std::exp(-(hi - 1) * (hi - 1) / (2 * hi)) > bound) hi = std::nextafter(hi, 2 * hi);
  return hi;
}

TrialsReport multi_profit_round(const WctInstance& inst, const TimeIndexedSolution& sol, std::uint64_t seed,
                                int max_trials) {
  const double beta = beta_for_targets(static_cast<int>(inst.profit_targets.size()));
  if (std::abs(sol.threshold - 1.0 / beta) > 1e-12) {
    throw std::invalid_argument("solution was not built with threshold 1/beta_K");
  }
  return round_until_feasible(inst, sol, seed, max_trials);
}

}  // namespace sched::wct
