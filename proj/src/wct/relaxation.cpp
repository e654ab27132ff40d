#include <algorithm>

#include "sched/core/errors.hpp"
#include "sched/lp/simplex.hpp"
#include "sched/wct/wct.hpp"

namespace sched::wct {

RelaxationResult solve_relaxation(const WctInstance& inst, const RelaxationOptions& opts) {
  const int n = static_cast<int>(inst.jobs.size());
  std::int64_t rmax = 0, sum_min = 0;
  double lower = 0;
  for (int j = 0; j < n; ++j) {
    const auto& job = inst.jobs[j];
    rmax = std::max(rmax, job.release);
    sum_min += inst.min_proc(j);
    lower = std::max(lower, static_cast<double>(job.weight) * static_cast<double>(job.release + inst.min_proc(j)));
  }
  double upper = 0;
  for (const auto& job : inst.jobs) upper += static_cast<double>(job.weight) * static_cast<double>(rmax + sum_min);
  lower = std::max(lower, 1.0);
  upper = std::max(upper, lower);
  const int max_cuts = opts.max_cuts >= 0 ? opts.max_cuts : 4 * n;

  RelaxationResult res;
  res.lower_bound = lower;
  // KC rows do not depend on the guess, so they carry over between guesses.
  std::vector<lp::Constraint> cuts;
  for (double guess = lower; guess <= 2 * upper; guess *= 2) {
    ++res.guesses;
    WctLp built = build_wct_lp(inst, guess, opts.lp);
    for (const auto& c : cuts) built.model.add_constraint(c);
    const LpLayout& layout = built.layout;
    lp::Separator sep = [&](const lp::LpSolution& sol) -> std::optional<lp::Constraint> {
      std::vector<double> y(n);
      for (int j = 0; j < n; ++j) y[j] = sol.values[layout.y_index[j]];
      auto v = kc_separate(y, inst.profit_targets, opts.threshold);
      if (!v) return std::nullopt;
      return kc_row(*v, layout);
    };
    const int before = built.model.num_rows();
    lp::CutLoopResult loop = lp::cut_loop(std::move(built.model), sep, max_cuts);
    for (int r = before; r < loop.model.num_rows(); ++r) cuts.push_back(loop.model.row(r));
    res.cuts += loop.cuts;
    if (loop.solution.status != lp::Status::Optimal) continue;

    std::vector<int> a_star;
    for (int j = 0; j < n; ++j) {
      if (loop.solution.values[layout.y_index[j]] >= opts.threshold - 1e-9) a_star.push_back(j);
    }
    res.solution = snap_solution(inst, layout, loop.solution.values, std::move(a_star), opts.threshold);
    res.lp_value = loop.solution.objective;
    res.opt_guess = guess;
    return res;
  }
  throw InfeasibleError("no Opt guess up to the trivial upper bound admits a KC-feasible LP solution");
}

}  // namespace sched::wct
