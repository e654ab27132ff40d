#include "sched/lp/simplex.hpp"

namespace sched::lp {

CutLoopResult cut_loop(LpModel model, const Separator& separator, int max_cuts, const SolverOptions& opts) {
  CutLoopResult res;
  while (true) {
    res.solution = solve(model, opts);
    ++res.solves;
    if (res.solution.status != Status::Optimal) break;
    auto cut = separator(res.solution);
    if (!cut) break;
    if (res.cuts >= max_cuts) {
      res.solution.status = Status::CutLimit;
      break;
    }
    model.add_constraint(std::move(*cut));
    ++res.cuts;
  }
  res.model = std::move(model);
  return res;
}

}  // namespace sched::lp
