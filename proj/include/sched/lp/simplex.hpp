#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sched/lp/model.hpp"

namespace sched::lp {

enum class Status { Optimal, Infeasible, Unbounded, IterLimit, CutLimit };

const char* to_string(Status s);

struct LpSolution {
  Status status = Status::Infeasible;
  std::vector<double> values;  // one per model variable; meaningful when Optimal
  double objective = 0.0;
  long iterations = 0;
};

struct SolverOptions {
  double tolerance = kTolerance;
  // Pivot cap as a multiple of rows + columns of the standard form.
  long iter_factor = 50;
  int reinvert_every = 120;
  // Consecutive degenerate pivots before switching to the smallest-index rule.
  int degenerate_switch = 30;
};

LpSolution solve(const LpModel& model, const SolverOptions& opts = {});

// Returns the violated row to add, or nullopt when the solution is accepted.
using Separator = std::function<std::optional<Constraint>(const LpSolution&)>;

struct CutLoopResult {
  LpSolution solution;  // status CutLimit when the cap was reached
  LpModel model;        // model including every added cut
  int cuts = 0;
  int solves = 0;
};

CutLoopResult cut_loop(LpModel model, const Separator& separator, int max_cuts, const SolverOptions& opts = {});

}  // namespace sched::lp
