#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "sched/core/instance.hpp"
#include "sched/core/schedule.hpp"
#include "sched/lp/model.hpp"

namespace sched::wct {

// ---------------------------------------------------------------------------
// Time-indexed relaxation

enum class ProfitRows {
  KnapsackCover,  // KC row for A = {} per target (the real model)
  Plain,          // sum pi_j y_j >= target per target, no KC strengthening
};

struct LpOptions {
  ProfitRows profit_rows = ProfitRows::KnapsackCover;
  bool budget_row = true;
  std::int64_t max_vars = 400'000;
};

// Variable index map of the LP. Slots are [t, t+1) for t in [0, horizon).
struct LpLayout {
  int machines = 0;
  int jobs = 0;
  int horizon = 0;
  std::vector<int> x_index;  // [(i * jobs + j) * horizon + t], -1 before the release date
  std::vector<int> y_index;
  std::vector<int> c_index;

  int x(int i, int j, int t) const { return x_index[(static_cast<std::size_t>(i) * jobs + j) * horizon + t]; }
};

struct WctLp {
  lp::LpModel model;
  LpLayout layout;
};

int horizon(const WctInstance& inst);

// Throws SizeError when the variable count exceeds opts.max_vars.
WctLp build_wct_lp(const WctInstance& inst, double opt_guess, const LpOptions& opts = {});

struct KcViolation {
  int target = 0;
  std::vector<int> a_star;    // jobs with y at or above the threshold
  std::vector<double> coeff;  // per job, min(pi_j, residual) outside A*, 0 inside
  double rhs = 0;             // residual target
};

// Checks the KC row of the single set A* = {j : y_j >= threshold} for each
// target in order; returns the first violated one.
std::optional<KcViolation> kc_separate(std::span<const double> y, const std::vector<ProfitTarget>& targets,
                                       double threshold = 0.5);
lp::Constraint kc_row(const KcViolation& v, const LpLayout& layout);

// LP solution snapped to the tick grid. y and C are derived from x.
struct TimeIndexedSolution {
  int machines = 0;
  int jobs = 0;
  int horizon = 0;
  std::vector<Ticks> x;  // same flattening as LpLayout::x_index
  std::vector<double> y;
  std::vector<double> completion;  // LP completion value C-hat per job
  std::vector<int> a_star;         // jobs rounded deterministically
  double threshold = 0.5;          // membership threshold of A*

  Ticks at(int i, int j, int t) const { return x[(static_cast<std::size_t>(i) * jobs + j) * horizon + t]; }
  double weighted_completion(const WctInstance& inst) const;
};

// Rounds LP values to ticks and trims so that every slot holds at most one
// time unit, y_j <= 1, and y_j <= threshold for jobs outside A*.
TimeIndexedSolution snap_solution(const WctInstance& inst, const LpLayout& layout, std::span<const double> values,
                                  std::vector<int> a_star, double threshold);

struct RelaxationOptions {
  double threshold = 0.5;  // 1/beta_K for the multi-target rounding
  int max_cuts = -1;       // -1 means 4n
  LpOptions lp;
};

struct RelaxationResult {
  TimeIndexedSolution solution;
  double lp_value = 0;   // LP objective at the accepted guess
  double opt_guess = 0;  // accepted guess
  double lower_bound = 0;
  int guesses = 0;
  int cuts = 0;
};

// Doubling search over the Opt guess from max_j w_j (r_j + min_i p_ij).
// Throws InfeasibleError when every guess up to the trivial upper bound fails.
RelaxationResult solve_relaxation(const WctInstance& inst, const RelaxationOptions& opts = {});

// ---------------------------------------------------------------------------
// Randomized rounding

struct Mark {
  int machine;
  int slot;
};

struct MarkVector {
  std::vector<std::optional<Mark>> mark;  // per job
  std::vector<double> draw;               // uniform draw per job
  std::vector<int> a_star;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
};

struct RoundingOutcome {
  MarkVector marks;
  SegmentSchedule schedule;
  std::vector<Ticks> completion;  // 0 for unscheduled jobs
  std::vector<std::int64_t> profit;  // per target
  bool meets_targets = false;
  double cost = 0;  // sum of w_j C_j in time units
};

// Independent stream for one trial of one seed.
std::mt19937_64 trial_stream(std::uint64_t seed, std::uint64_t trial);

// One pass of the marking rule: jobs in A* pick (i, t) with probability
// x/(p y); others with probability x/(p * threshold). Marked jobs are run in
// marked-slot order (ties by id), as early as possible, per machine.
RoundingOutcome randomized_round(const WctInstance& inst, const TimeIndexedSolution& sol, std::uint64_t seed,
                                 std::uint64_t trial = 0);

struct TrialStat {
  std::vector<std::int64_t> profit;
  double cost = 0;
  bool meets_targets = false;
};

struct TrialsReport {
  std::optional<RoundingOutcome> success;
  int trials_used = 0;
  std::vector<TrialStat> stats;
};

inline constexpr int kDefaultMaxTrials = 200;

// Repeats randomized_round with trials 0, 1, ... until every target is met.
TrialsReport round_until_feasible(const WctInstance& inst, const TimeIndexedSolution& sol, std::uint64_t seed,
                                  int max_trials = kDefaultMaxTrials);

// Root beta > 1 of exp(-(beta - 1)^2 / (2 beta)) = 1 / (10 K).
double beta_for_targets(int targets);

// Same loop for K targets on a solution built with threshold 1/beta_K.
TrialsReport multi_profit_round(const WctInstance& inst, const TimeIndexedSolution& sol, std::uint64_t seed,
                                int max_trials = kDefaultMaxTrials);

// ---------------------------------------------------------------------------
// Unit-weight, release-free dynamic programs

struct DpResult {
  std::int64_t value = 0;                // sum of completion times
  std::vector<int> selected;             // ascending ids
  std::vector<std::vector<int>> order;   // per machine, in run order
  SegmentSchedule schedule;
  std::int64_t cells = 0;                // table cells allocated
};

inline constexpr std::int64_t kDefaultDpCells = 100'000'000;

// Exact optimum on one machine. Requires unit weights, zero releases, one
// target. Throws SizeError when the table would exceed max_cells.
DpResult dp_exact(const WctInstance& inst, std::int64_t max_cells = kDefaultDpCells);

// Scaling constant 2 eps P_max / (n (n + 1)).
double fptas_scale(int n, double eps, std::int64_t p_max);

struct FptasResult {
  DpResult result;  // value is the true objective of the chosen set
  std::int64_t p_max = 0;
  double scale = 1;
};

FptasResult fptas(const WctInstance& inst, double eps, std::int64_t max_cells = kDefaultDpCells);

// Exact optimum on m identical machines (processing times from machine 0),
// m <= 3.
DpResult dp_multi_machine(const WctInstance& inst, int machines, std::int64_t max_cells = kDefaultDpCells);

}  // namespace sched::wct
