#pragma once

#include <cstdint>
#include <vector>

#include "sched/core/instance.hpp"
#include "sched/core/schedule.hpp"
#include "sched/core/ticks.hpp"

namespace sched::oracle {

inline constexpr std::int64_t kDefaultCap = 1'000'000;

struct OracleResult {
  bool feasible = false;
  Dyadic objective;           // meaningful when feasible
  SegmentSchedule witness;    // validates to objective
  std::int64_t explored = 0;  // candidates examined
};

// Preemptive shortest-remaining-processing-time schedule of the given jobs.
// Ties go to the smaller remaining time, then the smaller id.
OracleResult srpt(const FlowInstance& inst, const std::vector<int>& jobs);

// Best SRPT value over all subsets of exactly profit_target jobs.
OracleResult brute_flow(const FlowInstance& inst, std::int64_t cap = kDefaultCap);

// Exact minimum of sum w_j C_j over job subsets meeting every profit target,
// machine assignments, and non-preemptive orders respecting releases.
// Per machine, a dynamic program over job subsets keeps the Pareto set of
// (makespan, cost) over all orders; assignments are then enumerated.
OracleResult brute_wct(const WctInstance& inst, std::int64_t cap = 10'000'000);

struct GapOracleResult {
  bool feasible = false;          // some assignment meets profit, cost and makespan bounds
  std::vector<int> machine_of;    // best assignment, -1 for outliers
  std::int64_t cost = 0;
  std::int64_t makespan = 0;
  std::int64_t profit = 0;
  SegmentSchedule witness;
  std::int64_t explored = 0;
};

// Minimum makespan (ties: minimum cost) over assignments that meet the
// profit target within the cost bound. Feasible when that makespan is at most
// the makespan bound.
GapOracleResult brute_gap(const GapInstance& inst, std::int64_t cap = kDefaultCap);

struct GapParetoPoint {
  std::int64_t cost;
  std::int64_t makespan;
};

// Non-dominated (cost, makespan) pairs over assignments meeting the profit
// target, ignoring the instance's cost and makespan bounds. Sorted by cost.
std::vector<GapParetoPoint> gap_pareto(const GapInstance& inst, std::int64_t cap = kDefaultCap);

// Lay out a machine assignment back to back from time 0 in job id order.
SegmentSchedule gap_schedule(const GapInstance& inst, const std::vector<int>& machine_of);

}  // namespace sched::oracle
