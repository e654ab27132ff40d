#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sched/core/instance.hpp"
#include "sched/core/schedule.hpp"

namespace sched::gap {

// The instance with one extra "virtual profit" machine at index m. Sending
// job j there costs nothing and takes pi_j time; its capacity is the profit
// that may be given up. Jobs that fit on no real machine are dropped.
struct VirtualInstance {
  int real_machines = 0;
  std::vector<int> job_ids;  // original id of each retained job
  // [machine][job], machine in 0..m; row m holds the profits.
  std::vector<std::vector<std::int64_t>> proc;
  std::vector<std::vector<std::int64_t>> cost;
  std::vector<std::int64_t> profit;
  std::vector<std::int64_t> capacity;  // makespan bound per machine, virtual last
  std::vector<std::vector<char>> allowed;  // pair may be used at all
  std::int64_t cost_bound = 0;
  std::int64_t profit_target = 0;

  int machines() const { return real_machines + 1; }
  int virtual_machine() const { return real_machines; }
  int jobs() const { return static_cast<int>(job_ids.size()); }
  std::int64_t virtual_capacity() const { return capacity[real_machines]; }
};

// Throws InfeasibleError when the profit target exceeds the profit of the
// jobs that fit somewhere.
VirtualInstance build_virtual_instance(const GapInstance& inst);

struct FractionalAssignment {
  std::vector<std::vector<double>> x;  // [machine][job]
  double cost = 0;
};

// Assignment relaxation: every job fully assigned, loads within capacity,
// total cost within the bound, only allowed pairs that fit. Minimizes cost.
std::optional<FractionalAssignment> solve_assignment_lp(const VirtualInstance& vi);

struct Assignment {
  std::vector<int> machine_of;  // per retained job; virtual_machine() for outliers
  std::vector<std::int64_t> load;  // per machine including the virtual one
  std::int64_t cost = 0;
  std::int64_t profit = 0;  // profit of jobs on real machines
};

Assignment make_assignment(const VirtualInstance& vi, std::vector<int> machine_of);

// Slot construction plus a minimum-cost job-to-slot matching.
Assignment shmoys_tardos_round(const VirtualInstance& vi, const FractionalAssignment& x);

// Moves the most profitable virtual job that has an allowed real machine to
// its fastest such machine when the profit target is missed. Throws
// InternalError when the target is still missed afterwards.
Assignment repair_profit(const VirtualInstance& vi, Assignment a);

struct GapResult {
  SegmentSchedule schedule;
  std::vector<int> machine_of;  // per original job, -1 for outliers
  std::int64_t cost = 0;
  std::int64_t makespan = 0;
  std::int64_t profit = 0;
  std::vector<std::int64_t> load;  // per real machine
  // Per real machine T + 2 min(max_j p_ij, T) over jobs that fit.
  std::vector<std::int64_t> proof_bound;
  int guessed_pairs = 0;
  std::int64_t guesses_tried = 0;
};

// Cost at most (1 + eps) C, makespan at most 3T, profit at least the target.
// nullopt means no schedule meets (C, T, target).
std::optional<GapResult> solve_gap_outliers(const GapInstance& inst, double eps);

// Without the expensive-assignment guessing: one LP, rounding, repair.
std::optional<GapResult> solve_gap_basic(const GapInstance& inst);

}  // namespace sched::gap
