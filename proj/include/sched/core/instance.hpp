#pragma once

#include <cstdint>
#include <variant>
#include <vector>

namespace sched {

struct GapJob {
  std::vector<std::int64_t> proc;  // one entry per machine
  std::vector<std::int64_t> cost;
  std::int64_t profit = 0;
};

struct GapInstance {
  int machines = 1;
  std::vector<GapJob> jobs;
  std::int64_t profit_target = 0;
  std::int64_t cost_bound = 0;
  std::int64_t makespan_bound = 0;

  std::int64_t total_profit() const;
};

struct WctJob {
  std::vector<std::int64_t> proc;
  std::int64_t weight = 1;
  std::int64_t profit = 0;
  std::int64_t release = 0;
};

struct ProfitTarget {
  std::vector<std::int64_t> profits;  // one entry per job
  std::int64_t target = 0;
};

struct WctInstance {
  int machines = 1;
  std::vector<WctJob> jobs;
  // Always at least one entry. The single-target case mirrors the job profits.
  std::vector<ProfitTarget> profit_targets;

  std::int64_t min_proc(int job) const;
};

struct FlowJob {
  std::int64_t proc = 1;
  std::int64_t release = 0;
};

struct FlowInstance {
  std::vector<FlowJob> jobs;
  std::int64_t profit_target = 0;  // number of jobs that must be scheduled
};

using Instance = std::variant<GapInstance, WctInstance, FlowInstance>;

// Single profit target built from the job profits.
ProfitTarget single_target(const std::vector<WctJob>& jobs, std::int64_t target);

// Class index k with p in (2^(k-1), 2^k]; p = 1 is class 0.
int flow_class(std::int64_t p);
std::int64_t rounded_size(std::int64_t p);

// Throw StructuralError when a type invariant fails.
void check_invariants(const GapInstance& inst);
void check_invariants(const WctInstance& inst);
void check_invariants(const FlowInstance& inst);
void check_invariants(const Instance& inst);

// Number of machines a schedule for this instance may use.
int machine_count(const Instance& inst);
int job_count(const Instance& inst);

}  // namespace sched
