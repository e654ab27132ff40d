#include "sched/core/instance.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "sched/core/errors.hpp"

namespace sched {

std::int64_t GapInstance::total_profit() const {
  std::int64_t s = 0;
  for (const auto& j : jobs) s += j.profit;
  return s;
}

std::int64_t WctInstance::min_proc(int job) const {
  const auto& p = jobs.at(job).proc;
  return *std::min_element(p.begin(), p.end());
}

ProfitTarget single_target(const std::vector<WctJob>& jobs, std::int64_t target) {
  ProfitTarget t;
  t.target = target;
  for (const auto& j : jobs) t.profits.push_back(j.profit);
  return t;
}

int flow_class(std::int64_t p) {
  if (p < 1) throw StructuralError("processing time must be positive");
  int k = 0;
  while ((std::int64_t{1} << k) < p) ++k;
  return k;
}

std::int64_t rounded_size(std::int64_t p) { return std::int64_t{1} << flow_class(p); }

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw StructuralError(msg);
}

}  // namespace

void check_invariants(const GapInstance& inst) {
  require(inst.machines >= 1, "machines must be >= 1");
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    const auto& job = inst.jobs[j];
    std::string where = "jobs[" + std::to_string(j) + "]";
    require(job.proc.size() == static_cast<std::size_t>(inst.machines), where + ".proc has wrong length");
    require(job.cost.size() == static_cast<std::size_t>(inst.machines), where + ".cost has wrong length");
    for (auto p : job.proc) require(p > 0, where + ".proc must be positive");
    for (auto c : job.cost) require(c >= 0, where + ".cost must be non-negative");
    require(job.profit >= 0, where + ".profit must be non-negative");
  }
  require(inst.profit_target >= 0, "profit_target must be non-negative");
  require(inst.profit_target <= inst.total_profit(), "profit_target exceeds total profit");
  require(inst.cost_bound >= 0, "cost_bound must be non-negative");
  require(inst.makespan_bound >= 0, "makespan_bound must be non-negative");
}

void check_invariants(const WctInstance& inst) {
  require(inst.machines >= 1, "machines must be >= 1");
  require(!inst.profit_targets.empty(), "at least one profit target is required");
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    const auto& job = inst.jobs[j];
    std::string where = "jobs[" + std::to_string(j) + "]";
    require(job.proc.size() == static_cast<std::size_t>(inst.machines), where + ".proc has wrong length");
    for (auto p : job.proc) require(p > 0, where + ".proc must be positive");
    require(job.weight >= 0, where + ".weight must be non-negative");
    require(job.profit >= 0, where + ".profit must be non-negative");
    require(job.release >= 0, where + ".release must be non-negative");
  }
  for (std::size_t k = 0; k < inst.profit_targets.size(); ++k) {
    const auto& t = inst.profit_targets[k];
    std::string where = "profit_targets[" + std::to_string(k) + "]";
    require(t.profits.size() == inst.jobs.size(), where + ".profits has wrong length");
    std::int64_t sum = 0;
    for (auto p : t.profits) {
      require(p >= 0, where + ".profits must be non-negative");
      sum += p;
    }
    require(t.target >= 0, where + ".target must be non-negative");
    require(t.target <= sum, where + ".target exceeds total profit");
  }
}

void check_invariants(const FlowInstance& inst) {
  for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
    std::string where = "jobs[" + std::to_string(j) + "]";
    require(inst.jobs[j].proc >= 1, where + ".proc must be >= 1");
    require(inst.jobs[j].release >= 0, where + ".release must be non-negative");
  }
  require(inst.profit_target >= 0, "profit_target must be non-negative");
  require(inst.profit_target <= static_cast<std::int64_t>(inst.jobs.size()), "profit_target exceeds job count");
}

void check_invariants(const Instance& inst) {
  std::visit([](const auto& i) { check_invariants(i); }, inst);
}

int machine_count(const Instance& inst) {
  struct V {
    int operator()(const GapInstance& i) const { return i.machines; }
    int operator()(const WctInstance& i) const { return i.machines; }
    int operator()(const FlowInstance&) const { return 1; }
  };
  return std::visit(V{}, inst);
}

int job_count(const Instance& inst) {
  return std::visit([](const auto& i) { return static_cast<int>(i.jobs.size()); }, inst);
}

}  // namespace sched
