#include "sched/gap/gap.hpp"
#include "sched/lp/simplex.hpp"

namespace sched::gap {

namespace {

bool usable(const VirtualInstance& vi, int i, int j) {
  return vi.allowed[i][j] && vi.proc[i][j] <= vi.capacity[i];
}

}  // namespace

std::optional<FractionalAssignment> solve_assignment_lp(const VirtualInstance& vi) {
  using namespace sched::lp;
  const int m = vi.machines();
  const int n = vi.jobs();
  LpModel model;
  std::vector<std::vector<int>> var(m, std::vector<int>(n, -1));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      if (usable(vi, i, j)) var[i][j] = model.add_variable(0, kInf, static_cast<double>(vi.cost[i][j]));
    }
  }
  for (int j = 0; j < n; ++j) {
    std::vector<Term> row;
    for (int i = 0; i < m; ++i) {
      if (var[i][j] >= 0) row.push_back({var[i][j], 1.0});
    }
    if (row.empty()) return std::nullopt;
    model.add_constraint(std::move(row), Relation::Equal, 1.0, "assign");
  }
  for (int i = 0; i < m; ++i) {
    std::vector<Term> row;
    for (int j = 0; j < n; ++j) {
      if (var[i][j] >= 0) row.push_back({var[i][j], static_cast<double>(vi.proc[i][j])});
    }
    if (!row.empty()) model.add_constraint(std::move(row), Relation::LessEq, static_cast<double>(vi.capacity[i]), "load");
  }
  std::vector<Term> budget;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      if (var[i][j] >= 0 && vi.cost[i][j] != 0) budget.push_back({var[i][j], static_cast<double>(vi.cost[i][j])});
    }
  }
  model.add_constraint(std::move(budget), Relation::LessEq, static_cast<double>(vi.cost_bound), "cost");

  LpSolution sol = solve(model);
  if (sol.status != Status::Optimal) return std::nullopt;
  FractionalAssignment fa;
  fa.x.assign(m, std::vector<double>(n, 0.0));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      if (var[i][j] >= 0) fa.x[i][j] = std::max(0.0, sol.values[var[i][j]]);
    }
  }
  fa.cost = sol.objective;
  return fa;
}

}  // namespace sched::gap
