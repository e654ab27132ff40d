#include "sched/lp/model.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace sched::lp {

int LpModel::add_variable(double lo, double hi, double cost, std::string name) {
  if (std::isnan(lo) || std::isnan(hi) || lo > hi || lo == kInf || hi == -kInf) {
    throw std::invalid_argument("bad bounds for variable " + name);
  }
  vars_.push_back({lo, hi, cost, std::move(name)});
  return num_vars() - 1;
}

int LpModel::add_constraint(std::vector<Term> terms, Relation rel, double rhs, std::string name) {
  return add_constraint(Constraint{std::move(terms), rel, rhs, std::move(name)});
}

int LpModel::add_constraint(Constraint c) {
  for (const auto& t : c.terms) {
    if (t.var < 0 || t.var >= num_vars()) throw std::out_of_range("constraint references unknown variable");
  }
  if (!std::isfinite(c.rhs)) throw std::invalid_argument("constraint rhs must be finite");
  rows_.push_back(std::move(c));
  return num_rows() - 1;
}

double LpModel::objective(std::span<const double> x) const {
  double s = 0;
  for (int j = 0; j < num_vars(); ++j) s += vars_[j].cost * x[j];
  return s;
}

double LpModel::max_violation(std::span<const double> x) const {
  double worst = 0;
  for (int j = 0; j < num_vars(); ++j) {
    worst = std::max(worst, vars_[j].lo - x[j]);
    worst = std::max(worst, x[j] - vars_[j].hi);
  }
  for (const auto& r : rows_) {
    double lhs = 0;
    for (const auto& t : r.terms) lhs += t.coeff * x[t.var];
    switch (r.rel) {
      case Relation::LessEq: worst = std::max(worst, lhs - r.rhs); break;
      case Relation::GreaterEq: worst = std::max(worst, r.rhs - lhs); break;
      case Relation::Equal: worst = std::max(worst, std::abs(lhs - r.rhs)); break;
    }
  }
  return worst;
}

void LpModel::dump(std::ostream& os) const {
  os << "vars " << num_vars() << " rows " << num_rows() << "\n";
  for (int j = 0; j < num_vars(); ++j) {
    const auto& v = vars_[j];
    os << "v " << j << " " << (v.name.empty() ? "-" : v.name) << " lo " << v.lo << " hi " << v.hi << " c " << v.cost
       << "\n";
  }
  for (int i = 0; i < num_rows(); ++i) {
    const auto& r = rows_[i];
    os << "r " << i << " " << (r.name.empty() ? "-" : r.name) << " :";
    for (const auto& t : r.terms) os << " " << t.coeff << "*v" << t.var;
    os << (r.rel == Relation::LessEq ? " <= " : r.rel == Relation::Equal ? " = " : " >= ") << r.rhs << "\n";
  }
}

}  // namespace sched::lp
