#pragma once

#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace sched::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kTolerance = 1e-7;

enum class Relation { LessEq, Equal, GreaterEq };

struct Term {
  int var;
  double coeff;
};

struct Constraint {
  std::vector<Term> terms;  // sparse row; absent variables have coefficient 0
  Relation rel = Relation::LessEq;
  double rhs = 0.0;
  std::string name;
};

struct Variable {
  double lo = 0.0;
  double hi = kInf;  // kInf marks an absent upper bound; lo may be -kInf
  double cost = 0.0;
  std::string name;
};

// Minimization LP.
class LpModel {
 public:
  int add_variable(double lo, double hi, double cost, std::string name = {});
  int add_constraint(std::vector<Term> terms, Relation rel, double rhs, std::string name = {});
  int add_constraint(Constraint c);

  int num_vars() const { return static_cast<int>(vars_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  const Variable& var(int j) const { return vars_[j]; }
  const Constraint& row(int i) const { return rows_[i]; }
  const std::vector<Variable>& vars() const { return vars_; }
  const std::vector<Constraint>& rows() const { return rows_; }
  void set_cost(int j, double c) { vars_[j].cost = c; }
  void set_rhs(int i, double rhs) { rows_[i].rhs = rhs; }

  double objective(std::span<const double> x) const;
  // Largest violation over rows and bounds.
  double max_violation(std::span<const double> x) const;
  // Text listing of variables and rows, for failure triage only.
  void dump(std::ostream& os) const;

 private:
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
};

}  // namespace sched::lp
