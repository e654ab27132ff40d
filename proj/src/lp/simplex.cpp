// Two-phase revised primal simplex. The basis inverse is kept explicitly as a
// dense matrix, updated by one elimination step per pivot and rebuilt from
// scratch every few hundred pivots. Pricing is largest-reduced-cost until a
// run of degenerate pivots, then smallest-index (Bland) until the objective
// moves again, which rules out cycling.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sched/lp/simplex.hpp"

namespace sched::lp {

const char* to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::IterLimit: return "iter_limit";
    case Status::CutLimit: return "cut_limit";
  }
  return "unknown";
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kPriceTol = 1e-9;

// How a model variable is expressed through standard-form columns:
// x = offset + sum(sign * column).
struct VarMap {
  double offset = 0;
  int col = -1;
  double sign = 1;
  int col2 = -1;  // negative part of a free variable
};

class Simplex {
 public:
  Simplex(const LpModel& model, const SolverOptions& opts) : model_(model), opts_(opts) { build(); }

  LpSolution run() {
    LpSolution sol;
    iter_limit_ = opts_.iter_factor * static_cast<long>(m_ + ncols_);
    init_basis();

    std::vector<double> phase1(ncols_, 0.0);
    bool any_art = false;
    for (int j = first_art_; j < ncols_; ++j) {
      phase1[j] = 1.0;
      any_art = true;
    }
    if (any_art) {
      Status st = iterate(phase1, /*allow_art=*/true);
      if (st == Status::IterLimit) return finish(sol, st);
      double infeas = 0;
      for (int i = 0; i < m_; ++i) {
        if (basis_[i] >= first_art_) infeas += xb_[i];
      }
      double scale = 1.0;
      for (double v : b_) scale = std::max(scale, std::abs(v));
      if (infeas > opts_.tolerance * scale) return finish(sol, Status::Infeasible);
      drive_out_artificials();
    }
    Status st = iterate(cost_, /*allow_art=*/false);
    return finish(sol, st);
  }

 private:
  void build() {
    const int nv = model_.num_vars();
    map_.resize(nv);
    std::vector<std::vector<std::pair<int, double>>> cols;
    std::vector<double> cost;
    std::vector<double> rhs;
    std::vector<Relation> rel;
    std::vector<std::vector<std::pair<int, double>>> extra_rows;  // upper bounds on shifted vars

    auto new_col = [&](double c) {
      cols.emplace_back();
      cost.push_back(c);
      return static_cast<int>(cols.size()) - 1;
    };

    obj_offset_ = 0;
    for (int j = 0; j < nv; ++j) {
      const Variable& v = model_.var(j);
      VarMap& vm = map_[j];
      if (std::isfinite(v.lo)) {
        vm.offset = v.lo;
        vm.sign = 1;
        vm.col = new_col(v.cost);
        if (std::isfinite(v.hi)) {
          bound_rows_.push_back({vm.col, v.hi - v.lo});
        }
      } else if (std::isfinite(v.hi)) {
        vm.offset = v.hi;
        vm.sign = -1;
        vm.col = new_col(-v.cost);
      } else {
        vm.col = new_col(v.cost);
        vm.col2 = new_col(-v.cost);
      }
      obj_offset_ += v.cost * vm.offset;
    }
    nstruct_ = static_cast<int>(cols.size());

    // Rows of the model followed by upper-bound rows.
    const int nr = model_.num_rows();
    m_ = nr + static_cast<int>(bound_rows_.size());
    b_.assign(m_, 0);
    std::vector<Relation> rels(m_);
    for (int i = 0; i < nr; ++i) {
      const Constraint& c = model_.row(i);
      double r = c.rhs;
      for (const auto& t : c.terms) {
        const VarMap& vm = map_[t.var];
        r -= t.coeff * vm.offset;
        cols[vm.col].push_back({i, t.coeff * vm.sign});
        if (vm.col2 >= 0) cols[vm.col2].push_back({i, -t.coeff});
      }
      b_[i] = r;
      rels[i] = c.rel;
    }
    for (std::size_t k = 0; k < bound_rows_.size(); ++k) {
      int i = nr + static_cast<int>(k);
      cols[bound_rows_[k].first].push_back({i, 1.0});
      b_[i] = bound_rows_[k].second;
      rels[i] = Relation::LessEq;
    }
    // Make every right-hand side non-negative.
    row_sign_.assign(m_, 1.0);
    for (int i = 0; i < m_; ++i) {
      if (b_[i] < 0) {
        row_sign_[i] = -1.0;
        b_[i] = -b_[i];
        if (rels[i] == Relation::LessEq) {
          rels[i] = Relation::GreaterEq;
        } else if (rels[i] == Relation::GreaterEq) {
          rels[i] = Relation::LessEq;
        }
      }
    }
    for (auto& col : cols) {
      for (auto& [r, v] : col) v *= row_sign_[r];
    }
    // Slack and surplus columns, then artificials.
    initial_basis_.assign(m_, -1);
    for (int i = 0; i < m_; ++i) {
      if (rels[i] == Relation::LessEq) {
        int c = new_col(0);
        cols[c].push_back({i, 1.0});
        initial_basis_[i] = c;
      } else if (rels[i] == Relation::GreaterEq) {
        int c = new_col(0);
        cols[c].push_back({i, -1.0});
      }
    }
    first_art_ = static_cast<int>(cols.size());
    for (int i = 0; i < m_; ++i) {
      if (initial_basis_[i] < 0) {
        int c = new_col(0);
        cols[c].push_back({i, 1.0});
        initial_basis_[i] = c;
      }
    }
    ncols_ = static_cast<int>(cols.size());
    cost_ = std::move(cost);
    col_start_.assign(ncols_ + 1, 0);
    for (int j = 0; j < ncols_; ++j) col_start_[j + 1] = col_start_[j] + static_cast<int>(cols[j].size());
    row_idx_.reserve(col_start_[ncols_]);
    val_.reserve(col_start_[ncols_]);
    for (const auto& col : cols) {
      for (const auto& [r, v] : col) {
        row_idx_.push_back(r);
        val_.push_back(v);
      }
    }
  }

  void init_basis() {
    basis_ = initial_basis_;
    in_basis_.assign(ncols_, -1);
    for (int i = 0; i < m_; ++i) in_basis_[basis_[i]] = i;
    binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) binv_[idx(i, i)] = 1.0;
    xb_ = b_;
    since_reinvert_ = 0;
  }

  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * m_ + j; }

  // Rebuild the inverse of the basis matrix by Gauss-Jordan elimination.
  void reinvert() {
    std::vector<double> bm(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      int c = basis_[i];
      for (int k = col_start_[c]; k < col_start_[c + 1]; ++k) bm[idx(row_idx_[k], i)] += val_[k];
    }
    std::vector<double> inv(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) inv[idx(i, i)] = 1.0;
    for (int col = 0; col < m_; ++col) {
      int piv = -1;
      double best = 0;
      for (int r = col; r < m_; ++r) {
        double a = std::abs(bm[idx(r, col)]);
        if (a > best) {
          best = a;
          piv = r;
        }
      }
      if (piv < 0 || best < 1e-12) throw std::runtime_error("simplex: singular basis during reinversion");
      if (piv != col) {
        for (int k = 0; k < m_; ++k) {
          std::swap(bm[idx(piv, k)], bm[idx(col, k)]);
          std::swap(inv[idx(piv, k)], inv[idx(col, k)]);
        }
      }
      double d = bm[idx(col, col)];
      for (int k = 0; k < m_; ++k) {
        bm[idx(col, k)] /= d;
        inv[idx(col, k)] /= d;
      }
      for (int r = 0; r < m_; ++r) {
        if (r == col) continue;
        double f = bm[idx(r, col)];
        if (f == 0) continue;
        for (int k = col; k < m_; ++k) bm[idx(r, k)] -= f * bm[idx(col, k)];
        for (int k = 0; k < m_; ++k) inv[idx(r, k)] -= f * inv[idx(col, k)];
      }
    }
    // Row i of the eliminated system corresponds to basis position i.
    binv_ = std::move(inv);
    for (int i = 0; i < m_; ++i) {
      double s = 0;
      for (int r = 0; r < m_; ++r) s += binv_[idx(i, r)] * b_[r];
      xb_[i] = std::max(0.0, s);
    }
    since_reinvert_ = 0;
  }

  void column(int q, std::vector<double>& alpha) const {
    std::fill(alpha.begin(), alpha.end(), 0.0);
    for (int k = col_start_[q]; k < col_start_[q + 1]; ++k) {
      int r = row_idx_[k];
      double v = val_[k];
      for (int i = 0; i < m_; ++i) alpha[i] += binv_[idx(i, r)] * v;
    }
  }

  void pivot(int r, int q, const std::vector<double>& alpha) {
    double ar = alpha[r];
    double theta = xb_[r] / ar;
    double* prow = &binv_[idx(r, 0)];
    for (int k = 0; k < m_; ++k) prow[k] /= ar;
    for (int i = 0; i < m_; ++i) {
      if (i == r || alpha[i] == 0) continue;
      double f = alpha[i];
      double* row = &binv_[idx(i, 0)];
      for (int k = 0; k < m_; ++k) row[k] -= f * prow[k];
      xb_[i] -= theta * f;
      if (xb_[i] < 0 && xb_[i] > -1e-9) xb_[i] = 0;
    }
    xb_[r] = theta;
    in_basis_[basis_[r]] = -1;
    basis_[r] = q;
    in_basis_[q] = r;
    ++iterations_;
    if (++since_reinvert_ >= std::max(opts_.reinvert_every, m_ / 2)) reinvert();
  }

  Status iterate(const std::vector<double>& cost, bool allow_art) {
    std::vector<double> y(m_), alpha(m_);
    int degenerate_run = 0;
    bool bland = false;
    while (true) {
      if (iterations_ >= iter_limit_) return Status::IterLimit;
      std::fill(y.begin(), y.end(), 0.0);
      for (int i = 0; i < m_; ++i) {
        double cb = cost[basis_[i]];
        if (cb == 0) continue;
        const double* row = &binv_[idx(i, 0)];
        for (int k = 0; k < m_; ++k) y[k] += cb * row[k];
      }
      int q = -1;
      double best = -kPriceTol;
      const int limit = allow_art ? ncols_ : first_art_;
      for (int j = 0; j < limit; ++j) {
        if (in_basis_[j] >= 0) continue;
        double d = cost[j];
        for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) d -= y[row_idx_[k]] * val_[k];
        if (d < best) {
          q = j;
          if (bland) break;
          best = d;
        }
      }
      if (q < 0) return Status::Optimal;
      column(q, alpha);
      int r = -1;
      double ratio = 0;
      for (int i = 0; i < m_; ++i) {
        if (alpha[i] <= kPivotTol) continue;
        double t = xb_[i] / alpha[i];
        if (r < 0 || t < ratio - 1e-12) {
          r = i;
          ratio = t;
        } else if (t <= ratio + 1e-12) {
          bool better = bland ? basis_[i] < basis_[r] : alpha[i] > alpha[r];
          if (better) {
            r = i;
            ratio = std::min(ratio, t);
          }
        }
      }
      if (r < 0) return Status::Unbounded;
      if (ratio <= 1e-12) {
        if (++degenerate_run >= opts_.degenerate_switch) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
      pivot(r, q, alpha);
    }
  }

  // Replace artificials that stayed basic at zero by real columns. Rows where
  // no real column has a nonzero entry are redundant; their artificial stays
  // and is never priced again.
  void drive_out_artificials() {
    std::vector<double> alpha(m_);
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < first_art_) continue;
      const double* row = &binv_[idx(r, 0)];
      for (int j = 0; j < first_art_; ++j) {
        if (in_basis_[j] >= 0) continue;
        double a = 0;
        for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) a += row[row_idx_[k]] * val_[k];
        if (std::abs(a) > 1e-7) {
          column(j, alpha);
          xb_[r] = 0;
          pivot_degenerate(r, j, alpha);
          break;
        }
      }
    }
  }

  void pivot_degenerate(int r, int q, const std::vector<double>& alpha) {
    double ar = alpha[r];
    double* prow = &binv_[idx(r, 0)];
    for (int k = 0; k < m_; ++k) prow[k] /= ar;
    for (int i = 0; i < m_; ++i) {
      if (i == r || alpha[i] == 0) continue;
      double f = alpha[i];
      double* row = &binv_[idx(i, 0)];
      for (int k = 0; k < m_; ++k) row[k] -= f * prow[k];
    }
    in_basis_[basis_[r]] = -1;
    basis_[r] = q;
    in_basis_[q] = r;
    ++iterations_;
  }

  LpSolution& finish(LpSolution& sol, Status st) {
    sol.status = st;
    sol.iterations = iterations_;
    if (st != Status::Optimal) return sol;
    reinvert();
    std::vector<double> xs(ncols_, 0.0);
    for (int i = 0; i < m_; ++i) xs[basis_[i]] = xb_[i];
    const int nv = model_.num_vars();
    sol.values.assign(nv, 0.0);
    for (int j = 0; j < nv; ++j) {
      const VarMap& vm = map_[j];
      double v = vm.offset + vm.sign * xs[vm.col];
      if (vm.col2 >= 0) v -= xs[vm.col2];
      sol.values[j] = v;
    }
    sol.objective = model_.objective(sol.values);
    return sol;
  }

  const LpModel& model_;
  SolverOptions opts_;
  std::vector<VarMap> map_;
  std::vector<std::pair<int, double>> bound_rows_;
  std::vector<double> row_sign_;
  int m_ = 0;
  int ncols_ = 0;
  int nstruct_ = 0;
  int first_art_ = 0;
  double obj_offset_ = 0;
  std::vector<int> col_start_, row_idx_;
  std::vector<double> val_, cost_, b_;
  std::vector<int> initial_basis_, basis_, in_basis_;
  std::vector<double> binv_, xb_;
  long iterations_ = 0;
  long iter_limit_ = 0;
  int since_reinvert_ = 0;
};

}  // namespace

LpSolution solve(const LpModel& model, const SolverOptions& opts) {
  Simplex s(model, opts);
  return s.run();
}

}  // namespace sched::lp
