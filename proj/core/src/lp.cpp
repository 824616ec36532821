#include "minkprobe/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "minkprobe/errors.hpp"

namespace minkprobe {

LinearProgram::LinearProgram(int num_vars)
    : num_vars_(num_vars), objective_(Eigen::VectorXd::Zero(num_vars)), free_(num_vars, false) {
  if (num_vars <= 0) throw Error(ErrorCode::InvalidArgument, "linear program needs variables");
}

void LinearProgram::maximize(Eigen::VectorXd c) {
  if (c.size() != num_vars_) throw Error(ErrorCode::DimensionMismatch, "objective size");
  objective_ = std::move(c);
  minimize_ = false;
}

void LinearProgram::minimize(Eigen::VectorXd c) {
  if (c.size() != num_vars_) throw Error(ErrorCode::DimensionMismatch, "objective size");
  objective_ = std::move(c);
  minimize_ = true;
}

void LinearProgram::add_constraint(Eigen::VectorXd coeffs, Relation rel, double rhs) {
  if (coeffs.size() != num_vars_) throw Error(ErrorCode::DimensionMismatch, "constraint size");
  rows_.push_back({std::move(coeffs), rel, rhs});
}

void LinearProgram::set_free(int var, bool free) { free_.at(var) = free; }

namespace {

class Tableau {
 public:
  using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  Tableau(int rows, int cols) : t_(Matrix::Zero(rows, cols + 1)), basis_(rows, -1) {}

  Matrix& data() { return t_; }
  std::vector<int>& basis() { return basis_; }
  int rows() const { return static_cast<int>(t_.rows()); }
  int cols() const { return static_cast<int>(t_.cols()) - 1; }
  double rhs(int i) const { return t_(i, cols()); }

  void pivot(int p, int e, Eigen::VectorXd& reduced) {
    t_.row(p) /= t_(p, e);
    for (int i = 0; i < rows(); ++i) {
      if (i == p) continue;
      const double f = t_(i, e);
      if (f != 0.0) t_.row(i) -= f * t_.row(p);
    }
    const double f = reduced(e);
    if (f != 0.0) reduced -= f * t_.row(p).transpose();
    basis_[p] = e;
  }

  // Maximizes the objective whose reduced costs are in `reduced` (length
  // cols + 1; last entry unused). Columns with allowed[j] == false never enter.
  LpStatus optimize(Eigen::VectorXd& reduced, const std::vector<bool>& allowed, double cost_eps,
                    long max_iter) {
    const double piv_eps = 1e-10;
    int degenerate_streak = 0;
    for (long iter = 0; iter < max_iter; ++iter) {
      const bool bland = degenerate_streak > 20;
      int enter = -1;
      double best = cost_eps;
      for (int j = 0; j < cols(); ++j) {
        if (!allowed[j] || reduced(j) <= cost_eps) continue;
        if (bland) {
          enter = j;
          break;
        }
        if (reduced(j) > best) {
          best = reduced(j);
          enter = j;
        }
      }
      if (enter < 0) return LpStatus::Optimal;

      int leave = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows(); ++i) {
        const double a = t_(i, enter);
        if (a <= piv_eps) continue;
        const double r = std::max(rhs(i), 0.0) / a;
        if (r < ratio - 1e-14 || (r <= ratio + 1e-14 && leave >= 0 && basis_[i] < basis_[leave])) {
          if (r < ratio - 1e-14 || leave < 0) ratio = r;
          leave = i;
        }
      }
      if (leave < 0) return LpStatus::Unbounded;
      degenerate_streak = ratio <= 1e-14 ? degenerate_streak + 1 : 0;
      pivot(leave, enter, reduced);
    }
    return LpStatus::IterationLimit;
  }

 private:
  Matrix t_;
  std::vector<int> basis_;
};

}  // namespace

LpSolution LinearProgram::solve() const {
  const int m = num_constraints();
  const int n = num_vars_;

  std::vector<int> pos_col(n), neg_col(n, -1);
  int nx = 0;
  for (int j = 0; j < n; ++j) {
    pos_col[j] = nx++;
    if (free_[j]) neg_col[j] = nx++;
  }

  // Normalize rows: non-negative right-hand side, unit max coefficient.
  std::vector<Eigen::VectorXd> coeffs(m);
  std::vector<Relation> rel(m);
  std::vector<double> rhs(m);
  std::vector<double> row_factor(m, 1.0);  // normalized row = factor * original row
  std::vector<int> unit_col(m, -1);        // column that starts as e_i
  int n_slack = 0, n_art = 0;
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(nx);
    for (int j = 0; j < n; ++j) {
      a(pos_col[j]) = rows_[i].coeffs(j);
      if (neg_col[j] >= 0) a(neg_col[j]) = -rows_[i].coeffs(j);
    }
    double b = rows_[i].rhs;
    Relation r = rows_[i].rel;
    const double scale = a.cwiseAbs().maxCoeff();
    if (scale > 0.0) {
      a /= scale;
      b /= scale;
      row_factor[i] = 1.0 / scale;
    }
    if (b < 0.0) {
      a = -a;
      b = -b;
      row_factor[i] = -row_factor[i];
      if (r == Relation::LessEqual) r = Relation::GreaterEqual;
      else if (r == Relation::GreaterEqual) r = Relation::LessEqual;
    }
    if (r != Relation::Equal) ++n_slack;
    if (r != Relation::LessEqual) ++n_art;
    coeffs[i] = std::move(a);
    rel[i] = r;
    rhs[i] = b;
  }

  const int art_begin = nx + n_slack;
  const int ncols = art_begin + n_art;
  Tableau tab(m, ncols);
  auto& t = tab.data();
  std::vector<bool> is_art(ncols, false);
  int slack = nx, art = art_begin;
  double max_rhs = 0.0;
  for (int i = 0; i < m; ++i) {
    t.row(i).head(nx) = coeffs[i].transpose();
    t(i, ncols) = rhs[i];
    max_rhs = std::max(max_rhs, rhs[i]);
    switch (rel[i]) {
      case Relation::LessEqual:
        t(i, slack) = 1.0;
        unit_col[i] = slack;
        tab.basis()[i] = slack++;
        break;
      case Relation::GreaterEqual:
        t(i, slack++) = -1.0;
        t(i, art) = 1.0;
        is_art[art] = true;
        unit_col[i] = art;
        tab.basis()[i] = art++;
        break;
      case Relation::Equal:
        t(i, art) = 1.0;
        is_art[art] = true;
        unit_col[i] = art;
        tab.basis()[i] = art++;
        break;
    }
  }

  const long max_iter = 50L * (m + ncols) + 1000;
  LpSolution out;

  // Phase 1: maximize -sum(artificials).
  if (n_art > 0) {
    Eigen::VectorXd reduced = Eigen::VectorXd::Zero(ncols + 1);
    for (int i = 0; i < m; ++i)
      if (is_art[tab.basis()[i]]) reduced += t.row(i).transpose();
    for (int j = 0; j < ncols; ++j)
      if (is_art[j]) reduced(j) = 0.0;
    std::vector<bool> allowed(ncols, true);
    const LpStatus st = tab.optimize(reduced, allowed, 1e-12, max_iter);
    if (st == LpStatus::IterationLimit) {
      out.status = st;
      return out;
    }
    double infeas = 0.0;
    for (int i = 0; i < m; ++i)
      if (is_art[tab.basis()[i]]) infeas += std::max(tab.rhs(i), 0.0);
    if (infeas > 1e-9 * (1.0 + max_rhs)) {
      out.status = LpStatus::Infeasible;
      return out;
    }
    // Drive remaining artificials out of the basis.
    for (int i = 0; i < m; ++i) {
      if (!is_art[tab.basis()[i]]) continue;
      int best = -1;
      double mag = 1e-9;
      for (int j = 0; j < art_begin; ++j) {
        if (std::abs(t(i, j)) > mag) {
          mag = std::abs(t(i, j));
          best = j;
        }
      }
      if (best >= 0) {
        Eigen::VectorXd dummy = Eigen::VectorXd::Zero(ncols + 1);
        tab.pivot(i, best, dummy);
      }
    }
  }

  // Phase 2.
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(ncols + 1);
  const double sign = minimize_ ? -1.0 : 1.0;
  for (int j = 0; j < n; ++j) {
    cost(pos_col[j]) = sign * objective_(j);
    if (neg_col[j] >= 0) cost(neg_col[j]) = -sign * objective_(j);
  }
  Eigen::VectorXd reduced = cost;
  for (int i = 0; i < m; ++i) {
    const double cb = cost(tab.basis()[i]);
    if (cb != 0.0) reduced -= cb * t.row(i).transpose();
  }
  std::vector<bool> allowed(ncols, true);
  for (int j = 0; j < ncols; ++j) allowed[j] = !is_art[j];
  const double cost_eps = 1e-11 * std::max(1.0, objective_.cwiseAbs().maxCoeff());
  out.status = tab.optimize(reduced, allowed, cost_eps, max_iter);
  if (out.status != LpStatus::Optimal) return out;

  Eigen::VectorXd xs = Eigen::VectorXd::Zero(ncols);
  for (int i = 0; i < m; ++i) xs(tab.basis()[i]) = std::max(tab.rhs(i), 0.0);
  out.x = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < n; ++j) {
    out.x(j) = xs(pos_col[j]);
    if (neg_col[j] >= 0) out.x(j) -= xs(neg_col[j]);
  }
  out.objective = objective_.dot(out.x);
  // reduced_j = c_j - pi^T A_j, so the multiplier of row i is minus the
  // reduced cost of its initial unit column.
  out.duals = Eigen::VectorXd::Zero(m);
  for (int i = 0; i < m; ++i) out.duals(i) = -sign * reduced(unit_col[i]) * row_factor[i];
  return out;
}

}  // namespace minkprobe
