#include "credal/linear_program.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "credal/error.hpp"

namespace credal {
namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kReducedCostTol = 1e-11;
constexpr double kFeasibilityTol = 1e-9;

// Tableau over [original | artificial | rhs]. Artificial column r starts as
// e_r, so at every point its column holds B^{-1} e_r.
class Tableau {
 public:
  Tableau(const LinearProgram& lp) : m_(lp.rhs.size()), n_(lp.cost.size()), t_(m_, n_ + m_ + 1) {
    sign_.assign(m_, 1.0);
    basis_.resize(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      sign_[r] = lp.rhs[r] < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) t_(r, j) = sign_[r] * lp.constraints(r, j);
      t_(r, n_ + r) = 1.0;
      t_(r, rhs_col()) = sign_[r] * lp.rhs[r];
      basis_[r] = n_ + r;
    }
  }

  std::size_t rows() const { return m_; }
  std::size_t vars() const { return n_; }
  std::size_t rhs_col() const { return n_ + m_; }
  bool is_artificial(std::size_t j) const { return j >= n_; }

  // Runs simplex on `cost` (length n + m). Columns with allowed[j] == false
  // never enter.
  LpStatus optimize(const std::vector<double>& cost, const std::vector<bool>& allowed,
                    std::size_t& iterations, std::size_t cap) {
    std::vector<double> reduced(n_ + m_);
    while (true) {
      compute_reduced(cost, reduced);
      std::size_t enter = npos;
      for (std::size_t j = 0; j < n_ + m_; ++j) {
        if (allowed[j] && reduced[j] < -kReducedCostTol) {
          enter = j;
          break;
        }
      }
      if (enter == npos) return LpStatus::optimal;
      if (iterations >= cap) return LpStatus::iteration_limit;

      std::size_t leave = npos;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < m_; ++r) {
        const double a = t_(r, enter);
        if (a <= kPivotTol) continue;
        const double ratio = std::max(0.0, t_(r, rhs_col())) / a;
        if (leave == npos || ratio < best_ratio - 1e-15) {
          best_ratio = ratio;
          leave = r;
        } else if (ratio <= best_ratio + 1e-15 && basis_[r] < basis_[leave]) {
          leave = r;
        }
      }
      if (leave == npos) return LpStatus::unbounded;
      pivot(leave, enter);
      ++iterations;
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const std::size_t width = n_ + m_ + 1;
    const double p = t_(r, c);
    auto pr = t_.row(r);
    for (std::size_t j = 0; j < width; ++j) pr[j] /= p;
    pr[c] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f == 0.0) continue;
      auto ri = t_.row(i);
      for (std::size_t j = 0; j < width; ++j) ri[j] -= f * pr[j];
      ri[c] = 0.0;
    }
    basis_[r] = c;
  }

  // Pivots artificial variables out of the basis where possible. Rows where
  // no original column has a usable entry are redundant; their original
  // entries are zeroed so the artificial stays basic at zero.
  void purge_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      std::size_t col = npos;
      double best = 1e-9;
      for (std::size_t j = 0; j < n_; ++j) {
        if (std::fabs(t_(r, j)) > best) {
          best = std::fabs(t_(r, j));
          col = j;
        }
      }
      if (col != npos) {
        pivot(r, col);
      } else {
        for (std::size_t j = 0; j < n_; ++j) t_(r, j) = 0.0;
        t_(r, rhs_col()) = 0.0;
      }
    }
  }

  double objective(const std::vector<double>& cost) const {
    double z = 0.0;
    for (std::size_t r = 0; r < m_; ++r) z += cost[basis_[r]] * t_(r, rhs_col());
    return z;
  }

  std::vector<double> primal() const {
    std::vector<double> x(n_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) x[basis_[r]] = std::max(0.0, t_(r, rhs_col()));
    }
    return x;
  }

  // y_r = sign_r * sum_i c_B(i) * (B^{-1})_{i r}
  std::vector<double> duals(const std::vector<double>& cost) const {
    std::vector<double> y(m_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      double s = 0.0;
      for (std::size_t i = 0; i < m_; ++i) s += cost[basis_[i]] * t_(i, n_ + r);
      y[r] = sign_[r] * s;
    }
    return y;
  }

 private:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  void compute_reduced(const std::vector<double>& cost, std::vector<double>& reduced) const {
    for (std::size_t j = 0; j < n_ + m_; ++j) {
      double s = cost[j];
      for (std::size_t r = 0; r < m_; ++r) s -= cost[basis_[r]] * t_(r, j);
      reduced[j] = s;
    }
  }

  std::size_t m_, n_;
  Matrix t_;
  std::vector<double> sign_;
  std::vector<std::size_t> basis_;
};

}  // namespace

double LpSolution::gap() const noexcept { return std::max(0.0, objective - dual_objective); }

LpSolution solve_lp(const LinearProgram& lp) {
  const std::size_t m = lp.rhs.size();
  const std::size_t n = lp.cost.size();
  if (lp.constraints.rows() != m || lp.constraints.cols() != n) {
    fail(ErrorCode::LengthMismatch, "linear program dimensions disagree");
  }
  LpSolution sol;
  const std::size_t cap = 10 * (m + n) * (m + n);
  Tableau tab(lp);

  std::vector<double> phase1(n + m, 0.0);
  for (std::size_t r = 0; r < m; ++r) phase1[n + r] = 1.0;
  std::vector<bool> allowed(n + m, true);
  sol.status = tab.optimize(phase1, allowed, sol.iterations, cap);
  if (sol.status == LpStatus::iteration_limit) return sol;
  double scale = 1.0;
  for (double b : lp.rhs) scale = std::max(scale, std::fabs(b));
  if (tab.objective(phase1) > kFeasibilityTol * scale) {
    sol.status = LpStatus::infeasible;
    return sol;
  }
  tab.purge_artificials();

  std::vector<double> phase2(n + m, 0.0);
  std::copy(lp.cost.begin(), lp.cost.end(), phase2.begin());
  for (std::size_t j = n; j < n + m; ++j) allowed[j] = false;
  sol.status = tab.optimize(phase2, allowed, sol.iterations, cap);
  if (sol.status != LpStatus::optimal) return sol;

  sol.primal = tab.primal();
  sol.dual = tab.duals(phase2);
  sol.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.objective += lp.cost[j] * sol.primal[j];
  sol.dual_objective = 0.0;
  for (std::size_t r = 0; r < m; ++r) sol.dual_objective += lp.rhs[r] * sol.dual[r];
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double reduced = lp.cost[j];
    for (std::size_t r = 0; r < m; ++r) reduced -= lp.constraints(r, j) * sol.dual[r];
    worst = std::max(worst, -reduced);
  }
  sol.dual_infeasibility = worst;
  return sol;
}

LpSolution solve_lp_or_throw(const LinearProgram& lp, const char* what) {
  LpSolution sol = solve_lp(lp);
  switch (sol.status) {
    case LpStatus::optimal: return sol;
    case LpStatus::infeasible: fail(ErrorCode::SolverFailure, std::string(what) + ": infeasible");
    case LpStatus::unbounded: fail(ErrorCode::SolverFailure, std::string(what) + ": unbounded");
    case LpStatus::iteration_limit:
      fail(ErrorCode::SolverFailure, std::string(what) + ": iteration limit reached");
  }
  return sol;
}

}  // namespace credal
