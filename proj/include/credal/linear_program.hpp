#pragma once

#include <cstddef>
#include <vector>

#include "credal/core_model.hpp"

namespace credal {

/// minimize cost . x  subject to  constraints * x = rhs,  x >= 0.
struct LinearProgram {
  Matrix constraints;
  std::vector<double> rhs;
  std::vector<double> cost;
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> primal;
  /// One multiplier per constraint row, for the original (unflipped) rows.
  std::vector<double> dual;
  double objective = 0.0;
  double dual_objective = 0.0;
  /// max(0, -min_j reduced cost_j) for the returned duals.
  double dual_infeasibility = 0.0;
  std::size_t iterations = 0;

  /// objective - dual_objective, clamped at 0.
  double gap() const noexcept;
};

/// Dense two-phase simplex with Bland's rule. Redundant equality rows are
/// detected after phase one and pinned. The iteration cap is
/// 10 * (rows + cols)^2 summed over both phases.
LpSolution solve_lp(const LinearProgram& lp);

/// solve_lp that throws SolverFailure for any non-optimal status.
LpSolution solve_lp_or_throw(const LinearProgram& lp, const char* what);

}  // namespace credal
