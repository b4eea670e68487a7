#pragma once

#include <span>
#include <vector>

#include "credal/core_model.hpp"

namespace credal {

enum class InnerObjective { kl, tv, w1 };

/// Exhaustive minimum of the chosen objective over mixtures of Q whose
/// weights lie on the simplex grid with spacing at most `step`. Shares no
/// code with the Frank-Wolfe or LP paths: KL and TV are evaluated directly
/// and W1 by enumerating the vertices of the 1-Lipschitz polytope.
///
/// Throws TooManyVertices when Q has more than 4 vertices and InvalidArgument
/// when step is outside (0, 0.1]. The KL objective returns +inf when no grid
/// point has finite divergence.
double grid_oracle_inner(const Distribution& mu, const CredalSet& q, InnerObjective objective,
                         double step);

/// Exact W1 on a small metric space (n <= 6) as the best extreme point of
/// {f : f_0 = 0, f_i - f_j <= d_ij}. Each extreme point comes from a
/// spanning tree of tight constraints with signed edges.
class LipschitzVertexOracle {
 public:
  explicit LipschitzVertexOracle(const Matrix& metric);

  double w1(std::span<const double> mu, std::span<const double> nu) const;
  const std::vector<std::vector<double>>& potentials() const noexcept { return potentials_; }

 private:
  std::vector<std::vector<double>> potentials_;
};

}  // namespace credal
