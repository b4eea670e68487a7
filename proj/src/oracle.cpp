#include "credal/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>

#include "credal/classical.hpp"
#include "credal/error.hpp"

namespace credal {
namespace {

constexpr std::size_t kMaxOracleVertices = 4;
constexpr std::size_t kMaxOracleSpace = 6;

// Calls visit(counts) for every composition of `total` into `parts` parts.
void for_each_composition(std::size_t parts, std::size_t total,
                          const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> counts(parts, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t slot, std::size_t left) {
    if (slot + 1 == parts) {
      counts[slot] = left;
      visit(counts);
      return;
    }
    for (std::size_t c = 0; c <= left; ++c) {
      counts[slot] = c;
      rec(slot + 1, left - c);
    }
  };
  rec(0, total);
}

// Decodes a Pruefer sequence into the n-1 edges of a labelled tree.
std::vector<std::pair<std::size_t, std::size_t>> pruefer_edges(const std::vector<std::size_t>& seq,
                                                               std::size_t n) {
  std::vector<std::size_t> degree(n, 1);
  for (std::size_t s : seq) ++degree[s];
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t s : seq) {
    for (std::size_t leaf = 0; leaf < n; ++leaf) {
      if (degree[leaf] == 1) {
        edges.emplace_back(leaf, s);
        --degree[leaf];
        --degree[s];
        break;
      }
    }
  }
  std::size_t u = n, v = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (degree[i] == 1) (u == n ? u : v) = i;
  }
  edges.emplace_back(u, v);
  return edges;
}

}  // namespace

LipschitzVertexOracle::LipschitzVertexOracle(const Matrix& d) {
  const std::size_t n = d.rows();
  if (n == 0 || n > kMaxOracleSpace) {
    fail(ErrorCode::InvalidArgument, "Lipschitz vertex oracle supports 1..6 points");
  }
  if (n == 1) {
    potentials_.push_back({0.0});
    return;
  }
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> trees;
  if (n == 2) {
    trees.push_back({{0, 1}});
  } else {
    std::vector<std::size_t> seq(n - 2, 0);
    while (true) {
      trees.push_back(pruefer_edges(seq, n));
      std::size_t pos = 0;
      while (pos < seq.size() && ++seq[pos] == n) seq[pos++] = 0;
      if (pos == seq.size()) break;
    }
  }

  for (const auto& edges : trees) {
    for (std::size_t signs = 0; signs < (std::size_t{1} << (n - 1)); ++signs) {
      // Propagate f from the root along tight edges f_b - f_a = +-d(a, b).
      std::vector<double> f(n, std::numeric_limits<double>::quiet_NaN());
      f[0] = 0.0;
      bool progress = true;
      while (progress) {
        progress = false;
        for (std::size_t e = 0; e < edges.size(); ++e) {
          const auto [a, b] = edges[e];
          const double s = (signs >> e) & 1U ? 1.0 : -1.0;
          if (!std::isnan(f[a]) && std::isnan(f[b])) {
            f[b] = f[a] + s * d(a, b);
            progress = true;
          } else if (std::isnan(f[a]) && !std::isnan(f[b])) {
            f[a] = f[b] - s * d(a, b);
            progress = true;
          }
        }
      }
      bool feasible = true;
      for (std::size_t i = 0; i < n && feasible; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (f[i] - f[j] > d(i, j) * (1.0 + 1e-12) + 1e-15) {
            feasible = false;
            break;
          }
        }
      }
      if (feasible) potentials_.push_back(std::move(f));
    }
  }
}

double LipschitzVertexOracle::w1(std::span<const double> mu, std::span<const double> nu) const {
  double best = 0.0;
  for (const auto& f : potentials_) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * (mu[i] - nu[i]);
    best = std::max(best, s);
  }
  return best;
}

double grid_oracle_inner(const Distribution& mu, const CredalSet& q, InnerObjective objective,
                         double step) {
  require_same_space(mu.space(), q.space());
  if (q.size() > kMaxOracleVertices) {
    fail(ErrorCode::TooManyVertices, "grid oracle handles at most 4 vertices, got " +
                                         std::to_string(q.size()));
  }
  if (!(step > 0.0 && step <= 0.1)) fail(ErrorCode::InvalidArgument, "grid step must be in (0, 0.1]");

  std::optional<LipschitzVertexOracle> lipschitz;
  if (objective == InnerObjective::w1) lipschitz.emplace(mu.space()->require_metric());

  const auto total = static_cast<std::size_t>(std::ceil(1.0 / step - 1e-9));
  const double spacing = 1.0 / static_cast<double>(total);
  const std::size_t n = mu.size();
  std::vector<double> point(n);
  double best = std::numeric_limits<double>::infinity();

  for_each_composition(q.size(), total, [&](const std::vector<std::size_t>& counts) {
    std::fill(point.begin(), point.end(), 0.0);
    for (std::size_t k = 0; k < counts.size(); ++k) {
      if (counts[k] == 0) continue;
      const double w = static_cast<double>(counts[k]) * spacing;
      const auto v = q.vertex(k).weights();
      for (std::size_t i = 0; i < n; ++i) point[i] += w * v[i];
    }
    double value = 0.0;
    switch (objective) {
      case InnerObjective::kl: value = kl_vectors(mu.weights(), point).value(); break;
      case InnerObjective::tv: value = tv_vectors(mu.weights(), point); break;
      case InnerObjective::w1: value = lipschitz->w1(mu.weights(), point); break;
    }
    best = std::min(best, value);
  });
  return best;
}

}  // namespace credal
