#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

namespace credal {

inline constexpr std::size_t kMaxFrankWolfeIterations = 100000;
inline constexpr int kLineSearchSteps = 64;

// An objective on mixture points q = sum_k lambda_k column_k provides
//   void gradient(span<const double> q, span<double> grad) const;
//   double slope(span<const double> q, span<const double> dq) const;
// where slope is the derivative of t -> f(q + t dq) at t = 0 and may be +inf
// at the boundary of the domain.

/// f(q) = KL(target || q).
struct KlToMixture {
  std::span<const double> target;

  void gradient(std::span<const double> q, std::span<double> grad) const {
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (target[i] == 0.0) {
        grad[i] = 0.0;
      } else {
        grad[i] = q[i] > 0.0 ? -target[i] / q[i] : -std::numeric_limits<double>::infinity();
      }
    }
  }

  double slope(std::span<const double> q, std::span<const double> dq) const {
    double s = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (target[i] == 0.0 || dq[i] == 0.0) continue;
      if (q[i] <= 0.0) {
        return dq[i] < 0.0 ? std::numeric_limits<double>::infinity()
                           : -std::numeric_limits<double>::infinity();
      }
      s -= target[i] * dq[i] / q[i];
    }
    return s;
  }
};

/// f(p) = KL(p || reference), the first-argument block of a joint KL.
struct KlFromMixture {
  std::span<const double> reference;

  void gradient(std::span<const double> p, std::span<double> grad) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] <= 0.0) {
        grad[i] = -inf;
      } else if (reference[i] <= 0.0) {
        grad[i] = inf;
      } else {
        grad[i] = std::log(p[i] / reference[i]) + 1.0;
      }
    }
  }

  double slope(std::span<const double> p, std::span<const double> dq) const {
    constexpr double inf = std::numeric_limits<double>::infinity();
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (dq[i] == 0.0) continue;
      if (p[i] <= 0.0) return dq[i] < 0.0 ? inf : -inf;
      if (reference[i] <= 0.0) return dq[i] > 0.0 ? inf : -inf;
      s += dq[i] * (std::log(p[i] / reference[i]) + 1.0);
    }
    return s;
  }
};

/// Away-step Frank-Wolfe iterate on the probability simplex over a fixed set
/// of columns. Starts from uniform weights so every column is active.
class SimplexFrankWolfe {
 public:
  explicit SimplexFrankWolfe(std::vector<std::vector<double>> columns)
      : columns_(std::move(columns)),
        weights_(columns_.size(), 1.0 / static_cast<double>(columns_.size())),
        point_(columns_.empty() ? 0 : columns_.front().size()),
        grad_point_(point_.size()),
        grad_weights_(columns_.size()),
        scratch_(point_.size()),
        direction_(point_.size()) {
    recompute_point();
  }

  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const double> point() const noexcept { return point_; }
  std::size_t iterations() const noexcept { return iterations_; }

  /// Frank-Wolfe gap  <grad, lambda> - min_k grad_k  at the current iterate;
  /// bounds f(lambda) - min f for convex f.
  template <class Objective>
  double gap(const Objective& f) {
    compute_weight_gradient(f);
    return fw_gap();
  }

  /// One away-step iteration. Returns the gap measured before stepping; no
  /// step is taken when that gap is already <= tol.
  template <class Objective>
  double step(const Objective& f, double tol) {
    compute_weight_gradient(f);
    const double g = fw_gap();
    if (g <= tol) return g;

    const std::size_t k = columns_.size();
    std::size_t toward = 0;
    for (std::size_t j = 1; j < k; ++j) {
      if (grad_weights_[j] < grad_weights_[toward]) toward = j;
    }
    std::size_t away = k;
    for (std::size_t j = 0; j < k; ++j) {
      if (weights_[j] > 0.0 && (away == k || grad_weights_[j] > grad_weights_[away])) away = j;
    }
    const double dot = active_dot();
    const double away_gap = grad_weights_[away] - dot;

    const bool fw_step = !(away_gap > g) || weights_[away] >= 1.0;
    double max_step = 1.0;
    if (fw_step) {
      for (std::size_t i = 0; i < point_.size(); ++i) direction_[i] = columns_[toward][i] - point_[i];
    } else {
      max_step = weights_[away] / (1.0 - weights_[away]);
      for (std::size_t i = 0; i < point_.size(); ++i) direction_[i] = point_[i] - columns_[away][i];
    }
    const double t = line_search(f, max_step);

    if (fw_step) {
      if (t >= 1.0) {
        std::fill(weights_.begin(), weights_.end(), 0.0);
        weights_[toward] = 1.0;
      } else {
        for (double& w : weights_) w *= (1.0 - t);
        weights_[toward] += t;
      }
    } else {
      for (double& w : weights_) w *= (1.0 + t);
      weights_[away] -= t;
      if (t >= max_step || weights_[away] < 0.0) weights_[away] = 0.0;
    }
    const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
    for (double& w : weights_) w /= total;
    recompute_point();
    ++iterations_;
    return g;
  }

 private:
  template <class Objective>
  void compute_weight_gradient(const Objective& f) {
    f.gradient(point_, grad_point_);
    for (std::size_t j = 0; j < columns_.size(); ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < point_.size(); ++i) {
        if (columns_[j][i] != 0.0) s += columns_[j][i] * grad_point_[i];
      }
      grad_weights_[j] = s;
    }
  }

  double active_dot() const {
    double dot = 0.0;
    for (std::size_t j = 0; j < columns_.size(); ++j) {
      if (weights_[j] > 0.0) dot += weights_[j] * grad_weights_[j];
    }
    return dot;
  }

  double fw_gap() const {
    double lowest = grad_weights_[0];
    for (double g : grad_weights_) lowest = std::min(lowest, g);
    const double g = active_dot() - lowest;
    if (std::isnan(g)) return std::numeric_limits<double>::infinity();
    return std::max(0.0, g);
  }

  // Minimizes t -> f(point + t * direction) on [0, max_step] by bisection on
  // the derivative. Returns the left end of the final bracket, where the
  // derivative is still <= 0.
  template <class Objective>
  double line_search(const Objective& f, double max_step) {
    auto slope_at = [&](double t) {
      for (std::size_t i = 0; i < point_.size(); ++i) scratch_[i] = point_[i] + t * direction_[i];
      return f.slope(scratch_, direction_);
    };
    if (slope_at(max_step) <= 0.0) return max_step;
    double lo = 0.0;
    double hi = max_step;
    for (int it = 0; it < kLineSearchSteps; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double s = slope_at(mid);
      if (s <= 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return lo;
  }

  void recompute_point() {
    std::fill(point_.begin(), point_.end(), 0.0);
    for (std::size_t j = 0; j < columns_.size(); ++j) {
      if (weights_[j] == 0.0) continue;
      for (std::size_t i = 0; i < point_.size(); ++i) point_[i] += weights_[j] * columns_[j][i];
    }
  }

  std::vector<std::vector<double>> columns_;
  std::vector<double> weights_;
  std::vector<double> point_;
  std::vector<double> grad_point_;
  std::vector<double> grad_weights_;
  std::vector<double> scratch_;
  std::vector<double> direction_;
  std::size_t iterations_ = 0;
};

struct FrankWolfeResult {
  std::vector<double> weights;
  double gap = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Runs away-step Frank-Wolfe until the gap is <= tol or max_iterations.
template <class Objective>
FrankWolfeResult minimize_on_simplex(std::vector<std::vector<double>> columns, const Objective& f,
                                     double tol,
                                     std::size_t max_iterations = kMaxFrankWolfeIterations) {
  SimplexFrankWolfe fw(std::move(columns));
  double g = std::numeric_limits<double>::infinity();
  while (fw.iterations() < max_iterations) {
    g = fw.step(f, tol);
    if (g <= tol) break;
  }
  if (fw.iterations() >= max_iterations) g = fw.gap(f);
  return {std::vector<double>(fw.weights().begin(), fw.weights().end()), g, fw.iterations(), g <= tol};
}

}  // namespace credal
