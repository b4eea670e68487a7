#include "credal/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "credal/error.hpp"
#include "credal/linear_program.hpp"

namespace credal {
namespace {

void require_length(std::size_t expected, std::size_t got) {
  if (expected != got) {
    fail(ErrorCode::LengthMismatch,
         "test function has " + std::to_string(got) + " values, space has " + std::to_string(expected));
  }
}

}  // namespace

TestFunction::TestFunction(std::vector<double> values, std::optional<double> bound)
    : values_(std::move(values)), bound_(bound) {
  for (double v : values_) {
    if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "test function values must be finite");
  }
  if (bound_ && sup_norm() > *bound_) {
    fail(ErrorCode::BoundViolation, "sup norm " + std::to_string(sup_norm()) + " exceeds bound " +
                                        std::to_string(*bound_));
  }
}

double TestFunction::sup_norm() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::fabs(v));
  return m;
}

ExtendedReal kl_vectors(std::span<const double> mu, std::span<const double> nu) {
  double sum = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu[i] == 0.0) continue;
    if (nu[i] == 0.0) return ExtendedReal::infinity();
    sum += mu[i] * std::log(mu[i] / nu[i]);
  }
  return ExtendedReal(std::max(0.0, sum));
}

double tv_vectors(std::span<const double> mu, std::span<const double> nu) {
  double s = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) s += std::fabs(mu[i] - nu[i]);
  return 0.5 * s;
}

double expectation(std::span<const double> weights, std::span<const double> phi) {
  double s = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) s += weights[i] * phi[i];
  return s;
}

double log_expectation_exp(std::span<const double> weights, std::span<const double> phi) {
  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] > 0.0) shift = std::max(shift, phi[i]);
  }
  double s = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] > 0.0) s += weights[i] * std::exp(phi[i] - shift);
  }
  return shift + std::log(s);
}

ExtendedReal kl(const Distribution& mu, const Distribution& nu) {
  require_same_space(mu.space(), nu.space());
  return kl_vectors(mu.weights(), nu.weights());
}

double js(const Distribution& mu, const Distribution& nu) {
  require_same_space(mu.space(), nu.space());
  std::vector<double> mid(mu.size());
  for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = 0.5 * (mu[i] + nu[i]);
  return 0.5 * kl_vectors(mu.weights(), mid).value() + 0.5 * kl_vectors(nu.weights(), mid).value();
}

double tv(const Distribution& mu, const Distribution& nu) {
  require_same_space(mu.space(), nu.space());
  return tv_vectors(mu.weights(), nu.weights());
}

TransportPlan solve_transport(const Matrix& cost, const Distribution& mu, const Distribution& nu) {
  require_same_space(mu.space(), nu.space());
  const std::size_t n = mu.size();
  if (cost.rows() != n || cost.cols() != n) {
    fail(ErrorCode::InvalidArgument, "transport cost must be " + std::to_string(n) + "x" +
                                         std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!(cost(i, j) >= 0.0) || !std::isfinite(cost(i, j))) {
        fail(ErrorCode::InvalidArgument, "transport cost entries must be finite and nonnegative");
      }
    }
  }

  LinearProgram lp;
  lp.constraints = Matrix(2 * n, n * n);
  lp.rhs.resize(2 * n);
  lp.cost.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t v = i * n + j;
      lp.cost[v] = cost(i, j);
      lp.constraints(i, v) = 1.0;
      lp.constraints(n + j, v) = 1.0;
    }
    lp.rhs[i] = mu[i];
    lp.rhs[n + i] = nu[i];
  }
  const LpSolution sol = solve_lp_or_throw(lp, "transport");

  TransportPlan out;
  out.plan = Matrix(n, n);
  double mass = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.plan(i, j) = sol.primal[i * n + j];
      mass += out.plan(i, j);
    }
  }
  out.cost = sol.objective;
  out.certified_gap = sol.gap() + sol.dual_infeasibility * mass;
  return out;
}

double wasserstein(const Distribution& mu, const Distribution& nu, double p) {
  require_same_space(mu.space(), nu.space());
  if (!(p >= 1.0) || !std::isfinite(p)) {
    fail(ErrorCode::InvalidArgument, "Wasserstein order must be a finite p >= 1");
  }
  const Matrix& d = mu.space()->require_metric();
  Matrix cost(d.rows(), d.cols());
  for (std::size_t i = 0; i < d.rows(); ++i) {
    for (std::size_t j = 0; j < d.cols(); ++j) cost(i, j) = std::pow(d(i, j), p);
  }
  const TransportPlan plan = solve_transport(cost, mu, nu);
  return transport_cost_root(plan.cost, p);
}

double transport_cost_root(double cost, double p) {
  return cost < 1e-15 ? 0.0 : std::pow(cost, 1.0 / p);
}

double kl_dual_value(const Distribution& mu, const Distribution& nu, const TestFunction& phi) {
  require_same_space(mu.space(), nu.space());
  require_length(mu.size(), phi.size());
  for (double v : phi.values()) {
    if (v > kMaxExponent) {
      fail(ErrorCode::OverflowGuard, "test function entry " + std::to_string(v) + " exceeds 700");
    }
  }
  return expectation(mu.weights(), phi.values()) - log_expectation_exp(nu.weights(), phi.values());
}

double tv_dual_value(const Distribution& mu, const Distribution& nu, const TestFunction& phi) {
  require_same_space(mu.space(), nu.space());
  require_length(mu.size(), phi.size());
  if (phi.sup_norm() > 1.0 + 1e-12) {
    fail(ErrorCode::BoundViolation, "TV dual needs |phi| <= 1, got sup norm " +
                                        std::to_string(phi.sup_norm()));
  }
  return 0.5 * std::fabs(expectation(mu.weights(), phi.values()) -
                         expectation(nu.weights(), phi.values()));
}

}  // namespace credal
