#include "credal/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "credal/error.hpp"

namespace credal {
namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string idx(std::size_t i) { return std::to_string(i); }

}  // namespace

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) {
      fail(ErrorCode::InvalidArgument, "row " + idx(i) + " has " + idx(rows[i].size()) +
                                           " entries, expected " + idx(c));
    }
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

void validate_metric(const Matrix& d) {
  const std::size_t n = d.rows();
  if (d.cols() != n) fail(ErrorCode::InvalidSpace, "metric must be square");
  for (std::size_t i = 0; i < n; ++i) {
    if (d(i, i) != 0.0) {
      fail(ErrorCode::NonzeroDiagonal, "d(" + idx(i) + "," + idx(i) + ") = " + num(d(i, i)));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d(i, j) != d(j, i)) {
        fail(ErrorCode::AsymmetricMetric, "d(" + idx(i) + "," + idx(j) + ") = " + num(d(i, j)) +
                                              " but d(" + idx(j) + "," + idx(i) +
                                              ") = " + num(d(j, i)));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && !(d(i, j) > 0.0)) {
        fail(ErrorCode::NegativeDistance, "d(" + idx(i) + "," + idx(j) + ") = " + num(d(i, j)) +
                                              " must be strictly positive");
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const double through = d(i, j) + d(j, k);
        if (d(i, k) > through * (1.0 + 1e-12)) {
          throw TriangleViolation(i, j, k,
                                  "d(" + idx(i) + "," + idx(k) + ") = " + num(d(i, k)) +
                                      " exceeds d(" + idx(i) + "," + idx(j) + ") + d(" + idx(j) +
                                      "," + idx(k) + ") = " + num(through));
        }
      }
    }
  }
}

void validate_space(const std::vector<std::string>& labels, const std::optional<Matrix>& metric) {
  if (labels.empty()) fail(ErrorCode::InvalidSpace, "space needs at least one point");
  if (metric) {
    if (metric->rows() != labels.size() || metric->cols() != labels.size()) {
      fail(ErrorCode::InvalidSpace, "metric is " + idx(metric->rows()) + "x" +
                                        idx(metric->cols()) + " but the space has " +
                                        idx(labels.size()) + " points");
    }
    validate_metric(*metric);
  }
}

FiniteSpace::FiniteSpace(std::vector<std::string> labels, std::optional<Matrix> metric)
    : labels_(std::move(labels)), metric_(std::move(metric)) {
  validate_space(labels_, metric_);
}

double FiniteSpace::diameter() const {
  const Matrix& d = require_metric();
  double best = 0.0;
  for (std::size_t i = 0; i < d.rows(); ++i) {
    for (std::size_t j = 0; j < d.cols(); ++j) best = std::max(best, d(i, j));
  }
  return best;
}

const Matrix& FiniteSpace::require_metric() const {
  if (!metric_) fail(ErrorCode::NoMetric, "space has no metric");
  return *metric_;
}

SpacePtr make_space(std::vector<std::string> labels, std::optional<Matrix> metric) {
  return std::make_shared<const FiniteSpace>(std::move(labels), std::move(metric));
}

namespace {

std::vector<std::string> index_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return labels;
}

}  // namespace

SpacePtr make_plain_space(std::size_t n) { return make_space(index_labels(n)); }

SpacePtr make_line_space(std::size_t n) {
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      d(i, j) = std::fabs(static_cast<double>(i) - static_cast<double>(j));
    }
  }
  return make_space(index_labels(n), std::move(d));
}

SpacePtr make_discrete_metric_space(std::size_t n) {
  Matrix d(n, n, 1.0);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = 0.0;
  return make_space(index_labels(n), std::move(d));
}

bool same_space(const SpacePtr& a, const SpacePtr& b) noexcept {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

void require_same_space(const SpacePtr& a, const SpacePtr& b) {
  if (!same_space(a, b)) fail(ErrorCode::SpaceMismatch, "operands live on different spaces");
}

Distribution::Distribution(SpacePtr space, std::vector<double> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
  if (!space_) fail(ErrorCode::InvalidSpace, "distribution without a space");
  if (weights_.size() != space_->size()) {
    fail(ErrorCode::LengthMismatch, "expected " + idx(space_->size()) + " weights, got " +
                                        idx(weights_.size()));
  }
  bool snapped = false;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    double& w = weights_[i];
    if (std::isnan(w)) fail(ErrorCode::InvalidDistribution, "weights[" + idx(i) + "] is NaN");
    if (w != 0.0 && std::fabs(w) < kSnapThreshold) {
      w = 0.0;
      snapped = true;
    }
    if (w < 0.0 || w > 1.0 + kWeightSumTolerance) {
      fail(ErrorCode::InvalidDistribution,
           "weights[" + idx(i) + "] = " + num(w) + " is outside [0, 1]");
    }
  }
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (std::fabs(total - 1.0) > kWeightSumTolerance) {
    fail(ErrorCode::InvalidDistribution, "weights sum to " + num(total) + ", expected 1");
  }
  if (snapped) {
    for (double& w : weights_) w /= total;
  }
}

bool operator==(const Distribution& a, const Distribution& b) noexcept {
  return same_space(a.space_, b.space_) && a.weights_ == b.weights_;
}

std::vector<std::size_t> support(const Distribution& mu) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu[i] > 0.0) out.push_back(i);
  }
  return out;
}

bool approx_equal(std::span<const double> a, std::span<const double> b, double tol) noexcept {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::fabs(a[i] - b[i]) > tol) return false;
  }
  return true;
}

CredalSet::CredalSet(SpacePtr space, std::vector<Distribution> vertices) : space_(std::move(space)) {
  if (!space_) fail(ErrorCode::InvalidSpace, "credal set without a space");
  if (vertices.empty()) fail(ErrorCode::EmptySet, "credal set needs at least one vertex");
  vertices_.reserve(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (!same_space(space_, vertices[i].space())) {
      fail(ErrorCode::SpaceMismatch, "vertex " + idx(i) + " lives on a different space");
    }
    const bool duplicate = std::any_of(vertices_.begin(), vertices_.end(), [&](const Distribution& v) {
      return approx_equal(v.weights(), vertices[i].weights(), kDedupTolerance);
    });
    if (!duplicate) vertices_.push_back(std::move(vertices[i]));
  }
}

namespace {

std::vector<Distribution> to_distributions(const SpacePtr& space,
                                           const std::vector<std::vector<double>>& rows) {
  std::vector<Distribution> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.emplace_back(space, r);
  return out;
}

}  // namespace

CredalSet::CredalSet(SpacePtr space, const std::vector<std::vector<double>>& vertex_weights)
    : CredalSet(space, to_distributions(space, vertex_weights)) {}

CredalSet CredalSet::singleton(Distribution mu) {
  SpacePtr space = mu.space();
  return CredalSet(std::move(space), std::vector<Distribution>{std::move(mu)});
}

CredalSet CredalSet::with_vertex(Distribution v) const {
  std::vector<Distribution> vs = vertices_;
  vs.push_back(std::move(v));
  return CredalSet(space_, std::move(vs));
}

std::vector<bool> CredalSet::support_mask() const {
  std::vector<bool> mask(dimension(), false);
  for (const auto& v : vertices_) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] > 0.0) mask[i] = true;
    }
  }
  return mask;
}

MixtureWeights::MixtureWeights(std::vector<double> coefficients)
    : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) fail(ErrorCode::InvalidMixtureWeights, "no coefficients");
  double total = 0.0;
  for (std::size_t i = 0; i < coefficients_.size(); ++i) {
    double& c = coefficients_[i];
    if (std::isnan(c) || c < -kWeightSumTolerance) {
      fail(ErrorCode::InvalidMixtureWeights, "coefficient " + idx(i) + " = " + num(c));
    }
    if (c < 0.0) c = 0.0;
    total += c;
  }
  if (std::fabs(total - 1.0) > kWeightSumTolerance) {
    fail(ErrorCode::InvalidMixtureWeights, "coefficients sum to " + num(total));
  }
}

MixtureWeights MixtureWeights::uniform(std::size_t k) {
  return MixtureWeights(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

MixtureWeights MixtureWeights::indicator(std::size_t k, std::size_t index) {
  std::vector<double> c(k, 0.0);
  c.at(index) = 1.0;
  return MixtureWeights(std::move(c));
}

std::vector<double> mixture_point(std::span<const double> weights, const CredalSet& set) {
  if (weights.size() != set.size()) {
    fail(ErrorCode::LengthMismatch, idx(weights.size()) + " weights for " + idx(set.size()) +
                                        " vertices");
  }
  std::vector<double> out(set.dimension(), 0.0);
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (weights[k] == 0.0) continue;
    const auto v = set.vertex(k).weights();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += weights[k] * v[i];
  }
  return out;
}

Distribution mixture(const MixtureWeights& weights, const CredalSet& set) {
  return Distribution(set.space(), mixture_point(weights.coefficients(), set));
}

CredalSet minkowski_average(const CredalSet& p, const CredalSet& q) {
  require_same_space(p.space(), q.space());
  std::vector<std::vector<double>> mids;
  mids.reserve(p.size() * q.size());
  for (const auto& v : p.vertices()) {
    for (const auto& w : q.vertices()) {
      std::vector<double> m(v.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = 0.5 * (v[i] + w[i]);
      mids.push_back(std::move(m));
    }
  }
  std::sort(mids.begin(), mids.end(), std::greater<>());
  return CredalSet(p.space(), mids);
}

CredalSet set_mixture(const CredalSet& p, const CredalSet& q, double lambda) {
  require_same_space(p.space(), q.space());
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    fail(ErrorCode::InvalidArgument, "mixing coefficient " + num(lambda) + " outside [0, 1]");
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(p.size() * q.size());
  for (const auto& v : p.vertices()) {
    for (const auto& w : q.vertices()) {
      std::vector<double> m(v.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = lambda * v[i] + (1.0 - lambda) * w[i];
      rows.push_back(std::move(m));
    }
  }
  return CredalSet(p.space(), rows);
}

}  // namespace credal
