#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace credal {

inline constexpr double kWeightSumTolerance = 1e-12;
inline constexpr double kSnapThreshold = 1e-14;
inline constexpr double kDedupTolerance = 1e-12;

/// Dense row-major matrix. Only what the solvers need.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  /// Throws InvalidArgument on ragged input.
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Checks the metric axioms on a square matrix: zero diagonal, symmetry,
/// strictly positive off-diagonal entries and the triangle inequality.
/// Throws NonzeroDiagonal, AsymmetricMetric, NegativeDistance or
/// TriangleViolation (carrying the first offending triple).
void validate_metric(const Matrix& metric);

/// Validates the full space description; throws InvalidSpace for an empty
/// label list or a metric of the wrong shape, then defers to validate_metric.
void validate_space(const std::vector<std::string>& labels, const std::optional<Matrix>& metric);

/// Finite sample space: labelled points with an optional metric.
class FiniteSpace {
 public:
  explicit FiniteSpace(std::vector<std::string> labels, std::optional<Matrix> metric = std::nullopt);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::optional<Matrix>& metric() const noexcept { return metric_; }
  bool has_metric() const noexcept { return metric_.has_value(); }

  /// Largest pairwise distance. Throws NoMetric.
  double diameter() const;

  /// Throws NoMetric.
  const Matrix& require_metric() const;

  friend bool operator==(const FiniteSpace&, const FiniteSpace&) = default;

 private:
  std::vector<std::string> labels_;
  std::optional<Matrix> metric_;
};

using SpacePtr = std::shared_ptr<const FiniteSpace>;

SpacePtr make_space(std::vector<std::string> labels, std::optional<Matrix> metric = std::nullopt);

/// Space with labels "0".."n-1" and no metric.
SpacePtr make_plain_space(std::size_t n);

/// Points 0..n-1 on a line with d(i,j) = |i - j|.
SpacePtr make_line_space(std::size_t n);

/// Every off-diagonal distance equal to one; TV and W1 coincide on it.
SpacePtr make_discrete_metric_space(std::size_t n);

bool same_space(const SpacePtr& a, const SpacePtr& b) noexcept;

/// Throws SpaceMismatch.
void require_same_space(const SpacePtr& a, const SpacePtr& b);

/// Probability vector on a FiniteSpace.
///
/// On construction entries with |w| < 1e-14 are snapped to exactly 0 and, if
/// any snapping happened, the vector is renormalized. Weights must lie in
/// [0, 1] and sum to 1 within 1e-12.
class Distribution {
 public:
  Distribution(SpacePtr space, std::vector<double> weights);

  const SpacePtr& space() const noexcept { return space_; }
  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const noexcept { return weights_[i]; }

  /// Exact equality of spaces and weights.
  friend bool operator==(const Distribution& a, const Distribution& b) noexcept;

 private:
  SpacePtr space_;
  std::vector<double> weights_;
};

/// Indices with strictly positive weight.
std::vector<std::size_t> support(const Distribution& mu);

/// True when every coordinate differs by at most tol.
bool approx_equal(std::span<const double> a, std::span<const double> b, double tol) noexcept;

/// Convex hull of finitely many distributions, stored by its vertex list.
/// Near-duplicate vertices (per-coordinate tolerance 1e-12) are dropped,
/// keeping the first occurrence.
class CredalSet {
 public:
  CredalSet(SpacePtr space, std::vector<Distribution> vertices);
  CredalSet(SpacePtr space, const std::vector<std::vector<double>>& vertex_weights);

  static CredalSet singleton(Distribution mu);

  const SpacePtr& space() const noexcept { return space_; }
  const std::vector<Distribution>& vertices() const noexcept { return vertices_; }
  const Distribution& vertex(std::size_t i) const { return vertices_.at(i); }
  std::size_t size() const noexcept { return vertices_.size(); }
  std::size_t dimension() const noexcept { return space_->size(); }

  /// Copy with one more vertex (dropped again if it duplicates one).
  CredalSet with_vertex(Distribution v) const;

  /// Union of vertex supports.
  std::vector<bool> support_mask() const;

 private:
  SpacePtr space_;
  std::vector<Distribution> vertices_;
};

/// Point of the probability simplex used to address hull members.
class MixtureWeights {
 public:
  /// Entries in (-1e-12, 0) are clamped to 0; throws InvalidMixtureWeights if
  /// an entry is more negative or the sum is off by more than 1e-12.
  explicit MixtureWeights(std::vector<double> coefficients);

  static MixtureWeights uniform(std::size_t k);
  static MixtureWeights indicator(std::size_t k, std::size_t index);

  std::span<const double> coefficients() const noexcept { return coefficients_; }
  std::size_t size() const noexcept { return coefficients_.size(); }
  double operator[](std::size_t i) const noexcept { return coefficients_[i]; }

 private:
  std::vector<double> coefficients_;
};

/// sum_k weights_k * vertex_k. Throws LengthMismatch.
Distribution mixture(const MixtureWeights& weights, const CredalSet& set);

/// Raw mixture without constructing a Distribution.
std::vector<double> mixture_point(std::span<const double> weights, const CredalSet& set);

/// Pairwise midpoints (v_i + w_j) / 2, deduplicated and sorted in descending
/// lexicographic order so the result does not depend on argument order.
/// Throws SpaceMismatch.
CredalSet minkowski_average(const CredalSet& p, const CredalSet& q);

/// lambda * P + (1 - lambda) * Q over all vertex pairs. Throws SpaceMismatch
/// and InvalidArgument for lambda outside [0, 1].
CredalSet set_mixture(const CredalSet& p, const CredalSet& q, double lambda);

}  // namespace credal
