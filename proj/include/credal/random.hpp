#pragma once

#include <cstddef>
#include <cstdint>

#include "credal/core_model.hpp"

namespace credal {

/// SplitMix64: the state is a counter advanced by a fixed odd increment, and
/// each output is a bijective mix of the counter. Streams are derived with
/// split(), so every random object is a pure function of its seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept;

  /// Uniform double in the open interval (0, 1).
  double uniform() noexcept;

  /// Independent child stream; advances this one by a single draw.
  SplitMix64 split() noexcept { return SplitMix64(next() ^ 0x6a09e667f3bcc909ULL); }

  /// Child stream for item `index`, without advancing this one.
  SplitMix64 stream(std::uint64_t index) const noexcept;

 private:
  std::uint64_t state_;
};

/// Flat Dirichlet sample on n points.
std::vector<double> sample_dirichlet(SplitMix64& rng, std::size_t n);

/// k vertices w = min_weight + (1 - n min_weight) * d with d flat Dirichlet,
/// so every weight is at least min_weight and the sum is exactly one up to
/// rounding. Vertices live on `space` (the line 0..n-1 when null).
/// Throws InvalidArgument for n or k equal to zero and InfeasibleMinWeight
/// when n * min_weight > 1 or min_weight < 0.
CredalSet gen_random_credal(std::uint64_t seed, std::size_t n, std::size_t k, double min_weight,
                            SpacePtr space = nullptr);

/// n points drawn uniformly in the unit square with Euclidean distances.
SpacePtr gen_random_metric_space(std::uint64_t seed, std::size_t n);

}  // namespace credal
