#include "credal/random.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "credal/error.hpp"

namespace credal {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t SplitMix64::next() noexcept {
  state_ += kGolden;
  return mix(state_);
}

double SplitMix64::uniform() noexcept {
  // 53 random bits, shifted by half an ulp so 0 is never produced.
  return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

SplitMix64 SplitMix64::stream(std::uint64_t index) const noexcept {
  return SplitMix64(mix(state_ ^ mix(index + kGolden)));
}

std::vector<double> sample_dirichlet(SplitMix64& rng, std::size_t n) {
  std::vector<double> g(n);
  double sum = 0.0;
  for (double& x : g) {
    x = -std::log(rng.uniform());
    sum += x;
  }
  for (double& x : g) x /= sum;
  return g;
}

CredalSet gen_random_credal(std::uint64_t seed, std::size_t n, std::size_t k, double min_weight,
                            SpacePtr space) {
  if (n == 0 || k == 0) fail(ErrorCode::InvalidArgument, "n and k must be at least 1");
  if (!(min_weight >= 0.0) || min_weight * static_cast<double>(n) > 1.0 + 1e-12) {
    fail(ErrorCode::InfeasibleMinWeight,
         "min_weight " + std::to_string(min_weight) + " is infeasible for n = " + std::to_string(n));
  }
  if (!space) space = make_line_space(n);
  if (space->size() != n) fail(ErrorCode::LengthMismatch, "space size does not match n");

  const double free_mass = std::max(0.0, 1.0 - static_cast<double>(n) * min_weight);
  SplitMix64 root(seed);
  std::vector<std::vector<double>> rows;
  rows.reserve(k);
  for (std::size_t v = 0; v < k; ++v) {
    SplitMix64 rng = root.stream(v);
    std::vector<double> w = sample_dirichlet(rng, n);
    for (double& x : w) x = min_weight + free_mass * x;
    rows.push_back(std::move(w));
  }
  return CredalSet(std::move(space), rows);
}

SpacePtr gen_random_metric_space(std::uint64_t seed, std::size_t n) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "n must be at least 1");
  SplitMix64 rng(seed);
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = rng.uniform();
    ys[i] = rng.uniform();
  }
  Matrix d(n, n);
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = "x" + std::to_string(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) d(i, j) = std::hypot(xs[i] - xs[j], ys[i] - ys[j]);
    }
  }
  return make_space(std::move(labels), std::move(d));
}

}  // namespace credal
