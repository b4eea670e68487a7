#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "credal/classical.hpp"
#include "credal/frank_wolfe.hpp"
#include "credal/random.hpp"

using namespace credal;

namespace {

/// f(q) = 0.5 |q - c|^2
struct Quadratic {
  std::vector<double> c;

  void gradient(std::span<const double> q, std::span<double> g) const {
    for (std::size_t i = 0; i < q.size(); ++i) g[i] = q[i] - c[i];
  }
  double slope(std::span<const double> q, std::span<const double> dq) const {
    double s = 0;
    for (std::size_t i = 0; i < q.size(); ++i) s += (q[i] - c[i]) * dq[i];
    return s;
  }
  double value(std::span<const double> q) const {
    double s = 0;
    for (std::size_t i = 0; i < q.size(); ++i) s += 0.5 * (q[i] - c[i]) * (q[i] - c[i]);
    return s;
  }
};

/// Euclidean projection onto the simplex by the sort-and-threshold rule.
std::vector<double> project_to_simplex(std::vector<double> y) {
  std::vector<double> u = y;
  std::sort(u.rbegin(), u.rend());
  double css = 0, theta = 0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    css += u[j];
    const double t = (css - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0) theta = t;
  }
  for (double& x : y) x = std::max(0.0, x - theta);
  return y;
}

std::vector<std::vector<double>> identity(std::size_t n) {
  std::vector<std::vector<double>> cols(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) cols[i][i] = 1.0;
  return cols;
}

std::vector<double> combine(const std::vector<std::vector<double>>& cols,
                            const std::vector<double>& w) {
  std::vector<double> q(cols[0].size(), 0.0);
  for (std::size_t k = 0; k < cols.size(); ++k)
    for (std::size_t i = 0; i < q.size(); ++i) q[i] += w[k] * cols[k][i];
  return q;
}

}  // namespace

TEST_CASE("projection onto the simplex, optimum on a face") {
  SplitMix64 rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng.next() % 6;
    std::vector<double> c(n);
    for (double& x : c) x = 2.0 * rng.uniform() - 0.5;
    const Quadratic f{c};
    const FrankWolfeResult r = minimize_on_simplex(identity(n), f, 1e-12);
    CHECK(r.converged);
    const std::vector<double> exact = project_to_simplex(c);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::fabs(r.weights[i] - exact[i]) <= 1e-5);
    CHECK(f.value(r.weights) - f.value(exact) <= r.gap + 1e-15);
  }
}

TEST_CASE("weights stay on the simplex") {
  const FrankWolfeResult r = minimize_on_simplex(identity(4), Quadratic{{1, 0, 0, 0}}, 1e-12);
  double sum = 0;
  for (double w : r.weights) {
    CHECK(w >= 0.0);
    sum += w;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.weights[0] == doctest::Approx(1.0));
}

TEST_CASE("KL to a two-column mixture matches a dense 1-D search") {
  SplitMix64 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3;
    const CredalSet cols = gen_random_credal(rng.next(), n, 2, 0.05);
    const CredalSet target = gen_random_credal(rng.next(), n, 1, 0.0);
    std::vector<std::vector<double>> columns;
    for (const auto& v : cols.vertices()) columns.emplace_back(v.weights().begin(), v.weights().end());
    const auto mu = target.vertex(0).weights();
    const FrankWolfeResult r = minimize_on_simplex(columns, KlToMixture{mu}, 1e-10);
    CHECK(r.converged);
    const double fw = kl_vectors(mu, combine(columns, r.weights)).value();

    double best = 1e300;
    for (int k = 0; k <= 200000; ++k) {
      const double t = k / 200000.0;
      best = std::min(best, kl_vectors(mu, combine(columns, {t, 1 - t})).value());
    }
    CHECK(fw <= best + 1e-9);
    CHECK(best - fw <= 1e-8);
  }
}

TEST_CASE("gap bounds the suboptimality of the KL objective") {
  SplitMix64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const CredalSet cols = gen_random_credal(rng.next(), 4, 3, 0.02);
    const CredalSet target = gen_random_credal(rng.next(), 4, 1, 0.0);
    std::vector<std::vector<double>> columns;
    for (const auto& v : cols.vertices()) columns.emplace_back(v.weights().begin(), v.weights().end());
    const auto mu = target.vertex(0).weights();
    const FrankWolfeResult coarse = minimize_on_simplex(columns, KlToMixture{mu}, 1e-3);
    const FrankWolfeResult fine = minimize_on_simplex(columns, KlToMixture{mu}, 1e-12);
    const double vc = kl_vectors(mu, combine(columns, coarse.weights)).value();
    const double vf = kl_vectors(mu, combine(columns, fine.weights)).value();
    CHECK(vc - vf <= coarse.gap + 1e-12);
    CHECK(vf <= vc + 1e-12);
  }
}

TEST_CASE("iteration cap is reported") {
  std::vector<double> c{0.3, 0.3, 0.4};
  const FrankWolfeResult r = minimize_on_simplex(identity(3), Quadratic{c}, 0.0, 3);
  CHECK(r.iterations <= 3);
  CHECK_FALSE(r.converged);
}
