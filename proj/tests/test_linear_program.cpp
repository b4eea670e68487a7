#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "credal/error.hpp"
#include "credal/linear_program.hpp"
#include "credal/random.hpp"

using namespace credal;

namespace {

LinearProgram make_lp(const std::vector<std::vector<double>>& a, std::vector<double> b,
                      std::vector<double> c) {
  return LinearProgram{Matrix::from_rows(a), std::move(b), std::move(c)};
}

}  // namespace

TEST_CASE("small textbook problem") {
  // min -x1 - 2x2  s.t.  x1 + x2 + s1 = 4,  x1 + 3x2 + s2 = 6
  // optimum at x1 = 3, x2 = 1 with value -5.
  const LpSolution s = solve_lp(make_lp({{1, 1, 1, 0}, {1, 3, 0, 1}}, {4, 6}, {-1, -2, 0, 0}));
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective == doctest::Approx(-5.0).epsilon(1e-12));
  CHECK(s.primal[0] == doctest::Approx(3.0));
  CHECK(s.primal[1] == doctest::Approx(1.0));
  CHECK(s.dual_objective == doctest::Approx(-5.0).epsilon(1e-12));
  CHECK(s.gap() <= 1e-12);
  // Duals of the two rows: y = (-0.5, -0.5).
  CHECK(s.dual[0] == doctest::Approx(-0.5));
  CHECK(s.dual[1] == doctest::Approx(-0.5));
}

TEST_CASE("negative right-hand sides are flipped, duals refer to the original rows") {
  // -x1 - x2 = -1, min x1 + 2 x2 -> x1 = 1, dual y = -1
  const LpSolution s = solve_lp(make_lp({{-1, -1}}, {-1}, {1, 2}));
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective == doctest::Approx(1.0));
  CHECK(s.dual[0] == doctest::Approx(-1.0));
}

TEST_CASE("infeasible and unbounded") {
  CHECK(solve_lp(make_lp({{1, 1}, {1, 1}}, {1, 2}, {0, 0})).status == LpStatus::infeasible);
  CHECK(solve_lp(make_lp({{1, -1}}, {1}, {0, -1})).status == LpStatus::unbounded);
  CHECK_THROWS_AS(solve_lp_or_throw(make_lp({{1, 1}, {1, 1}}, {1, 2}, {0, 0}), "test"), Error);
}

TEST_CASE("redundant rows are tolerated") {
  // Transport-style system where the last row is implied by the others.
  const LpSolution s = solve_lp(make_lp({{1, 1, 0, 0}, {0, 0, 1, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}},
                                        {0.5, 0.5, 0.3, 0.7}, {0, 1, 1, 0}));
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(s.gap() <= 1e-12);
  CHECK(s.dual_infeasibility <= 1e-12);
}

TEST_CASE("degenerate problems terminate") {
  // Many ties in the ratio test; Bland's rule must not cycle.
  const LpSolution s = solve_lp(make_lp({{1, 1, 1, 1, 1, 0}, {1, -1, 1, -1, 0, 1}}, {0, 0},
                                        {-1, -1, -1, -1, 0, 0}));
  CHECK(s.status != LpStatus::iteration_limit);
}

TEST_CASE("random feasible LPs satisfy strong duality") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = 2 + rng.next() % 4;
    const std::size_t n = m + 2 + rng.next() % 4;
    std::vector<std::vector<double>> a(m, std::vector<double>(n));
    std::vector<double> x(n), b(m, 0.0), c(n);
    for (auto& xi : x) xi = rng.uniform();
    for (auto& ci : c) ci = rng.uniform();  // c >= 0 keeps the problem bounded
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] = 2.0 * rng.uniform() - 1.0;
        b[r] += a[r][j] * x[j];
      }
    }
    const LinearProgram lp = make_lp(a, b, c);
    const LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::optimal);
    CHECK(s.objective <= c[0] * x[0] + 1e-12 + [&] {
      double v = 0;
      for (std::size_t j = 1; j < n; ++j) v += c[j] * x[j];
      return v;
    }());
    CHECK(std::fabs(s.objective - s.dual_objective) <= 1e-9);
    CHECK(s.dual_infeasibility <= 1e-9);
    for (std::size_t r = 0; r < m; ++r) {
      double lhs = 0;
      for (std::size_t j = 0; j < n; ++j) lhs += a[r][j] * s.primal[j];
      CHECK(lhs == doctest::Approx(b[r]).epsilon(1e-9));
    }
    for (double v : s.primal) CHECK(v >= -1e-12);
  }
}
