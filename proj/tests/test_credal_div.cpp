#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "credal/credal_div.hpp"
#include "credal/error.hpp"
#include "credal/oracle.hpp"
#include "credal/random.hpp"

using namespace credal;

namespace {

using Rows = std::vector<std::vector<double>>;

const SpacePtr kTwo = make_line_space(2);

CredalSet set2(const Rows& rows) { return CredalSet(kTwo, rows); }
Distribution d2(double a, double b) { return Distribution(kTwo, {a, b}); }

constexpr double kKl91 = 0.3680642071684971;  // KL((0.9,0.1) || (0.5,0.5))
constexpr double kKl82 = 0.19274475702175753;  // KL((0.8,0.2) || (0.5,0.5))

}  // namespace

TEST_CASE("sublinear expectation") {
  const SublinearValue a = sublinear_expectation(set2({{0.3, 0.7}}), TestFunction({2, 4}));
  CHECK(a.value == doctest::Approx(0.3 * 2 + 0.7 * 4));
  const SublinearValue b = sublinear_expectation(set2({{1, 0}, {0, 1}}), TestFunction({3, 5}));
  CHECK(b.value == 5.0);
  CHECK(b.witness == 1);
  const SublinearValue c = sublinear_expectation(set2({{0.2, 0.8}, {0.7, 0.3}}), TestFunction({1, -1}));
  CHECK(c.value == doctest::Approx(0.4));
  CHECK(c.witness == 1);
  // Ties go to the lowest index.
  CHECK(sublinear_expectation(set2({{0.5, 0.5}, {0.2, 0.8}}), TestFunction({1, 1})).witness == 0);
  CHECK_THROWS_AS(sublinear_expectation(set2({{1, 0}}), TestFunction({1, 1, 1})), Error);
}

TEST_CASE("inner KL") {
  const CredalSet q = set2({{0.25, 0.75}, {0.75, 0.25}});
  const SolverReport at_vertex = inf_kl_to_hull(d2(0.75, 0.25), q);
  CHECK(at_vertex.value.value() <= 1e-9);
  CHECK((*at_vertex.witness_inner)[1] == doctest::Approx(1.0).epsilon(1e-4));

  const SolverReport mid = inf_kl_to_hull(d2(0.5, 0.5), q);
  CHECK(mid.value.value() <= 1e-9);
  CHECK((*mid.witness_inner)[0] == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(mid.gap <= kDefaultTolerance);

  const SolverReport inf = inf_kl_to_hull(d2(1, 0), set2({{0, 1}}));
  CHECK(inf.value.is_infinite());
  CHECK_FALSE(inf.witness_inner.has_value());
  const SpacePtr s3 = make_plain_space(3);
  const CredalSet q3(s3, Rows{{0, 0.5, 0.5}, {0, 0.6, 0.4}});
  CHECK(inf_kl_to_hull(Distribution(s3, {1, 0, 0}), q3).value.is_infinite());

  // Union of supports is enough even when no single vertex covers mu.
  const CredalSet split(s3, Rows{{1, 0, 0}, {0, 0.5, 0.5}});
  const SolverReport r = inf_kl_to_hull(Distribution(s3, {0.2, 0.4, 0.4}), split);
  CHECK(r.value.value() <= 1e-9);
}

TEST_CASE("gkl examples") {
  const CredalSet q = set2({{0.25, 0.75}, {0.75, 0.25}});
  CHECK(gkl(set2({{0.5, 0.5}, {0.3, 0.7}}), q).value.value() <= 1e-9);
  const SolverReport r = gkl(set2({{0.9, 0.1}, {0.8, 0.2}}), set2({{0.5, 0.5}}));
  CHECK(r.value.value() == doctest::Approx(kKl91).epsilon(1e-12));
  CHECK(r.witness_outer == 0);
  CHECK(gkl(set2({{0.5, 0.5}}), q).value.value() <= 1e-9);
  CHECK(gkl(set2({{1, 0}}), set2({{0, 1}})).value.is_infinite());
  CHECK_THROWS_AS(gkl(set2({{1, 0}}), CredalSet(make_line_space(3), Rows{{1, 0, 0}})), Error);
}

TEST_CASE("kl_star examples") {
  CHECK(kl_star(set2({{0.9, 0.1}, {0.1, 0.9}}), set2({{0.5, 0.5}})).value.value() <= 1e-9);
  CHECK(kl_star(set2({{0.9, 0.1}}), set2({{0.5, 0.5}})).value.value() ==
        doctest::Approx(kKl91).epsilon(1e-9));
  const SolverReport r = kl_star(set2({{0.9, 0.1}, {0.8, 0.2}}), set2({{0.5, 0.5}}));
  CHECK(r.value.value() == doctest::Approx(kKl82).epsilon(1e-8));
  CHECK(r.witness_outer == 1);
  REQUIRE(r.witness_outer_weights.has_value());
  CHECK((*r.witness_outer_weights)[1] == doctest::Approx(1.0).epsilon(1e-6));
  // Strict inequality with gkl on the same pair.
  CHECK(gkl(set2({{0.9, 0.1}, {0.8, 0.2}}), set2({{0.5, 0.5}})).value.value() > r.value.value() + 0.1);
  CHECK(kl_star(set2({{1, 0}}), set2({{0, 1}})).value.is_infinite());
}

TEST_CASE("gjs examples") {
  const CredalSet p = set2({{0.9, 0.1}, {0.6, 0.4}});
  CHECK(gjs(p, p) <= 1e-9);
  CHECK(gjs(set2({{1, 0}}), set2({{0, 1}})) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(gjs(set2({{0.9, 0.1}}), set2({{0.5, 0.5}})) ==
        doctest::Approx(0.10174922507919676).epsilon(1e-10));
  const GjsReport r = gjs_report(p, set2({{0.5, 0.5}}));
  CHECK(r.value == doctest::Approx(0.5 * r.p_to_mid.value.value() + 0.5 * r.q_to_mid.value.value()));
}

TEST_CASE("TV examples") {
  CHECK(inf_tv_to_hull(d2(0.4, 0.6), set2({{1, 0}, {0, 1}})).value.value() <= 1e-12);
  CHECK(inf_tv_to_hull(d2(1, 0), set2({{0.5, 0.5}})).value.value() == doctest::Approx(0.5));
  const SpacePtr s3 = make_plain_space(3);
  CHECK(inf_tv_to_hull(Distribution(s3, {1, 0, 0}), CredalSet(s3, Rows{{0, 1, 0}, {0, 0, 1}}))
            .value.value() == doctest::Approx(1.0));

  const SolverReport d = directed_tv(set2({{0.9, 0.1}, {0.8, 0.2}}), set2({{0.5, 0.5}}));
  CHECK(d.value.value() == doctest::Approx(0.4));
  CHECK(d.witness_outer == 0);
  CHECK(directed_tv(set2({{0.5, 0.5}}), set2({{1, 0}, {0, 1}})).value.value() <= 1e-12);

  CHECK(gtv(set2({{0.2, 0.8}, {0.7, 0.3}}), set2({{0.2, 0.8}, {0.7, 0.3}})) <= 1e-12);
  CHECK(gtv(set2({{0.9, 0.1}}), set2({{0.5, 0.5}})) == doctest::Approx(0.4));
  CHECK(gtv(set2({{1, 0}, {0, 1}}), set2({{0.5, 0.5}})) == doctest::Approx(0.5));
  CHECK(gtv(set2({{0.5, 0.5}}), set2({{1, 0}, {0, 1}})) == doctest::Approx(0.5));
}

TEST_CASE("directed TV with Q strictly inside P matches the grid oracle") {
  // Q = {(0.4,0.6),(0.6,0.4)} inside P = {(0.1,0.9),(0.5,0.5),(0.9,0.1)}.
  const CredalSet p = set2({{0.1, 0.9}, {0.5, 0.5}, {0.9, 0.1}});
  const CredalSet q = set2({{0.4, 0.6}, {0.6, 0.4}});
  CHECK(directed_tv(q, p).value.value() <= 1e-12);
  const double forward = directed_tv(p, q).value.value();
  double oracle = 0.0;
  for (const auto& v : p.vertices()) {
    oracle = std::max(oracle, grid_oracle_inner(v, q, InnerObjective::tv, 0.005));
  }
  CHECK(forward == doctest::Approx(0.3));
  CHECK(std::fabs(forward - oracle) <= 1e-2);
  // An extra vertex of P inside Q leaves this direction at zero.
  CHECK(directed_tv(set2({{0.45, 0.55}}), q).value.value() <= 1e-12);
}

TEST_CASE("Wasserstein examples") {
  CHECK(inf_wasserstein_to_hull(d2(0.3, 0.7), set2({{1, 0}, {0, 1}}), 1.0).value.value() <= 1e-12);
  CHECK(inf_wasserstein_to_hull(d2(0.9, 0.1), set2({{0.5, 0.5}}), 1.0).value.value() ==
        doctest::Approx(0.4));
  CHECK(inf_wasserstein_to_hull(d2(0.9, 0.1), set2({{0.6, 0.4}, {0.2, 0.8}}), 1.0).value.value() ==
        doctest::Approx(0.3));
  CHECK(gwasserstein(set2({{0.3, 0.7}}), set2({{0.3, 0.7}}), 2.0) <= 1e-12);
  CHECK(gwasserstein(set2({{0.9, 0.1}}), set2({{0.5, 0.5}}), 2.0) ==
        doctest::Approx(std::sqrt(0.4)));
  CHECK(gwasserstein(set2({{1, 0}, {0, 1}}), set2({{0.5, 0.5}}), 1.0) == doctest::Approx(0.5));
  const CredalSet plain(make_plain_space(2), Rows{{1, 0}});
  try {
    gwasserstein(plain, plain, 1.0);
    FAIL("expected NoMetric");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoMetric);
  }
}

TEST_CASE("kl_bar") {
  const CredalSet p = set2({{0.9, 0.1}, {0.6, 0.4}});
  const KlBarValue same = kl_bar(p, p);
  CHECK(same.total.value() <= 2e-9);
  const KlBarValue v = kl_bar(set2({{0.9, 0.1}}), set2({{0.5, 0.5}}));
  CHECK(v.forward.value() == doctest::Approx(kKl91).epsilon(1e-12));
  CHECK(v.backward.value() == doctest::Approx(0.5108256237659907).epsilon(1e-12));
  CHECK(v.total.value() == doctest::Approx(0.8788898309344877).epsilon(1e-12));
  // Strict inclusion: forward vanishes, backward does not.
  const KlBarValue inc = kl_bar(set2({{0.5, 0.5}}), set2({{0.9, 0.1}, {0.1, 0.9}}));
  CHECK(inc.forward.value() <= 1e-9);
  CHECK(inc.backward.value() > 0.1);
  CHECK(inc.backward.value() ==
        doctest::Approx(grid_oracle_inner(d2(0.9, 0.1), set2({{0.5, 0.5}}), InnerObjective::kl, 0.01)));
  CHECK(kl_bar(set2({{1, 0}}), set2({{0.5, 0.5}})).total.is_infinite());
}

TEST_CASE("witnesses reproduce the reported values") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 2 + seed % 5;
    const CredalSet p = gen_random_credal(seed, n, 3, 0.01);
    const CredalSet q = gen_random_credal(seed + 1000, n, 2, 0.01);
    const SolverReport k = gkl(p, q);
    CHECK(k.status == SolveStatus::converged);
    CHECK(k.gap <= kDefaultTolerance);
    CHECK(std::fabs(kl(p.vertex(k.witness_outer), mixture(*k.witness_inner, q)).value() -
                    k.value.value()) <= k.gap + 1e-12);
    const SolverReport t = directed_tv(p, q);
    CHECK(std::fabs(tv(p.vertex(t.witness_outer), mixture(*t.witness_inner, q)) - t.value.value()) <=
          t.gap + 1e-12);
    const SolverReport w = directed_wasserstein(p, q, 2.0);
    CHECK(std::fabs(wasserstein(p.vertex(w.witness_outer), mixture(*w.witness_inner, q), 2.0) -
                    w.value.value()) <= 1e-8);
    const SolverReport s = kl_star(p, q);
    CHECK(s.gap <= kDefaultTolerance);
    CHECK(std::fabs(kl(mixture(*s.witness_outer_weights, p), mixture(*s.witness_inner, q)).value() -
                    s.value.value()) <= s.gap + 1e-12);
  }
}

TEST_CASE("outer maxima are attained at vertices") {
  // Interior points of P never exceed the vertex maximum.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const CredalSet p = gen_random_credal(seed, 3, 3, 0.02);
    const CredalSet q = gen_random_credal(seed + 50, 3, 2, 0.02);
    const double vmax = gkl(p, q).value.value();
    const double tmax = directed_tv(p, q).value.value();
    SplitMix64 rng(seed);
    for (int s = 0; s < 20; ++s) {
      const Distribution mu = mixture(MixtureWeights(sample_dirichlet(rng, p.size())), p);
      CHECK(inf_kl_to_hull(mu, q).value.value() <= vmax + 1e-9);
      CHECK(inf_tv_to_hull(mu, q).value.value() <= tmax + 1e-9);
    }
  }
}

TEST_CASE("hull containment characterization and exterior vertices") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const CredalSet q = gen_random_credal(seed, 3, 3, 0.1);
    SplitMix64 rng(seed + 7);
    std::vector<Distribution> inside;
    for (int s = 0; s < 3; ++s) inside.push_back(mixture(MixtureWeights(sample_dirichlet(rng, 3)), q));
    const CredalSet p(q.space(), inside);
    CHECK(gkl(p, q).value.value() <= 1e-6);
    // Every vertex of Q has weights >= 0.1, so (0.98, 0.01, 0.01) is outside.
    const CredalSet outside = p.with_vertex(Distribution(q.space(), {0.98, 0.01, 0.01}));
    CHECK(gkl(outside, q).value.value() >= gkl(p, q).value.value() + 1e-3);
    CHECK_FALSE(hull_contains(q, outside.vertex(outside.size() - 1), 1e-9));
  }
}

TEST_CASE("serial and parallel outer loops agree exactly") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const CredalSet p = gen_random_credal(seed, 4, 4, 0.0);
    const CredalSet q = gen_random_credal(seed + 9, 4, 3, 0.0);
    const SolverReport a = gkl(p, q, kDefaultTolerance, Execution::serial);
    const SolverReport b = gkl(p, q, kDefaultTolerance, Execution::parallel);
    CHECK(a.value == b.value);
    CHECK(a.witness_outer == b.witness_outer);
    CHECK(a.iterations == b.iterations);
    CHECK(gtv(p, q, Execution::serial) == gtv(p, q, Execution::parallel));
    CHECK(gjs(p, q, kDefaultTolerance, Execution::serial) ==
          gjs(p, q, kDefaultTolerance, Execution::parallel));
  }
}
