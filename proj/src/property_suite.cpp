#include "credal/property_suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "credal/convergence.hpp"
#include "credal/duality.hpp"
#include "credal/error.hpp"
#include "credal/oracle.hpp"
#include "credal/random.hpp"

namespace credal {

namespace {

constexpr double kMinWeight = 0.05;

/// Accumulates margins for the named properties of a single trial.
class TrialLog {
 public:
  explicit TrialLog(std::size_t trial) : trial_(trial) {}

  void check(const std::string& name, double margin) {
    Entry& e = entries_[name];
    ++e.cases;
    if (std::isnan(margin)) margin = -std::numeric_limits<double>::infinity();
    e.worst = std::min(e.worst, margin);
    if (margin < 0.0) {
      ++e.failures;
      if (e.first_failure.empty()) {
        std::ostringstream os;
        os << "trial " << trial_ << ": margin " << margin;
        e.first_failure = os.str();
      }
    }
  }

  void check(const std::string& name, bool ok) { check(name, ok ? 0.0 : -1.0); }

  struct Entry {
    std::size_t cases = 0;
    std::size_t failures = 0;
    double worst = std::numeric_limits<double>::infinity();
    std::string first_failure;
  };

  const std::map<std::string, Entry>& entries() const noexcept { return entries_; }

 private:
  std::size_t trial_;
  std::map<std::string, Entry> entries_;
};

double finite_or(ExtendedReal x, double fallback) {
  return x.is_finite() ? x.value() : fallback;
}

Distribution random_member(SplitMix64& rng, const CredalSet& set) {
  return mixture(MixtureWeights(sample_dirichlet(rng, set.size())), set);
}

Distribution random_vertex(SplitMix64& rng, const SpacePtr& space) {
  std::vector<double> w = sample_dirichlet(rng, space->size());
  const double free_mass = 1.0 - static_cast<double>(space->size()) * kMinWeight;
  for (double& x : w) x = kMinWeight + free_mass * x;
  return Distribution(space, std::move(w));
}

/// P with coordinate 0 removed from its first vertex, so KL into P can be
/// infinite.
CredalSet degenerate_copy(const CredalSet& p) {
  std::vector<Distribution> vs = p.vertices();
  std::vector<double> w(vs[0].weights().begin(), vs[0].weights().end());
  const double rest = 1.0 - w[0];
  w[0] = 0.0;
  for (std::size_t i = 1; i < w.size(); ++i) w[i] /= rest;
  vs[0] = Distribution(p.space(), std::move(w));
  return CredalSet(p.space(), std::move(vs));
}

void run_trial(const PropertyConfig& cfg, std::size_t trial, TrialLog& log) {
  const double tol = cfg.tol;
  const Execution ex = Execution::serial;
  const TrialInstance inst = make_trial_instance(cfg.seed, trial);
  const CredalSet& p = inst.p;
  const CredalSet& q = inst.q;
  SplitMix64 rng = SplitMix64(cfg.seed ^ 0x5bd1e995ULL).stream(trial);

  const SolverReport pq = gkl(p, q, tol, ex);
  const SolverReport qp = gkl(q, p, tol, ex);
  const double tv_pq = gtv(p, q, ex);
  const double js_pq = gjs(p, q, tol, ex);
  const double js_qp = gjs(q, p, tol, ex);

  // Nonnegativity, including a pair with a support hole.
  const CredalSet pd = degenerate_copy(p);
  for (const auto* pair : {&p, &pd}) {
    log.check("nonnegativity", finite_or(gkl(*pair, q, tol, ex).value, 0.0) + 1e-12);
    log.check("nonnegativity", finite_or(gkl(q, *pair, tol, ex).value, 0.0) + 1e-12);
    log.check("nonnegativity", gjs(*pair, q, tol, ex) + 1e-12);
    log.check("nonnegativity", gtv(*pair, q, ex) + 1e-12);
    log.check("nonnegativity", gwasserstein(*pair, q, 1.0, ex) + 1e-12);
  }

  // Singleton reduction.
  {
    const CredalSet sp = CredalSet::singleton(p.vertex(0));
    const CredalSet sq = CredalSet::singleton(q.vertex(0));
    const double k = kl(p.vertex(0), q.vertex(0)).value();
    log.check("singleton_reduction", 1e-10 - std::fabs(gkl(sp, sq, tol, ex).value.value() - k));
    log.check("singleton_reduction",
              1e-10 - std::fabs(gjs(sp, sq, tol, ex) - js(p.vertex(0), q.vertex(0))));
    log.check("singleton_reduction",
              1e-10 - std::fabs(gtv(sp, sq, ex) - tv(p.vertex(0), q.vertex(0))));
    log.check("singleton_reduction",
              1e-10 - std::fabs(gwasserstein(sp, sq, 1.0, ex) -
                                wasserstein(p.vertex(0), q.vertex(0), 1.0)));
  }

  // Characterization: vertices inside the hull of Q give zero, and for the
  // random pair containment and a vanishing divergence agree.
  CredalSet inside = CredalSet::singleton(random_member(rng, q));
  inside = inside.with_vertex(random_member(rng, q));
  {
    const SolverReport r = gkl(inside, q, tol, ex);
    log.check("characterization", 1e-6 - r.value.value());
    bool contained = true;
    for (const auto& v : inside.vertices()) contained = contained && hull_contains(q, v, 1e-9);
    log.check("characterization", contained);

    bool all_in = true;
    for (const auto& v : p.vertices()) all_in = all_in && hull_contains(q, v, 1e-9);
    log.check("characterization", all_in == (pq.value.value() <= 1e-6));
  }

  // Identity of indiscernibles: a reordered copy of Q with an interior point.
  {
    std::vector<Distribution> vs(q.vertices().rbegin(), q.vertices().rend());
    vs.push_back(random_member(rng, q));
    const CredalSet q2(q.space(), std::move(vs));
    log.check("indiscernibles", 1e-6 - gkl(q2, q, tol, ex).value.value());
    log.check("indiscernibles", 1e-6 - gkl(q, q2, tol, ex).value.value());
    log.check("indiscernibles", 1e-6 - gtv(q, q2, ex));
    const bool kl_zero = pq.value.value() <= 1e-6 && qp.value.value() <= 1e-6;
    log.check("indiscernibles", kl_zero == (tv_pq <= 1e-6));
  }

  // Monotonicity under vertex appends.
  {
    const Distribution extra = random_vertex(rng, q.space());
    const double bigger_q = gkl(p, q.with_vertex(extra), tol, ex).value.value();
    log.check("monotonicity", pq.value.value() + 2.0 * tol - bigger_q);
    const double bigger_p = gkl(p.with_vertex(extra), q, tol, ex).value.value();
    log.check("monotonicity", bigger_p - pq.value.value() + 2.0 * tol);
    const ExtendedReal deg = gkl(q, pd, tol, ex).value;
    const ExtendedReal deg_more = gkl(q.with_vertex(extra), pd, tol, ex).value;
    if (deg.is_infinite()) {
      log.check("monotonicity", deg_more.is_infinite());
    } else if (deg_more.is_finite()) {
      log.check("monotonicity", deg_more.value() - deg.value() + 2.0 * tol);
    } else {
      log.check("monotonicity", true);
    }
  }

  // JS symmetry and range.
  log.check("js_symmetry_range", 2.0 * tol - std::fabs(js_pq - js_qp));
  log.check("js_symmetry_range", js_pq);
  log.check("js_symmetry_range", std::log(2.0) + 1e-6 - js_pq);
  log.check("js_symmetry_range", 1e-8 - gjs(p, p, tol, ex));
  {
    const double jd = gjs(pd, q, tol, ex);
    log.check("js_symmetry_range", std::log(2.0) + 1e-6 - jd);
    log.check("js_symmetry_range", 2.0 * tol - std::fabs(jd - gjs(q, pd, tol, ex)));
  }

  // sup-inf dominates inf-inf.
  {
    const SolverReport star = kl_star(p, q, tol);
    log.check("gkl_dominates_kl_star", pq.value.value() - star.value.value() + 2.0 * tol);
  }

  // Generalized Pinsker, finite and infinite cases.
  log.check("pinsker", pinsker_residual(p, q, tol, ex) + 1e-6);
  log.check("pinsker", pinsker_residual(pd, q, tol, ex) + 1e-6);

  // Convexity of set mixtures.
  {
    const TrialInstance other = make_trial_instance(cfg.seed ^ 0xc2b2ae3d27d4eb4fULL, trial);
    if (same_space(other.p.space(), p.space())) {
      const double a = pq.value.value();
      const double b = gkl(other.p, other.q, tol, ex).value.value();
      for (double lambda : {0.25, 0.5, 0.75}) {
        const double mixed = gkl(set_mixture(p, other.p, lambda), set_mixture(q, other.q, lambda),
                                 tol, ex).value.value();
        log.check("convexity", lambda * a + (1.0 - lambda) * b + 1e-5 - mixed);
      }
    }
  }

  // Weak duality and shift invariance over random test functions.
  {
    const double primal = pq.value.value();
    for (int s = 0; s < 500; ++s) {
      std::vector<double> phi(p.dimension());
      for (double& x : phi) x = 10.0 * rng.uniform() - 5.0;
      const double d = dual_kl_objective(p, q, TestFunction(phi));
      log.check("weak_duality", primal + 1e-9 - d);
      if (s < 20) {
        const double c = 200.0 * rng.uniform() - 100.0;
        std::vector<double> shifted = phi;
        for (double& x : shifted) x += c;
        log.check("shift_invariance",
                  1e-10 - std::fabs(dual_kl_objective(p, q, TestFunction(shifted)) - d));
        log.check("dual_below_zero_inside", 1e-9 - dual_kl_objective(inside, q, TestFunction(phi)));
      }
    }
  }

  // Strong duality.
  {
    const DualityCertificate klc = maximize_dual_kl(p, q, tol, ex);
    log.check("kl_strong_duality", kKlDualityGapTarget - std::fabs(klc.gap));
    const DualityCertificate tvc = maximize_dual_tv(p, q, ex);
    log.check("tv_duality_exact", kTvDualityGapTarget - std::fabs(tv_pq - tvc.dual));
  }

  // Witness validity.
  {
    const Distribution& mu = p.vertex(pq.witness_outer);
    const double at = kl(mu, mixture(*pq.witness_inner, q)).value();
    log.check("witness_validity", pq.gap + 1e-12 - std::fabs(at - pq.value.value()));
    const SolverReport t = directed_tv(p, q, ex);
    const double tv_at = tv(p.vertex(t.witness_outer), mixture(*t.witness_inner, q));
    log.check("witness_validity", t.gap + 1e-12 - std::fabs(tv_at - t.value.value()));
    const SolverReport w = directed_wasserstein(p, q, 1.0, ex);
    const double w_at = wasserstein(p.vertex(w.witness_outer), mixture(*w.witness_inner, q), 1.0);
    log.check("witness_validity", w.gap + 1e-9 - std::fabs(w_at - w.value.value()));
  }

  // Oracle agreement on small instances.
  if (p.dimension() <= 3 && q.size() <= 3) {
    for (const auto& mu : p.vertices()) {
      const double fw = inf_kl_to_hull(mu, q, tol).value.value();
      log.check("oracle_agreement", 5e-3 - std::fabs(fw - grid_oracle_inner(mu, q, InnerObjective::kl, 0.005)));
      const double lp = inf_tv_to_hull(mu, q).value.value();
      log.check("oracle_agreement", 1e-2 - std::fabs(lp - grid_oracle_inner(mu, q, InnerObjective::tv, 0.005)));
      const double w = inf_wasserstein_to_hull(mu, q, 1.0).value.value();
      log.check("oracle_agreement", 1e-2 - std::fabs(w - grid_oracle_inner(mu, q, InnerObjective::w1, 0.005)));
    }
  }
}

}  // namespace

TrialInstance make_trial_instance(std::uint64_t seed, std::size_t trial) {
  SplitMix64 rng = SplitMix64(seed).stream(trial);
  const std::size_t n = 2 + rng.next() % 3;
  const std::size_t kp = 1 + rng.next() % 3;
  const std::size_t kq = 1 + rng.next() % 3;
  const SpacePtr space = make_line_space(n);
  return TrialInstance{gen_random_credal(rng.next(), n, kp, kMinWeight, space),
                       gen_random_credal(rng.next(), n, kq, kMinWeight, space)};
}

std::vector<PropertyResult> run_property_suite(const PropertyConfig& config) {
  if (config.trials == 0) fail(ErrorCode::InvalidArgument, "trials must be at least 1");
  if (!(config.tol > 0.0)) fail(ErrorCode::InvalidArgument, "tolerance must be positive");

  const auto logs = map_indices(
      config.trials,
      [&](std::size_t t) {
        TrialLog log(t);
        run_trial(config, t, log);
        return log;
      },
      config.exec);

  std::map<std::string, PropertyResult> merged;
  for (const auto& log : logs) {
    for (const auto& [name, e] : log.entries()) {
      PropertyResult& r = merged[name];
      if (r.cases == 0) {
        r.name = name;
        r.worst_margin = e.worst;
      }
      r.cases += e.cases;
      r.failures += e.failures;
      r.worst_margin = std::min(r.worst_margin, e.worst);
      if (r.first_failure.empty()) r.first_failure = e.first_failure;
    }
  }
  std::vector<PropertyResult> out;
  out.reserve(merged.size());
  for (auto& [name, r] : merged) out.push_back(std::move(r));
  return out;
}

}  // namespace credal
