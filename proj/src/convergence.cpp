#include "credal/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "credal/error.hpp"
#include "credal/random.hpp"

namespace credal {

TestDictionary::TestDictionary(std::vector<TestFunction> functions)
    : functions_(std::move(functions)) {
  sup_norms_.reserve(functions_.size());
  for (const auto& f : functions_) sup_norms_.push_back(f.sup_norm());
}

TestDictionary make_default_dictionary(const FiniteSpace& space, std::uint64_t seed,
                                       std::size_t random_count) {
  const std::size_t n = space.size();
  std::vector<TestFunction> fs;
  SplitMix64 rng(seed);
  for (std::size_t r = 0; r < random_count; ++r) {
    std::vector<double> v(n);
    for (double& x : v) x = 2.0 * rng.uniform() - 1.0;
    fs.emplace_back(std::move(v));
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> v(n, 0.0);
    v[i] = 1.0;
    fs.emplace_back(std::move(v));
  }
  if (space.has_metric()) {
    const Matrix& d = *space.metric();
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<double> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = d(i, j);
      fs.emplace_back(std::move(v));
    }
  }
  return TestDictionary(std::move(fs));
}

std::vector<double> uniform_schedule(std::size_t steps) {
  if (steps == 0) fail(ErrorCode::BadSchedule, "schedule needs at least one step");
  std::vector<double> s(steps);
  for (std::size_t j = 1; j <= steps; ++j) {
    s[j - 1] = static_cast<double>(j) / static_cast<double>(steps);
  }
  return s;
}

std::vector<CredalSet> make_interpolating_sequence(const CredalSet& start, const CredalSet& target,
                                                   const std::vector<double>& schedule) {
  require_same_space(start.space(), target.space());
  if (schedule.empty()) fail(ErrorCode::BadSchedule, "empty schedule");
  for (std::size_t j = 0; j < schedule.size(); ++j) {
    const double t = schedule[j];
    if (!(t >= 0.0 && t <= 1.0)) fail(ErrorCode::BadSchedule, "schedule entries must lie in [0, 1]");
    if (j > 0 && !(t > schedule[j - 1])) {
      fail(ErrorCode::BadSchedule, "schedule must be strictly increasing");
    }
  }
  if (schedule.back() != 1.0) fail(ErrorCode::BadSchedule, "schedule must end at 1");

  const std::size_t m = std::max(start.size(), target.size());
  std::vector<CredalSet> out;
  out.reserve(schedule.size());
  for (double t : schedule) {
    if (t == 1.0) {
      out.push_back(target);
      continue;
    }
    std::vector<std::vector<double>> rows;
    rows.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      const auto a = start.vertex(i % start.size()).weights();
      const auto b = target.vertex(i % target.size()).weights();
      std::vector<double> v(a.size());
      for (std::size_t c = 0; c < v.size(); ++c) v[c] = (1.0 - t) * a[c] + t * b[c];
      rows.push_back(std::move(v));
    }
    out.emplace_back(start.space(), rows);
  }
  return out;
}

double pinsker_residual(const CredalSet& p, const CredalSet& q, double tol, Execution exec) {
  const ExtendedReal forward = gkl(p, q, tol, exec).value;
  const ExtendedReal backward = gkl(q, p, tol, exec).value;
  const ExtendedReal worst = max(forward, backward);
  if (worst.is_infinite()) return std::numeric_limits<double>::infinity();
  const double v = gtv(p, q, exec);
  return worst.value() - 2.0 * v * v;
}

WeakGap weak_gap(const CredalSet& pn, const CredalSet& p, const TestDictionary& dict,
                 double gtv_value) {
  require_same_space(pn.space(), p.space());
  WeakGap out;
  for (std::size_t f = 0; f < dict.size(); ++f) {
    const TestFunction& phi = dict.functions()[f];
    const double diff =
        std::fabs(sublinear_expectation(pn, phi).value - sublinear_expectation(p, phi).value);
    out.gap = std::max(out.gap, diff);
    out.lipschitz_bound = std::max(out.lipschitz_bound, 2.0 * dict.sup_norms()[f] * gtv_value);
  }
  return out;
}

WeakGap weak_gap(const CredalSet& pn, const CredalSet& p, const TestDictionary& dict,
                 Execution exec) {
  return weak_gap(pn, p, dict, gtv(pn, p, exec));
}

double Residuals::min() const noexcept {
  double m = std::min({pinsker_slack, js_quarter_slack, weak_lipschitz_slack});
  if (w1_diameter_slack) m = std::min(m, *w1_diameter_slack);
  return m;
}

namespace {

ConvergenceRecord measure_step(std::size_t step, const CredalSet& pn, const CredalSet& p,
                               const TestDictionary& dict, double tol, Execution exec) {
  ConvergenceRecord rec;
  rec.step = step;
  rec.kl_bar = kl_bar(pn, p, tol, exec);
  rec.gjs = gjs(pn, p, tol, exec);
  rec.gtv = gtv(pn, p, exec);
  if (p.space()->has_metric()) rec.gw1 = gwasserstein(pn, p, 1.0, exec);
  const WeakGap wg = weak_gap(pn, p, dict, rec.gtv);
  rec.weak_gap = wg.gap;
  rec.lipschitz_bound = wg.lipschitz_bound;

  constexpr double inf = std::numeric_limits<double>::infinity();
  const double total = rec.kl_bar.total.value();
  rec.residuals.pinsker_slack = std::isinf(total) ? inf : std::sqrt(total / 2.0) - rec.gtv;
  rec.residuals.js_quarter_slack = std::isinf(total) ? inf : total / 4.0 - rec.gjs;
  rec.residuals.weak_lipschitz_slack = wg.lipschitz_bound - wg.gap;
  if (rec.gw1) rec.residuals.w1_diameter_slack = p.space()->diameter() * rec.gtv - *rec.gw1;
  return rec;
}

}  // namespace

std::vector<ConvergenceRecord> convergence_table(const std::vector<CredalSet>& sequence,
                                                 const CredalSet& p, const TestDictionary& dict,
                                                 double tol, Execution exec) {
  for (const auto& s : sequence) require_same_space(s.space(), p.space());
  for (const auto& f : dict.functions()) {
    if (f.size() != p.dimension()) {
      fail(ErrorCode::LengthMismatch, "dictionary function length does not match the space");
    }
  }
  return map_indices(
      sequence.size(),
      [&](std::size_t j) { return measure_step(j + 1, sequence[j], p, dict, tol, Execution::serial); },
      exec);
}

EquivalenceReport js_tv_equivalence_probe(const std::vector<CredalSet>& sequence,
                                          const CredalSet& p, double tol, Execution exec) {
  struct Pair {
    double gtv;
    double gjs;
  };
  auto values = map_indices(
      sequence.size(),
      [&](std::size_t j) {
        return Pair{gtv(sequence[j], p, Execution::serial),
                    gjs(sequence[j], p, tol, Execution::serial)};
      },
      exec);

  EquivalenceReport report;
  for (std::size_t j = 0; j < values.size(); ++j) {
    for (double eps : kEquivalenceEpsilons) {
      EquivalenceCheck c;
      c.step = j + 1;
      c.epsilon = eps;
      c.gtv = values[j].gtv;
      c.gjs = values[j].gjs;
      c.lower_applies = c.gtv > eps;
      if (c.lower_applies) c.lower_holds = c.gjs > eps * eps / 4.0 - kResidualTolerance;
      c.upper_applies = c.gtv < eps;
      if (c.upper_applies) c.upper_holds = c.gjs < eps + kResidualTolerance;
      report.passed = report.passed && c.lower_holds && c.upper_holds;
      report.checks.push_back(c);
    }
  }
  return report;
}

}  // namespace credal
