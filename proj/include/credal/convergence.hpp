#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "credal/credal_div.hpp"

namespace credal {

inline constexpr double kResidualTolerance = 1e-6;

/// Finite stand-in for the bounded continuous functions; each entry keeps
/// its sup norm M_phi.
class TestDictionary {
 public:
  explicit TestDictionary(std::vector<TestFunction> functions);

  const std::vector<TestFunction>& functions() const noexcept { return functions_; }
  const std::vector<double>& sup_norms() const noexcept { return sup_norms_; }
  std::size_t size() const noexcept { return functions_.size(); }

 private:
  std::vector<TestFunction> functions_;
  std::vector<double> sup_norms_;
};

/// `random_count` seeded functions with entries in [-1, 1], the indicator of
/// every point, and d(., x_j) for every point when the space has a metric.
TestDictionary make_default_dictionary(const FiniteSpace& space, std::uint64_t seed,
                                       std::size_t random_count = 64);

/// For each t in the schedule, the set with vertices (1 - t) a_i + t b_i,
/// pairing a_i = P0[i mod |P0|] with b_i = P[i mod |P|] for
/// i < max(|P0|, |P|). The t = 0 element is P0 and the t = 1 element is P.
/// Throws SpaceMismatch, or BadSchedule unless the schedule is nonempty,
/// strictly increasing, within [0, 1] and ends at 1.
std::vector<CredalSet> make_interpolating_sequence(const CredalSet& start, const CredalSet& target,
                                                   const std::vector<double>& schedule);

/// t_j = j / steps for j = 1..steps.
std::vector<double> uniform_schedule(std::size_t steps);

/// max(gkl(P,Q), gkl(Q,P)) - 2 gtv(P,Q)^2; +inf when either KL is infinite.
double pinsker_residual(const CredalSet& p, const CredalSet& q, double tol = kDefaultTolerance,
                        Execution exec = Execution::parallel);

struct WeakGap {
  /// max over the dictionary of |E^{P_n}[phi] - E^P[phi]|
  double gap = 0.0;
  /// max over the dictionary of 2 M_phi gtv(P_n, P)
  double lipschitz_bound = 0.0;
};

WeakGap weak_gap(const CredalSet& pn, const CredalSet& p, const TestDictionary& dict,
                 Execution exec = Execution::parallel);

/// Same, with gtv(P_n, P) already known.
WeakGap weak_gap(const CredalSet& pn, const CredalSet& p, const TestDictionary& dict,
                 double gtv_value);

struct Residuals {
  double pinsker_slack = 0.0;         // sqrt(kl_bar / 2) - gtv
  double js_quarter_slack = 0.0;      // kl_bar / 4 - gjs
  double weak_lipschitz_slack = 0.0;  // 2 M_phi gtv - weak gap
  std::optional<double> w1_diameter_slack;  // D gtv - gw1

  /// Smallest residual present (+inf slacks included as +inf).
  double min() const noexcept;
};

struct ConvergenceRecord {
  std::size_t step = 0;
  KlBarValue kl_bar;
  double gjs = 0.0;
  double gtv = 0.0;
  std::optional<double> gw1;
  double weak_gap = 0.0;
  double lipschitz_bound = 0.0;
  Residuals residuals;
};

/// One record per element of `sequence`, each measured against P. Steps are
/// independent and evaluated in parallel; records keep sequence order.
std::vector<ConvergenceRecord> convergence_table(const std::vector<CredalSet>& sequence,
                                                 const CredalSet& p, const TestDictionary& dict,
                                                 double tol = kDefaultTolerance,
                                                 Execution exec = Execution::parallel);

struct EquivalenceCheck {
  std::size_t step = 0;
  double epsilon = 0.0;
  double gtv = 0.0;
  double gjs = 0.0;
  /// gtv > eps  requires  gjs > eps^2 / 4 - 1e-6
  bool lower_applies = false;
  bool lower_holds = true;
  /// gtv < eps  requires  gjs < eps + 1e-6
  bool upper_applies = false;
  bool upper_holds = true;
};

struct EquivalenceReport {
  std::vector<EquivalenceCheck> checks;
  bool passed = true;
};

inline constexpr double kEquivalenceEpsilons[] = {0.05, 0.1, 0.2, 0.4};

/// Checks the two quantitative bounds behind "JS -> 0 iff V -> 0" at each
/// step of the sequence for every epsilon in kEquivalenceEpsilons.
EquivalenceReport js_tv_equivalence_probe(const std::vector<CredalSet>& sequence,
                                          const CredalSet& p, double tol = kDefaultTolerance,
                                          Execution exec = Execution::parallel);

}  // namespace credal
