#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "credal/credal_div.hpp"

namespace credal {

struct PropertyConfig {
  std::uint64_t seed = 0;
  std::size_t trials = 50;
  double tol = kDefaultTolerance;
  Execution exec = Execution::parallel;
};

struct PropertyResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  /// Smallest margin seen (allowed bound minus measured); negative on failure.
  double worst_margin = 0.0;
  /// First failing case, empty when all passed.
  std::string first_failure;

  bool passed() const noexcept { return failures == 0; }
};

/// One seeded random instance pair as used by the suite: n in 2..4 points on
/// a line, 1..3 vertices per set, all weights >= 0.05.
struct TrialInstance {
  CredalSet p;
  CredalSet q;
};

TrialInstance make_trial_instance(std::uint64_t seed, std::size_t trial);

/// Runs every divergence and duality invariant on `trials` seeded instances.
/// Trials are independent and run in parallel; results are identical to a
/// serial run.
std::vector<PropertyResult> run_property_suite(const PropertyConfig& config);

}  // namespace credal
