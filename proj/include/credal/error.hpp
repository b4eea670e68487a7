#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace credal {

enum class ErrorCode {
  InvalidSpace,
  AsymmetricMetric,
  NegativeDistance,
  NonzeroDiagonal,
  TriangleViolation,
  InvalidDistribution,
  InvalidMixtureWeights,
  LengthMismatch,
  SpaceMismatch,
  EmptySet,
  NoMetric,
  InvalidArgument,
  OverflowGuard,
  BoundViolation,
  SolverFailure,
  TooManyVertices,
  InfinitePrimal,
  BadSchedule,
  InfeasibleMinWeight,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base exception for every recoverable failure in the library. The code
/// identifies the failure class; the message carries the specifics.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class TriangleViolation : public Error {
 public:
  TriangleViolation(std::size_t i, std::size_t j, std::size_t k, const std::string& message);

  /// d(i,k) > d(i,j) + d(j,k)
  std::size_t i() const noexcept { return i_; }
  std::size_t j() const noexcept { return j_; }
  std::size_t k() const noexcept { return k_; }

 private:
  std::size_t i_, j_, k_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace credal
