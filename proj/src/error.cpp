#include "credal/error.hpp"

namespace credal {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidSpace: return "InvalidSpace";
    case ErrorCode::AsymmetricMetric: return "AsymmetricMetric";
    case ErrorCode::NegativeDistance: return "NegativeDistance";
    case ErrorCode::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::TriangleViolation: return "TriangleViolation";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::InvalidMixtureWeights: return "InvalidMixtureWeights";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::NoMetric: return "NoMetric";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OverflowGuard: return "OverflowGuard";
    case ErrorCode::BoundViolation: return "BoundViolation";
    case ErrorCode::SolverFailure: return "SolverFailure";
    case ErrorCode::TooManyVertices: return "TooManyVertices";
    case ErrorCode::InfinitePrimal: return "InfinitePrimal";
    case ErrorCode::BadSchedule: return "BadSchedule";
    case ErrorCode::InfeasibleMinWeight: return "InfeasibleMinWeight";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

TriangleViolation::TriangleViolation(std::size_t i, std::size_t j, std::size_t k,
                                     const std::string& message)
    : Error(ErrorCode::TriangleViolation, message), i_(i), j_(j), k_(k) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace credal
