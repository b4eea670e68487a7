#include "credal/extended_real.hpp"

#include <cmath>
#include <cstdio>

#include "credal/error.hpp"

namespace credal {

ExtendedReal::ExtendedReal(double value) : value_(value) {
  if (std::isnan(value) || value < 0.0) {
    fail(ErrorCode::InvalidArgument, "extended real must be >= 0, got " + std::to_string(value));
  }
}

double ExtendedReal::finite_value() const {
  if (is_infinite()) fail(ErrorCode::InvalidArgument, "value is +inf");
  return value_;
}

ExtendedReal operator+(ExtendedReal a, ExtendedReal b) noexcept {
  if (a.is_infinite() || b.is_infinite()) return ExtendedReal::infinity();
  ExtendedReal r;
  r.value_ = a.value_ + b.value_;
  return r;
}

ExtendedReal max(ExtendedReal a, ExtendedReal b) noexcept { return a < b ? b : a; }

std::string format(ExtendedReal x) {
  if (x.is_infinite()) return "+inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x.value());
  return buf;
}

}  // namespace credal
