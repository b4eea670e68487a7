#pragma once

#include <compare>
#include <limits>
#include <string>

namespace credal {

/// A nonnegative real or +inf. Divergences that can blow up (KL and the
/// quantities built from it) return this instead of a raw double so the
/// infinite branch is explicit at every call site.
class ExtendedReal {
 public:
  constexpr ExtendedReal() noexcept = default;

  /// Throws InvalidArgument on NaN or negative input.
  explicit ExtendedReal(double value);

  static constexpr ExtendedReal infinity() noexcept {
    ExtendedReal r;
    r.value_ = std::numeric_limits<double>::infinity();
    return r;
  }

  bool is_infinite() const noexcept { return value_ == std::numeric_limits<double>::infinity(); }
  bool is_finite() const noexcept { return !is_infinite(); }

  /// The stored value as a double (+inf when infinite).
  double value() const noexcept { return value_; }

  /// Throws InvalidArgument when infinite.
  double finite_value() const;

  friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b) noexcept;
  friend bool operator==(ExtendedReal a, ExtendedReal b) noexcept { return a.value_ == b.value_; }
  friend std::weak_ordering operator<=>(ExtendedReal a, ExtendedReal b) noexcept {
    if (a.value_ < b.value_) return std::weak_ordering::less;
    if (a.value_ > b.value_) return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
  }

 private:
  double value_ = 0.0;
};

ExtendedReal max(ExtendedReal a, ExtendedReal b) noexcept;

/// "+inf" for the infinite value, otherwise 17 significant digits.
std::string format(ExtendedReal x);

}  // namespace credal
