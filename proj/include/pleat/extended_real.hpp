#pragma once

#include <cmath>
#include <limits>

namespace pleat {

// Signed real with explicit +inf / -inf states. Used for distances that are
// legitimately infinite, e.g. the regression curve of a cylinder.
class ExtendedReal {
 public:
  enum class Kind { Finite, PosInf, NegInf };

  constexpr ExtendedReal() = default;
  constexpr ExtendedReal(double v) : value_(v) {}  // NOLINT: implicit from finite values
  static constexpr ExtendedReal pos_inf() { return ExtendedReal(Kind::PosInf); }
  static constexpr ExtendedReal neg_inf() { return ExtendedReal(Kind::NegInf); }

  constexpr Kind kind() const { return kind_; }
  constexpr bool finite() const { return kind_ == Kind::Finite; }
  constexpr bool infinite() const { return kind_ != Kind::Finite; }
  // Finite value; +-inf map to the IEEE infinities.
  double value() const {
    switch (kind_) {
      case Kind::PosInf: return std::numeric_limits<double>::infinity();
      case Kind::NegInf: return -std::numeric_limits<double>::infinity();
      default: return value_;
    }
  }
  int sign() const {
    if (kind_ == Kind::PosInf) return 1;
    if (kind_ == Kind::NegInf) return -1;
    return (value_ > 0) - (value_ < 0);
  }
  ExtendedReal abs() const { return infinite() ? pos_inf() : ExtendedReal(std::abs(value_)); }

  // |this| > x for finite x >= 0.
  bool abs_exceeds(double x) const { return infinite() || std::abs(value_) > x; }

 private:
  constexpr explicit ExtendedReal(Kind k) : kind_(k) {}
  double value_ = 0.0;
  Kind kind_ = Kind::Finite;
};

// num / den with den == 0 mapped to +inf.
inline ExtendedReal extended_divide(double num, double den) {
  if (den == 0.0) return ExtendedReal::pos_inf();
  return ExtendedReal(num / den);
}

}  // namespace pleat
