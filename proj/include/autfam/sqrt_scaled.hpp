#pragma once

#include <string>

#include "autfam/arith.hpp"

namespace autfam {

// Exact value coef * sqrt(radicand) with radicand >= 1 squarefree.  All
// arithmetic and comparisons stay symbolic; decimals appear only in the
// rendering helpers, truncated toward zero so output is reproducible byte
// for byte.
class SqrtScaled {
 public:
  SqrtScaled() : coef_(0), radicand_(1) {}
  explicit SqrtScaled(const Rational& value) : coef_(value), radicand_(1) {
    normalize();
  }
  explicit SqrtScaled(long value) : coef_(value), radicand_(1) { normalize(); }
  // coef * sqrt(radicand); the square part of radicand is folded into coef.
  SqrtScaled(const Rational& coef, long radicand);

  const Rational& coef() const { return coef_; }
  long radicand() const { return radicand_; }

  bool is_zero() const { return coef_ == 0; }
  bool is_rational() const { return radicand_ == 1; }
  int sign() const { return sgn(coef_); }
  // coef^2 * radicand, the square of the value.
  Rational squared() const;

  SqrtScaled operator-() const;
  SqrtScaled abs() const;

  // Addition requires matching radicands (or a zero operand): the type is
  // one-dimensional by design.  Mismatch -> invalid_argument.
  SqrtScaled& operator+=(const SqrtScaled& other);
  SqrtScaled& operator-=(const SqrtScaled& other);
  SqrtScaled& operator*=(const SqrtScaled& other);
  SqrtScaled& operator*=(const Rational& scalar);
  SqrtScaled& operator/=(const Rational& scalar);

  // -1/0/+1 as *this compares to other; exact via sign-aware squared
  // comparison, no rounding anywhere.
  int compare(const SqrtScaled& other) const;

  // "num/den" when the radicand is 1, otherwise "num/den*sqrt(r)".
  std::string to_string() const;
  // Fixed-point decimal with `digits` digits after the point, truncated
  // toward zero ("-" only when the truncated magnitude is nonzero).
  std::string to_decimal_string(unsigned digits) const;
  // Rational t with |value - t| < 10^-digits and |t| <= |value|; the same
  // truncation the decimal rendering prints.
  Rational truncated(unsigned digits) const;

 private:
  void normalize();

  Rational coef_;
  long radicand_;
};

inline SqrtScaled operator+(SqrtScaled a, const SqrtScaled& b) { return a += b; }
inline SqrtScaled operator-(SqrtScaled a, const SqrtScaled& b) { return a -= b; }
inline SqrtScaled operator*(SqrtScaled a, const SqrtScaled& b) { return a *= b; }
inline SqrtScaled operator*(SqrtScaled a, const Rational& s) { return a *= s; }
inline SqrtScaled operator*(const Rational& s, SqrtScaled a) { return a *= s; }
inline SqrtScaled operator/(SqrtScaled a, const Rational& s) { return a /= s; }

inline bool operator==(const SqrtScaled& a, const SqrtScaled& b) {
  return a.compare(b) == 0;
}
inline bool operator!=(const SqrtScaled& a, const SqrtScaled& b) {
  return a.compare(b) != 0;
}
inline bool operator<(const SqrtScaled& a, const SqrtScaled& b) {
  return a.compare(b) < 0;
}
inline bool operator<=(const SqrtScaled& a, const SqrtScaled& b) {
  return a.compare(b) <= 0;
}
inline bool operator>(const SqrtScaled& a, const SqrtScaled& b) {
  return a.compare(b) > 0;
}
inline bool operator>=(const SqrtScaled& a, const SqrtScaled& b) {
  return a.compare(b) >= 0;
}

}  // namespace autfam
