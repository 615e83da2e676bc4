#include "autfam/sqrt_scaled.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

namespace autfam {

SqrtScaled::SqrtScaled(const Rational& coef, long radicand) : coef_(coef) {
  if (radicand < 0) {
    throw std::invalid_argument("SqrtScaled: negative radicand");
  }
  if (radicand == 0) {
    coef_ = 0;
    radicand_ = 1;
    return;
  }
  long squarefree = 1;
  Integer square_root_part = 1;
  for (const auto& [p, e] : factorize(radicand)) {
    square_root_part *= pow_integer(p, static_cast<unsigned long>(e / 2));
    if (e % 2 != 0) squarefree *= p;
  }
  coef_ *= Rational(square_root_part);
  radicand_ = squarefree;
  normalize();
}

void SqrtScaled::normalize() {
  if (coef_ == 0) radicand_ = 1;
}

Rational SqrtScaled::squared() const { return coef_ * coef_ * Rational(radicand_); }

SqrtScaled SqrtScaled::operator-() const {
  SqrtScaled result = *this;
  result.coef_ = -result.coef_;
  return result;
}

SqrtScaled SqrtScaled::abs() const {
  SqrtScaled result = *this;
  result.coef_ = ::abs(result.coef_);
  return result;
}

SqrtScaled& SqrtScaled::operator+=(const SqrtScaled& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) {
    *this = other;
    return *this;
  }
  if (radicand_ != other.radicand_) {
    throw std::invalid_argument("SqrtScaled: addition of incompatible radicands");
  }
  coef_ += other.coef_;
  normalize();
  return *this;
}

SqrtScaled& SqrtScaled::operator-=(const SqrtScaled& other) {
  return *this += -other;
}

SqrtScaled& SqrtScaled::operator*=(const SqrtScaled& other) {
  const long g = std::gcd(radicand_, other.radicand_);
  coef_ *= other.coef_ * Rational(g);
  radicand_ = (radicand_ / g) * (other.radicand_ / g);
  normalize();
  return *this;
}

SqrtScaled& SqrtScaled::operator*=(const Rational& scalar) {
  coef_ *= scalar;
  normalize();
  return *this;
}

SqrtScaled& SqrtScaled::operator/=(const Rational& scalar) {
  if (scalar == 0) throw std::invalid_argument("SqrtScaled: division by zero");
  coef_ /= scalar;
  return *this;
}

int SqrtScaled::compare(const SqrtScaled& other) const {
  const int sa = sign();
  const int sb = other.sign();
  if (sa != sb) return sa < sb ? -1 : 1;
  if (sa == 0) return 0;
  const int c = cmp(squared(), other.squared());
  return sa > 0 ? c : -c;
}

std::string SqrtScaled::to_string() const {
  if (radicand_ == 1) return to_fraction_string(coef_);
  return to_fraction_string(coef_) + "*sqrt(" + std::to_string(radicand_) + ")";
}

Rational SqrtScaled::truncated(unsigned digits) const {
  if (is_zero()) return Rational(0);
  const Integer scale = pow_integer(10, digits);
  Integer num = coef_.get_num();
  const Integer& den = coef_.get_den();
  const int value_sign = sgn(num);
  if (value_sign < 0) num = -num;
  // floor(|coef| * scale * sqrt(r)) = floor(isqrt(num^2 * scale^2 * r) / den):
  // both floors agree because den is a positive integer.
  const Integer shifted =
      isqrt_floor(num * num * scale * scale * Integer(radicand_)) / den;
  Rational result(value_sign < 0 ? Integer(-shifted) : shifted, scale);
  result.canonicalize();
  return result;
}

std::string SqrtScaled::to_decimal_string(unsigned digits) const {
  const Integer scale = pow_integer(10, digits);
  Integer num = coef_.get_num();
  const Integer& den = coef_.get_den();
  const bool negative = num < 0;
  if (negative) num = -num;
  const Integer shifted =
      is_zero() ? Integer(0)
                : Integer(isqrt_floor(num * num * scale * scale *
                                      Integer(radicand_)) /
                          den);
  const Integer integer_part = shifted / scale;
  const Integer fraction_part = shifted % scale;
  std::string out;
  if (negative && shifted > 0) out += '-';
  out += integer_part.get_str();
  if (digits > 0) {
    std::string frac = fraction_part.get_str();
    out += '.';
    out.append(digits - frac.size(), '0');
    out += frac;
  }
  return out;
}

}  // namespace autfam
