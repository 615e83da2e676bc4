#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace autfam {

using Integer = mpz_class;
using Rational = mpq_class;

// p-adic valuation value; v(0) = +infinity.
struct Valuation {
  long v = 0;
  bool inf = false;

  static Valuation infinity() { return Valuation{0, true}; }
  static Valuation of(long x) { return Valuation{x, false}; }

  bool operator==(const Valuation& o) const {
    return inf == o.inf && (inf || v == o.v);
  }
  bool operator!=(const Valuation& o) const { return !(*this == o); }
  bool operator<(const Valuation& o) const {
    if (inf) return false;
    if (o.inf) return true;
    return v < o.v;
  }
  bool operator<=(const Valuation& o) const { return *this < o || *this == o; }
  bool operator>=(const Valuation& o) const { return !(*this < o); }
  bool operator>(const Valuation& o) const { return o < *this; }
};

bool is_prime(long n);
bool is_prime_power(long n, long* base = nullptr, int* exponent = nullptr);

Valuation padic_valuation(const Integer& x, long p);
Valuation padic_valuation(const Rational& x, long p);
Valuation padic_valuation(long x, long p);

// Kronecker symbol (a|m); m = 0 is rejected.
int kronecker(const Integer& a, const Integer& m);
int kronecker(long a, long m);

std::vector<std::pair<long, int>> factorize(long n);
std::vector<long> divisors(long n);  // ascending
long euler_phi(long n);
long sigma0(long n);

bool is_square(const Integer& n);
bool is_square(long n);
Integer isqrt_floor(const Integer& n);
long isqrt_floor(long n);

Integer pow_integer(long base, unsigned long exp);
long mod_pow(long base, long exp, long mod);
long mod_inverse(long a, long mod);
// Legendre test for a unit mod an odd prime.
bool is_quadratic_residue(long a, long p);

std::string to_fraction_string(const Rational& q);

}  // namespace autfam
