#include "autfam/arith.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace autfam {

namespace {

using u128 = unsigned __int128;

long mul_mod(long a, long b, long m) {
  return static_cast<long>(u128(a) * u128(b) % u128(m));
}

bool miller_rabin(long n, long a) {
  if (a % n == 0) return true;
  long d = n - 1;
  int r = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++r;
  }
  long x = mod_pow(a % n, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 0; i + 1 < r; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_prime(long n) {
  if (n < 2) return false;
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
    if (n % p == 0) return n == p;
  }
  // Deterministic for 64-bit inputs with this base set.
  for (long a : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
    if (!miller_rabin(n, a)) return false;
  }
  return true;
}

bool is_prime_power(long n, long* base, int* exponent) {
  if (n < 2) return false;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      int e = 0;
      long m = n;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      if (m != 1) return false;
      if (base) *base = p;
      if (exponent) *exponent = e;
      return true;
    }
  }
  if (base) *base = n;
  if (exponent) *exponent = 1;
  return true;
}

Valuation padic_valuation(const Integer& x, long p) {
  if (p < 2 || !is_prime(p)) throw std::invalid_argument("padic_valuation: p must be prime");
  if (x == 0) return Valuation::infinity();
  Integer reduced;
  mp_bitcnt_t v = mpz_remove(reduced.get_mpz_t(), x.get_mpz_t(), Integer(p).get_mpz_t());
  return Valuation::of(static_cast<long>(v));
}

Valuation padic_valuation(const Rational& x, long p) {
  if (x == 0) return Valuation::infinity();
  Valuation num = padic_valuation(Integer(x.get_num()), p);
  Valuation den = padic_valuation(Integer(x.get_den()), p);
  return Valuation::of(num.v - den.v);
}

Valuation padic_valuation(long x, long p) { return padic_valuation(Integer(x), p); }

int kronecker(const Integer& a, const Integer& m) {
  if (m == 0) throw std::invalid_argument("kronecker: modulus must be nonzero");
  return mpz_kronecker(a.get_mpz_t(), m.get_mpz_t());
}

int kronecker(long a, long m) { return kronecker(Integer(a), Integer(m)); }

std::vector<std::pair<long, int>> factorize(long n) {
  if (n < 1) throw std::invalid_argument("factorize: n must be positive");
  std::vector<std::pair<long, int>> out;
  for (long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<long> divisors(long n) {
  auto fac = factorize(n);
  std::vector<long> out{1};
  for (auto [p, e] : fac) {
    size_t base = out.size();
    long pe = 1;
    for (int i = 1; i <= e; ++i) {
      pe *= p;
      for (size_t j = 0; j < base; ++j) out.push_back(out[j] * pe);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

long euler_phi(long n) {
  long phi = 1;
  for (auto [p, e] : factorize(n)) {
    long pe = 1;
    for (int i = 1; i < e; ++i) pe *= p;
    phi *= pe * (p - 1);
  }
  return phi;
}

long sigma0(long n) {
  long d = 1;
  for (auto [p, e] : factorize(n)) d *= (e + 1);
  return d;
}

bool is_square(const Integer& n) {
  if (n < 0) return false;
  return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

bool is_square(long n) { return is_square(Integer(n)); }

Integer isqrt_floor(const Integer& n) {
  if (n < 0) throw std::invalid_argument("isqrt_floor: negative argument");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

long isqrt_floor(long n) { return isqrt_floor(Integer(n)).get_si(); }

Integer pow_integer(long base, unsigned long exp) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), exp);
  return r;
}

long mod_pow(long base, long exp, long mod) {
  if (mod <= 0) throw std::invalid_argument("mod_pow: modulus must be positive");
  long r = 1 % mod;
  base %= mod;
  if (base < 0) base += mod;
  while (exp > 0) {
    if (exp & 1) r = mul_mod(r, base, mod);
    base = mul_mod(base, base, mod);
    exp >>= 1;
  }
  return r;
}

long mod_inverse(long a, long mod) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), Integer(a).get_mpz_t(), Integer(mod).get_mpz_t()) == 0)
    throw std::invalid_argument("mod_inverse: not invertible");
  return r.get_si();
}

bool is_quadratic_residue(long a, long p) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("is_quadratic_residue: p must be an odd prime");
  a %= p;
  if (a < 0) a += p;
  if (a == 0) throw std::invalid_argument("is_quadratic_residue: a must be a unit mod p");
  return mod_pow(a, (p - 1) / 2, p) == 1;
}

std::string to_fraction_string(const Rational& q) {
  Rational c(q);
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

}  // namespace autfam
