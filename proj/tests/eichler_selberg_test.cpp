#include <numeric>
#include <stdexcept>
#include <vector>

#include "autfam/eichler_selberg.hpp"
#include "doctest.h"

using namespace autfam;

namespace {

// Independent dimension oracle via the genus/valence route: no shared code
// with the trace formula beyond basic integer arithmetic.
long dim_oracle(long k, long N) {
  long psi = N;
  for (const auto& [p, e] : factorize(N)) psi = psi / p * (p + 1);

  long nu2 = (N % 4 == 0) ? 0 : 1;
  long nu3 = (N % 9 == 0) ? 0 : 1;
  for (const auto& [p, e] : factorize(N)) {
    if (nu2 != 0) nu2 *= (p == 2) ? 1 : 1 + kronecker(-1, p);
    if (nu3 != 0) nu3 *= (p == 3) ? 1 : 1 + kronecker(-3, p);
  }
  long eps_inf = 0;
  for (long d : divisors(N)) eps_inf += euler_phi(std::gcd(d, N / d));

  Rational genus = Rational(1) + Rational(psi, 12) - Rational(nu2, 4) -
                   Rational(nu3, 3) - Rational(eps_inf, 2);
  genus.canonicalize();
  REQUIRE(genus.get_den() == 1);
  const long g = genus.get_num().get_si();

  if (k == 2) return g;
  return (k - 1) * (g - 1) + (k / 2 - 1) * eps_inf + (k / 4) * nu2 +
         (k / 3) * nu3;
}

// tau(n) for n <= limit by expanding q * prod_{m >= 1} (1 - q^m)^24.
std::vector<Integer> tau_table(int limit) {
  std::vector<Integer> c(limit, 0);
  c[0] = 1;
  for (int m = 1; m < limit; ++m) {
    for (int rep = 0; rep < 24; ++rep) {
      for (int i = limit - 1; i >= m; --i) c[i] -= c[i - m];
    }
  }
  std::vector<Integer> tau(limit + 1, 0);
  for (int n = 1; n <= limit; ++n) tau[n] = c[n - 1];
  return tau;
}

// Point counts on the elliptic curve 11a1: y^2 + y = x^3 - x^2 - 10x - 20,
// the curve underlying X_0(11) (Cremona's tables).
long curve11_ap(long p) {
  long points = 1;  // the point at infinity
  for (long x = 0; x < p; ++x) {
    const long rhs =
        ((x * x % p) * x % p - x * x % p - 10 * x % p - 20 % p + 12 * p) % p;
    for (long y = 0; y < p; ++y) {
      if ((y * y + y) % p == rhs) ++points;
    }
  }
  return p + 1 - points;
}

Integer trace_full(long k, long N, long n) {
  return Integer(trace_hecke(TraceQuery{k, N, n}).value.get_num());
}

// Coefficients a_1..a_limit of q * prod over (scale, power) pairs of
// prod_{m >= 1} (1 - q^{scale*m})^power.  Every product used below has total
// eta quotient weight divisible by 24, so the leading term is exactly q.
std::vector<Integer> eta_product_table(
    const std::vector<std::pair<int, int>>& factors, int limit) {
  std::vector<Integer> c(limit, 0);
  c[0] = 1;
  for (const auto& [scale, power] : factors) {
    for (int m = 1; scale * m < limit; ++m) {
      for (int rep = 0; rep < power; ++rep) {
        for (int i = limit - 1; i >= scale * m; --i) c[i] -= c[i - scale * m];
      }
    }
  }
  std::vector<Integer> a(limit + 1, 0);
  for (int n = 1; n <= limit; ++n) a[n] = c[n - 1];
  return a;
}

// Point count a_p = p + 1 - #E(F_p) for a long Weierstrass equation
// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with good reduction at p.
long curve_ap(long p, long a1, long a2, long a3, long a4, long a6) {
  const auto red = [p](long v) { return ((v % p) + p) % p; };
  long points = 1;  // the point at infinity
  for (long x = 0; x < p; ++x) {
    const long rhs = red(x * x * x + a2 * x * x + a4 * x + a6);
    const long slope = red(a1 * x + a3);
    for (long y = 0; y < p; ++y) {
      if ((y * y + slope * y) % p == rhs) ++points;
    }
  }
  return p + 1 - points;
}

// Hecke eigenvalues a_n, gcd(n, N) = 1, of the weight-two eigenform attached
// to an elliptic curve: point counts at primes, a_{p^{e+1}} =
// a_p a_{p^e} - p a_{p^e / p}, multiplicative across coprime factors.
std::vector<long> curve_an_table(long N, long a1, long a2, long a3, long a4,
                                 long a6, long limit) {
  std::vector<long> a(limit + 1, 0);
  a[1] = 1;
  for (long p = 2; p <= limit; ++p) {
    if (!is_prime(p) || N % p == 0) continue;
    a[p] = curve_ap(p, a1, a2, a3, a4, a6);
    for (long q = p * p; q <= limit; q *= p) {
      a[q] = a[p] * a[q / p] - p * a[q / p / p];
    }
  }
  for (long n = 2; n <= limit; ++n) {
    const auto parts = factorize(n);
    if (parts.size() < 2 || std::gcd(n, N) != 1) continue;
    long value = 1;
    for (const auto& [p, e] : parts) value *= a[pow_integer(p, e).get_si()];
    a[n] = value;
  }
  return a;
}

}  // namespace

TEST_CASE("full-space dimensions match the genus/valence oracle") {
  std::vector<long> levels;
  for (long N = 1; N <= 60; ++N) levels.push_back(N);
  for (long N : {121L, 125L, 128L, 169L, 199L, 200L}) levels.push_back(N);
  for (long k = 2; k <= 20; k += 2) {
    for (long N : levels) {
      CAPTURE(k);
      CAPTURE(N);
      CHECK(dim_cusp(k, N) == dim_oracle(k, N));
    }
  }
}

TEST_CASE("weight 12 level 1 traces reproduce the discriminant coefficients") {
  const auto tau = tau_table(64);
  CHECK(tau[1] == 1);
  CHECK(tau[2] == -24);
  CHECK(tau[3] == 252);
  CHECK(tau[11] == 534612);
  for (long n = 1; n <= 64; ++n) {
    CAPTURE(n);
    CHECK(trace_hecke(TraceQuery{12, 1, n}).value == Rational(tau[n]));
  }
}

TEST_CASE("weight 2 level 11 traces count points on 11a1") {
  // a_p from raw point counts, extended to prime powers by a_{p^{e+1}} =
  // a_p a_{p^e} - p a_{p^{e-1}} and multiplicatively to all n <= 64.
  std::vector<long> a(65, 0);
  a[1] = 1;
  for (long p : {2L, 3L, 5L, 7L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L, 43L,
                 47L, 53L, 59L, 61L}) {
    if (p <= 64) a[p] = curve11_ap(p);
  }
  CHECK(a[2] == -2);
  CHECK(a[3] == -1);
  CHECK(a[5] == 1);
  CHECK(a[7] == -2);
  for (long p : {2L, 3L, 5L, 7L}) {
    for (long q = p * p; q <= 64; q *= p) {
      a[q] = a[p] * a[q / p] - p * ((q / p / p >= 1) ? a[q / p / p] : 0);
    }
  }
  for (long n = 2; n <= 64; ++n) {
    if (n % 11 == 0 || a[n] != 0) continue;
    for (long d = 2; d < n; ++d) {
      if (n % d == 0 && std::gcd(d, n / d) == 1 && d > 1 && n / d > 1) {
        a[n] = a[d] * a[n / d];
        break;
      }
    }
  }
  for (long n = 1; n <= 64; ++n) {
    if (n % 11 == 0) continue;
    CAPTURE(n);
    CHECK(trace_full(2, 11, n) == a[n]);
  }
}

TEST_CASE("hecke recursion and multiplicativity hold on one-dimensional spaces") {
  for (long k : {12L, 16L, 18L, 20L, 22L, 26L}) {
    REQUIRE(dim_cusp(k, 1) == 1);
    for (long p : {2L, 3L, 5L, 7L}) {
      for (long pr = p; pr * p <= 64; pr *= p) {
        const Integer lhs = trace_full(k, 1, p) * trace_full(k, 1, pr);
        const Integer rhs =
            trace_full(k, 1, pr * p) +
            pow_integer(p, static_cast<unsigned long>(k - 1)) *
                trace_full(k, 1, pr / p);
        CAPTURE(k);
        CAPTURE(p);
        CAPTURE(pr);
        CHECK(lhs == rhs);
      }
    }
    for (long m = 2; m <= 8; ++m) {
      for (long n = m + 1; m * n <= 64; ++n) {
        if (std::gcd(m, n) != 1) continue;
        CHECK(trace_full(k, 1, m) * trace_full(k, 1, n) ==
              trace_full(k, 1, m * n));
      }
    }
  }
}

TEST_CASE("pinned trace values") {
  CHECK(trace_full(12, 1, 1) == 1);
  CHECK(trace_full(12, 1, 2) == -24);
  CHECK(trace_full(2, 1, 1) == 0);
  CHECK(trace_full(2, 11, 1) == 1);
  CHECK(trace_new(TraceQuery{2, 125, 1}).value == 8);
  CHECK(trace_new(TraceQuery{4, 125, 1}).value == 24);
  CHECK(trace_new(TraceQuery{2, 11, 1}).value == 1);
  CHECK(dim_new(2, 125) == 8);
  CHECK(dim_new(12, 125) == 88);
  CHECK(dim_cusp(12, 1) == 1);
}

TEST_CASE("new-subspace dimensions recombine to full dimensions") {
  for (long k : {2L, 4L, 6L, 12L}) {
    for (long N = 1; N <= 48; ++N) {
      long recombined = 0;
      for (long M : divisors(N)) recombined += sigma0(N / M) * dim_new(k, M);
      CAPTURE(k);
      CAPTURE(N);
      CHECK(dim_cusp(k, N) == recombined);
    }
  }
}

TEST_CASE("cube-level new dimensions follow the exact law") {
  for (long q : {5L, 7L}) {
    for (long k = 2; k <= 20; k += 2) {
      CHECK(dim_new(k, q * q * q) ==
            (k - 1) * (q + 1) * (q - 1) * (q - 1) / 12);
    }
  }
}

TEST_CASE("eta product eigenforms pin traces at prime-power levels") {
  struct Space {
    long k;
    long N;
    std::vector<std::pair<int, int>> factors;
  };
  const std::vector<Space> spaces = {
      {8, 2, {{1, 8}, {2, 8}}},  // eta(z)^8 eta(2z)^8
      {6, 4, {{2, 12}}},         // eta(2z)^12
      {4, 8, {{2, 4}, {4, 4}}},  // eta(2z)^4 eta(4z)^4
      {4, 9, {{3, 8}}},          // eta(3z)^8
      {4, 5, {{1, 4}, {5, 4}}},  // eta(z)^4 eta(5z)^4
  };
  for (const auto& space : spaces) {
    REQUIRE(dim_cusp(space.k, space.N) == 1);
    const auto a = eta_product_table(space.factors, 64);
    for (long n = 1; n <= 64; ++n) {
      if (std::gcd(n, space.N) != 1) continue;
      CAPTURE(space.k);
      CAPTURE(space.N);
      CAPTURE(n);
      CHECK(trace_hecke(TraceQuery{space.k, space.N, n}).value == Rational(a[n]));
    }
  }
  // spot values keeping the oracle itself honest
  CHECK(eta_product_table({{1, 8}, {2, 8}}, 8)[3] == 12);
  CHECK(eta_product_table({{3, 8}}, 16)[4] == -8);
  CHECK(eta_product_table({{3, 8}}, 16)[7] == 20);
}

TEST_CASE("weight-two traces at prime-power levels count points on CM curves") {
  struct Curve {
    long N;
    long a1, a2, a3, a4, a6;
  };
  // 27a1, 32a2, 49a1 from Cremona's tables; X_0(N) has genus one for each.
  const std::vector<Curve> curves = {
      {27, 0, 0, 1, 0, 0},
      {32, 0, 0, 0, -1, 0},
      {49, 1, -1, 0, -2, -1},
  };
  for (const auto& curve : curves) {
    REQUIRE(dim_cusp(2, curve.N) == 1);
    const auto a = curve_an_table(curve.N, curve.a1, curve.a2, curve.a3,
                                  curve.a4, curve.a6, 64);
    for (long n = 1; n <= 64; ++n) {
      if (std::gcd(n, curve.N) != 1) continue;
      CAPTURE(curve.N);
      CAPTURE(n);
      CHECK(trace_full(2, curve.N, n) == a[n]);
    }
  }
  // supersingular and split spot checks on the point counts themselves
  CHECK(curve_ap(7, 0, 0, 1, 0, 0) == -1);
  CHECK(curve_ap(5, 0, 0, 1, 0, 0) == 0);
  CHECK(curve_ap(5, 0, 0, 0, -1, 0) == -2);
  CHECK(curve_ap(2, 1, -1, 0, -2, -1) == 1);
}

TEST_CASE("trace results are integral across a query sweep") {
  for (long k : {2L, 4L, 6L, 8L}) {
    for (long N = 1; N <= 36; ++N) {
      for (long n = 1; n <= 30; ++n) {
        if (std::gcd(n, N) != 1) continue;
        const auto full = trace_hecke(TraceQuery{k, N, n});
        const auto fresh = trace_new(TraceQuery{k, N, n});
        CHECK(full.value.get_den() == 1);
        CHECK(fresh.value.get_den() == 1);
        CHECK(full.side == Subspace::full);
        CHECK(fresh.side == Subspace::newspace);
      }
    }
  }
}

TEST_CASE("invalid queries are rejected") {
  CHECK_THROWS_AS(trace_hecke(TraceQuery{3, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(trace_hecke(TraceQuery{0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(trace_hecke(TraceQuery{12, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(trace_hecke(TraceQuery{12, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(trace_hecke(TraceQuery{2, 11, 22}), std::domain_error);
  CHECK_THROWS_AS(trace_new(TraceQuery{2, 10, 5}), std::domain_error);
}
