#include "autfam/eichler_selberg.hpp"

#include <numeric>
#include <stdexcept>

#include "autfam/class_numbers.hpp"

namespace autfam {

namespace {

Rational make_rational(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// psi(N) = [SL2(Z) : Gamma_0(N)] = N * prod_{p | N} (1 + 1/p)
long psi_index(long N) {
  long psi = N;
  for (const auto& [p, e] : factorize(N)) psi = psi / p * (p + 1);
  return psi;
}

// P_k(t, n): the degree k-2 kernel weight, P_2 = 1, P_3 = t,
// P_j = t*P_{j-1} - n*P_{j-2}.  Equals (rho^{k-1} - rhobar^{k-1})/(rho - rhobar)
// for the roots of X^2 - tX + n.
Integer kernel_weight(long k, long t, long n) {
  Integer prev(1);  // P_2
  Integer cur(t);   // P_3
  if (k == 2) return prev;
  for (long j = 4; j <= k; ++j) {
    Integer next = Integer(t) * cur - Integer(n) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

// D < 0 with D = 0 or 1 mod 4; returns (d_K, F) with D = F^2 * d_K and d_K
// the fundamental discriminant of Q(sqrt(D)).
std::pair<long, long> fundamental_discriminant(long D) {
  long squarefree = 1;
  for (const auto& [p, e] : factorize(-D)) {
    if (e % 2 != 0) squarefree *= p;
  }
  squarefree = -squarefree;
  const long dK = (((squarefree % 4) + 4) % 4 == 1) ? squarefree : 4 * squarefree;
  return {dK, isqrt_floor(D / dK)};
}

long pow_long(long base, long exp) {
  long r = 1;
  for (long i = 0; i < exp; ++i) r *= base;
  return r;
}

// Optimal embedding count of the local order of conductor p^rho into the
// Eichler order of level p^nu, for a quadratic algebra of splitting type
// `type` at p (+1 split, -1 inert, 0 ramified).  Derived by counting
// torus orbits of ordered vertex pairs at distance nu in the (p+1)-regular
// lattice tree, keyed by the pair's distances (a, b) to the fixed locus of
// the torus (a point, an apartment, or an edge midpoint by type); the order
// optimality condition is max(a, b) = rho.
long local_embedding_count(long p, long nu, long rho, int type) {
  if (nu == 0) return 1;
  long total = 0;
  for (long a = 0; a <= rho; ++a) {
    for (long b = 0; b <= rho; ++b) {
      if (std::max(a, b) != rho) continue;
      const long lo = std::min(a, b);
      if (type == -1) {
        const long twice_c = a + b - nu;
        if (twice_c < 0 || twice_c % 2 != 0) continue;
        const long c = twice_c / 2;
        if (c > lo) continue;
        total += (c == lo) ? 1 : (c == 0 ? p : p - 1) * pow_long(p, lo - c - 1);
      } else if (type == 1) {
        const long twice_e = a + b - nu;
        if (twice_e >= 0 && twice_e % 2 == 0 && twice_e / 2 <= lo) {
          const long e = twice_e / 2;  // shared branch depth at a common base
          if (e == lo) {
            total += 1;
          } else if (e == 0) {
            total += (p - 2) * pow_long(p, lo - 1);
          } else {
            total += (p - 1) * pow_long(p, lo - e - 1);
          }
        }
        if (nu - a - b >= 1) {  // bases separated along the apartment
          total += 2 * (lo == 0 ? 1 : (p - 1) * pow_long(p, lo - 1));
        }
      } else {
        if (a + b + 1 == nu) total += pow_long(p, lo);  // opposite edge ends
        const long twice_c = a + b - nu;
        if (twice_c >= 0 && twice_c % 2 == 0 && twice_c / 2 <= lo) {
          const long c = twice_c / 2;
          total += (c == lo) ? 1 : (p - 1) * pow_long(p, lo - c - 1);
        }
      }
    }
  }
  return total;
}

// c_N(u) = sum over c | N with gcd(c, N/c) | u of phi(gcd(c, N/c));
// u = 0 admits every divisor, giving the cusp count of X_0(N).
long cusp_width_sum(long N, long u) {
  long total = 0;
  for (long c : divisors(N)) {
    const long g = std::gcd(c, N / c);
    if (u % g == 0) total += euler_phi(g);
  }
  return total;
}

Rational identity_term(long k, long N, long n) {
  if (!is_square(n)) return Rational(0);
  return make_rational(Integer(k - 1) * Integer(psi_index(N)) *
                           pow_integer(n, static_cast<unsigned long>(k / 2 - 1)),
                       Integer(12));
}

Rational elliptic_term(long k, long N, long n) {
  const auto level_primes = factorize(N);
  Rational total(0);
  for (long t = 0; t * t < 4 * n; ++t) {
    const auto [dK, F] = fundamental_discriminant(t * t - 4 * n);
    Rational t_sum(0);
    for (long g : divisors(F)) {  // g = conductor of the quadratic order
      long embeddings = 1;
      for (const auto& [p, nu] : level_primes) {
        long rho = 0;
        for (long r = g; r % p == 0; r /= p) ++rho;
        const int type = static_cast<int>(kronecker(dK, p));
        embeddings *= local_embedding_count(p, nu, rho, type);
        if (embeddings == 0) break;
      }
      if (embeddings == 0) continue;
      t_sum += weighted_class_number(g * g * dK) * Rational(embeddings);
    }
    if (t_sum == 0) continue;
    t_sum *= Rational(kernel_weight(k, t, n));
    total += (t == 0) ? t_sum : 2 * t_sum;  // t and -t contribute equally
  }
  return total / 2;
}

Rational hyperbolic_term(long k, long N, long n) {
  Rational total(0);
  for (long d : divisors(n)) {
    if (d * d > n) break;
    const Rational dk(pow_integer(d, static_cast<unsigned long>(k - 1)));
    if (d * d == n) {
      total += dk * Rational(cusp_width_sum(N, 0)) / 2;
    } else {
      total += dk * Rational(cusp_width_sum(N, n / d - d));
    }
  }
  return total;
}

// The k = 2 correction absorbing the Eisenstein part of the kernel.
Rational divisor_term(long k, long N, long n) {
  if (k != 2) return Rational(0);
  long total = 0;
  for (long c : divisors(n)) {
    if (std::gcd(c, N) == 1) total += c;
  }
  return Rational(total);
}

void validate(const TraceQuery& q) {
  if (q.k < 2 || q.k % 2 != 0) {
    throw std::invalid_argument("trace: weight must be a positive even integer");
  }
  if (q.N < 1) throw std::invalid_argument("trace: level must be positive");
  if (q.n < 1) throw std::invalid_argument("trace: Hecke index must be positive");
  if (std::gcd(q.n, q.N) != 1) {
    throw std::domain_error("trace: Hecke index must be coprime to the level");
  }
}

// Multiplicative with beta(p) = -2, beta(p^2) = 1, beta(p^e) = 0 for e >= 3;
// inverts M |-> sum_{d | M} sigma0(d) across levels.
long beta_inversion(long m) {
  long beta = 1;
  for (const auto& [p, e] : factorize(m)) {
    if (e == 1) {
      beta = -2 * beta;
    } else if (e == 2) {
      // beta unchanged
    } else {
      return 0;
    }
  }
  return beta;
}

Rational integral_value(const Rational& value, const char* what) {
  Rational v(value);
  v.canonicalize();
  if (v.get_den() != 1) {
    throw std::logic_error(std::string(what) +
                           ": non-integral trace, formula terms out of balance");
  }
  return v;
}

}  // namespace

TraceResult trace_hecke(const TraceQuery& q) {
  validate(q);
  const Rational value = identity_term(q.k, q.N, q.n) -
                         elliptic_term(q.k, q.N, q.n) -
                         hyperbolic_term(q.k, q.N, q.n) +
                         divisor_term(q.k, q.N, q.n);
  return TraceResult{integral_value(value, "trace_hecke"), q, Subspace::full};
}

TraceResult trace_new(const TraceQuery& q) {
  validate(q);
  Rational total(0);
  for (long M : divisors(q.N)) {
    const long beta = beta_inversion(q.N / M);
    if (beta == 0) continue;
    total += Rational(beta) * trace_hecke(TraceQuery{q.k, M, q.n}).value;
  }
  return TraceResult{integral_value(total, "trace_new"), q, Subspace::newspace};
}

long dim_cusp(long k, long N) {
  const Rational v = trace_hecke(TraceQuery{k, N, 1}).value;
  return static_cast<long>(v.get_num().get_si());
}

long dim_new(long k, long N) {
  const Rational v = trace_new(TraceQuery{k, N, 1}).value;
  return static_cast<long>(v.get_num().get_si());
}

}  // namespace autfam
