#pragma once

#include "autfam/arith.hpp"

namespace autfam {

// Trace of the Hecke operator T_n on S_k(Gamma_0(N)), trivial character.
struct TraceQuery {
  long k = 2;  // weight, even, >= 2
  long N = 1;  // level, >= 1
  long n = 1;  // Hecke index, >= 1, gcd(n, N) = 1
};

enum class Subspace { full, newspace };

struct TraceResult {
  Rational value;  // always an integer in lowest terms; kept rational so the
                   // half-integral intermediate terms cancel in exact arithmetic
  TraceQuery query;
  Subspace side = Subspace::full;
};

// Eichler-Selberg trace of T_n on the full cuspidal space, via the classical
// closed form (identity, elliptic, hyperbolic and, for k = 2, divisor terms);
// see Schoof-van der Vlugt, "Hecke operators and the weight distributions of
// certain codes", Thm 2.2.  trace_hecke(k, N, 1) = dim S_k(Gamma_0(N)).
// k odd or nonpositive arguments -> invalid_argument; gcd(n, N) > 1 is an
// unsupported query -> domain_error.
TraceResult trace_hecke(const TraceQuery& q);

// Trace of T_n on the new subspace, by Moebius-style inversion over levels:
// sum of beta(N/M) * trace_hecke(k, M, n) with beta multiplicative,
// beta(p) = -2, beta(p^2) = 1, beta(p^e) = 0 for e >= 3.
TraceResult trace_new(const TraceQuery& q);

// Dimensions as traces at n = 1.
long dim_cusp(long k, long N);
long dim_new(long k, long N);

}  // namespace autfam
