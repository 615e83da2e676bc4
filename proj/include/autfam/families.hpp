#pragma once

#include <vector>

#include "autfam/arith.hpp"
#include "autfam/sqrt_scaled.hpp"

namespace autfam {

// Ramification pattern of a weight-k family: a single supercuspidal prime
// with conductor exponent three, or Steinberg at a squarefree set of primes,
// unramified everywhere else.
enum class FamilyKind { supercuspidal_cube, steinberg_squarefree };

struct FamilySpec {
  long k = 2;
  FamilyKind kind = FamilyKind::supercuspidal_cube;
  long q = 5;                         // supercuspidal case
  std::vector<long> steinberg_set;    // Steinberg case
};

// Predicted size of the family: count_sc_pair for the cube case, the
// Steinberg main term otherwise.
Rational family_main_term(const FamilySpec& spec);

// Trace-formula count of the family: the newspace dimension at q^3, or at
// the product of the Steinberg primes.
long family_actual_count(const FamilySpec& spec);

// Combined multiplicity of a swapped pair of simple supercuspidals in
// weight k: (k-1)(q^2-1)/12, exact.
Rational count_sc_pair(long k, long q);

// Newspace dimension at level q^3, computed by the trace formula and checked
// against (q-1) * count_sc_pair(k, q); throws std::logic_error if the two
// routes disagree.
long count_sc_aggregate(long k, long q);

// Main term of the Steinberg horizontal family: (k-1) phi(q_S) / (12 * 2^|S|)
// with q_S the product of the primes in S.
Rational count_st_main(long k, const std::vector<long>& steinberg_set);

// Combined count over all sign patterns: the newspace dimension at the
// squarefree level q_S.
long count_st_actual(long k, const std::vector<long>& steinberg_set);

// count_st_actual minus 2^|S| times count_st_main: the bounded error of the
// horizontal asymptotic.
Rational steinberg_discrepancy(long k, const std::vector<long>& steinberg_set);

// (-1/12) * prod_{q in S} (1-q)/2: the adelic volume constant of the
// Steinberg family.
Rational tau_prime_pgl2(const std::vector<long>& steinberg_set);

struct EquidistRow {
  long n = 1;
  SqrtScaled value;   // S(n) = trace_new(k, N, n) / n^{(k-1)/2}, exact
  // sqrt(n) * S(n) - family_size * [n is a square]; rational because k is
  // even.  The square main term equals the family size exactly in this
  // scaling, and the deviation stays O(n) with a weight-independent constant.
  Rational residual;
  bool is_square_index = false;
};

struct EquidistReport {
  long k = 2;
  long N = 1;
  long family_size = 0;  // dim_new(k, N)
  std::vector<EquidistRow> rows;
  Rational residual_slope;  // max over rows of |residual| / n
};

// Hecke eigenvalue statistics for the family at level N, which must be q or
// q^3 for a prime q (q >= 5 in the cube case); n runs over 1..n_max coprime
// to N.  All row values are exact; render decimals only at output time.
EquidistReport equidist_report(long k, long N, long n_max);

}  // namespace autfam
