#pragma once

#include <functional>
#include <vector>

#include "autfam/arith.hpp"
#include "autfam/sqrt_scaled.hpp"

namespace autfam {

// Unramified tempered dual of PGL(2, Q_p) parametrized by the normalized
// Satake parameter x = alpha + 1/alpha in [-2, 2].
struct PlancherelSpec {
  long p = 2;                         // residue cardinality, prime
  long double tolerance = 1e-12L;     // quadrature target, must be <= 1e-8
};

// Density of the Plancherel measure with respect to dx:
// (p+1)/pi * sqrt(1 - x^2/4) / ((p^{1/2} + p^{-1/2})^2 - x^2).
long double plancherel_density(long p, long double x);

// Trace of the double coset K diag(p^m, 1) K on the unramified
// representation with parameter x: t_0 = 1, t_1 = sqrt(p) x,
// t_2 = p x^2 - p - 1, then t_{m+1} = sqrt(p) x t_m - p t_{m-1}.
long double satake_trace(long m, long p, long double x);

// integral of f d(mu_p) by adaptive Gauss-Legendre in the substitution
// x = 2 cos(theta), which makes the integrand analytic.
long double plancherel_integrate(const PlancherelSpec& spec,
                                 const std::function<long double(long double)>& f);

// integral of x^j d(mu_p), by quadrature.
long double plancherel_moment(long p, long j);

// The same moment in closed form: expand x^j in the trace basis U_i(x/2)
// and use integral of U_i = p^{-i/2} for even i, zero for odd i.
Rational plancherel_moment_exact(long p, long j);

struct MomentComparisonRow {
  long j = 0;
  SqrtScaled empirical;    // j-th moment of normalized Hecke eigenvalues
  SqrtScaled limit;        // integral of x^j d(mu_p), exact
  SqrtScaled discrepancy;  // |empirical - limit|
};

struct MomentComparisonReport {
  long k = 2;
  long N = 1;
  long p = 2;
  long max_power = 0;
  std::vector<MomentComparisonRow> rows;
};

// Moments of the family's eigenvalue distribution at p against the
// Plancherel limit, for j <= max_power <= 8.  The empirical moment is an
// exact combination of trace_new(k, N, p^i) via the Hecke recursion.
MomentComparisonReport compare_family_moments(long k, long N, long p,
                                              long max_power);

}  // namespace autfam
