#pragma once

#include <string>
#include <vector>

#include "autfam/arith.hpp"
#include "autfam/sqrt_scaled.hpp"
#include "autfam/tree.hpp"

namespace autfam {

// Cayley transform X -> (1 + X/2)(1 - X/2)^{-1} from trace-0 Lie elements to
// the group; requires p odd, X nonzero with v_p(det X) >= 1 (topologically
// nilpotent), throws std::domain_error otherwise.
PadicMatrix cayley(const PadicMatrix& x);

// Inverse transform g -> 2(g - 1)(g + 1)^{-1}; requires det(g + 1) != 0.
PadicMatrix cayley_inverse(const PadicMatrix& g);

// Orbital integral of the indicator of the level-s principal congruence
// subgroup K_s = Z(1 + p^s M_2(Z_p)) (center Z only for pgl2), normalized by
// vol(K_0) = 1 and vol(centralizer torus) = 1.  Because K_s is normal in K_0
// the integral collapses to a count of tree vertices whose stabilizer meets
// the gamma-orbit at depth s; the enumeration radius is certified by
// re-counting at radius R+1.  gamma must be elliptic (or central: the orbit
// is a point and the indicator value is returned).
Rational orbital_Ks(const PadicMatrix& gamma, long s);

// Same count restricted to the ball of the given radius, with no stability
// certificate: exposed so tests can verify the R vs R+1 invariant directly.
Rational orbital_Ks_within(const PadicMatrix& gamma, long s, long radius);

// Orbital integral of the indicator of T_t K_s where T is the unramified
// elliptic torus {[[a, b], [eps b, a]]} through the base vertex (torus_eps a
// nonresidue unit) and T_t its depth-t filtration step.  Computed as
// vol(K_s) * #{g K_s : g^{-1} gamma g in T_t K_s} by scanning the finite
// fiber K_0/K_s over each vertex; t = 0 is the mixed subgroup used by the
// decay profile, t = s recovers orbital_Ks.  Guards: 0 <= t <= s,
// p^{3s} <= 10^6, gamma pgl2.
Rational orbital_TtKs(const PadicMatrix& gamma, long t, long s,
                      long torus_eps);
Rational orbital_TtKs_within(const PadicMatrix& gamma, long t, long s,
                             long torus_eps, long radius);

// Lie-algebra orbital integral: count of vertices v with Ad(g_v^{-1}) X in
// p^s M_2(Z_p), X trace 0 and elliptic; s >= 1.
Rational orbital_lie(const PadicMatrix& x, long s);
Rational orbital_lie_within(const PadicMatrix& x, long s, long radius);

// Exact group-vs-Lie descent: orbital_lie(cayley_inverse(gamma), s) equals
// orbital_Ks(gamma, s).  Returns the comparison for s >= 1.
bool descent_check(const PadicMatrix& gamma, long s);

struct OrbitalRow {
  Rational s;
  // O_gamma(1_{K_s}): vanishes once s exceeds the singular depth.
  Rational raw;
  // O_gamma(1_{T_0 K_s}): the mixed-subgroup integral; positive whenever the
  // orbit meets the torus, and the carrier of the (s+1) p^{-s} decay law.
  Rational raw_mixed;
  SqrtScaled a;        // D(gamma)^{1/2} * raw
  SqrtScaled a_mixed;  // D(gamma)^{1/2} * raw_mixed, non-increasing in s
};

struct OrbitalProfile {
  PadicMatrix gamma;
  EllipticInvariants inv;
  long torus_eps = 0;
  std::vector<OrbitalRow> rows;  // s = 0..s_max
  // Human-readable descriptions of violated decay inequalities; the theory
  // says this stays empty.
  std::vector<std::string> flags;
};

// Full decay table for gamma = [[alpha, beta], [eps beta, alpha]], a
// noncentral element of a standard unramified elliptic torus; torus_eps is
// read off gamma.  Checks per row: both raw columns non-increasing,
// a_mixed(s) <= a_mixed(s-1)/p whenever md <= s-2, and raw(s) = 0 for
// s > sd.  Resource guards propagate from orbital_TtKs.
OrbitalProfile decay_profile(const PadicMatrix& gamma, long s_max);

}  // namespace autfam
