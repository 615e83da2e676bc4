#pragma once

#include <optional>
#include <vector>

#include "autfam/arith.hpp"

namespace autfam {

// Irreducible smooth representations of PGL(2, Q_q) tracked by this catalog,
// listed by conductor exponent 0, 1, 1, 2, 3.
enum class RepKind {
  unramified_principal_series,
  steinberg,
  steinberg_unramified_twist,
  depth_zero_supercuspidal,
  simple_supercuspidal,
};

enum class BuildingPoint { vertex, barycenter };
enum class LocalGroup { sl2, pgl2 };

// Numerical invariants of one representation kind.  Formal degrees are
// normalized by vol(PGL2(Z_q)) = 1 and absent for non-square-integrable
// kinds.  family_size counts isomorphism classes with trivial central
// character; 0 marks a continuous family.
struct LocalRepDescriptor {
  RepKind kind;
  long q = 5;
  int conductor_exponent = 0;
  Rational depth;
  std::optional<Rational> formal_degree;
  long family_size = 0;
  BuildingPoint point = BuildingPoint::vertex;  // where the inducing datum lives
};

// Inducing datum (J, rho) of a representation realized by compact induction;
// deg = dim(rho) / vol(J/Z).
struct CompactInductionDatum {
  long dim_rho = 1;
  Rational vol_j_mod_center = 1;
  Rational s_sigma = 0;
};

// A Moy-Prasad filtration subgroup G_{x,r}: x a vertex or an edge barycenter
// of the local tree, depth r in Z (vertex) or (1/2)Z (barycenter).
struct MoyPrasadSpec {
  LocalGroup group = LocalGroup::pgl2;
  BuildingPoint point = BuildingPoint::vertex;
  Rational depth = 0;
};

// The five-kind catalog for residue cardinality q (odd prime, q >= 5):
// principal series, Steinberg and its unramified quadratic twist, depth-zero
// supercuspidals ((q-1)/2 classes of degree q-1), and the 2(q-1) simple
// supercuspidals of degree (q^2-1)/2 and depth 1/2.
std::vector<LocalRepDescriptor> enumerate_types(long q);

// Simple supercuspidals come in q-1 pairs swapped by the unramified
// quadratic twist.
long simple_supercuspidal_pair_count(long q);

// Throws std::domain_error for kinds that are not square-integrable.
Rational formal_degree(const LocalRepDescriptor& d);

// deg = dim(rho) / vol(J/Z).
Rational formal_degree_from_datum(const CompactInductionDatum& d);

// Same degree in the Euler-Poincare normalization, which rescales Haar
// measure so that |deg(Steinberg)| = 1; the conversion multiplies by
// 2/(q-1).
Rational euler_poincare_formal_degree(const LocalRepDescriptor& d);

// [G_{x,r} : G_{x,r'}] for 0 <= r <= r'.  One unit of depth costs q^3 past
// the reductive quotient; the r = 0 step crosses PGL2(F_q) (order q^3 - q)
// at a vertex and the torus F_q^x (order q - 1) at a barycenter.
Integer moy_prasad_index(const MoyPrasadSpec& spec, long q, const Rational& r,
                         const Rational& r_prime);

// vol(G_{x,r}) with vol(PGL2(Z_q)) = 1; an edge barycenter starts from the
// Iwahori volume 1/(q+1).
Rational moy_prasad_volume(const MoyPrasadSpec& spec, long q,
                           const Rational& r);

// q^3 / vol(G_{x,s}): every square-integrable degree with inducing depth s
// at x sits below this.
Rational formal_degree_upper_bound(const MoyPrasadSpec& spec, long q,
                                   const Rational& s);

}  // namespace autfam
