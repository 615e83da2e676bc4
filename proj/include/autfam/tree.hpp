#pragma once

#include <functional>
#include <vector>

#include "autfam/arith.hpp"

namespace autfam {

enum class MatrixGroup { sl2, pgl2 };

// Conjugacy type of the centralizer torus of a 2x2 semisimple element,
// classified by the square class of trace^2 - 4 det in Q_p.
enum class TorusType { unramified, ramified, split, central };

// 2x2 matrix over Q_p with exact rational entries, read [[a, b], [c, d]].
// For sl2-flavoured Lie elements the same container holds X with trace 0.
struct PadicMatrix {
  Rational a, b, c, d;
  long p = 3;
  MatrixGroup group = MatrixGroup::pgl2;

  Rational trace() const { return a + d; }
  Rational det() const;
  bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }
  // Scalar matrix: the projective identity coset.
  bool is_central() const { return b == 0 && c == 0 && a == d; }
  bool operator==(const PadicMatrix& o) const;
};

PadicMatrix make_pgl2(long p, const Rational& a, const Rational& b,
                      const Rational& c, const Rational& d);
PadicMatrix make_sl2(long p, const Rational& a, const Rational& b,
                     const Rational& c, const Rational& d);

// Throws std::invalid_argument unless p is an odd prime, the determinant is
// nonzero, and (for sl2) the determinant equals 1.
void validate_matrix(const PadicMatrix& m);

PadicMatrix matrix_mul(const PadicMatrix& x, const PadicMatrix& y);
PadicMatrix matrix_inverse(const PadicMatrix& m);

// Depth data of a noncentral semisimple element.  D(gamma) = p^{-D_valuation}
// where D is |t^2 - 4 det|_p / |det|_p; md and sd are the extreme valuations
// of lambda - 1 over the two eigenvalue ratios lambda, half-integers when the
// torus is ramified.
struct EllipticInvariants {
  TorusType torus = TorusType::unramified;
  bool elliptic = false;
  long D_valuation = 0;
  Rational md;
  Rational sd;
};

// Classifies gamma and computes its depth data.  Throws std::domain_error for
// central gamma (the torus degenerates) and for noncentral gamma with a
// repeated eigenvalue (not semisimple).
EllipticInvariants invariants(const PadicMatrix& gamma);

// Homothety class of a Z_p-lattice at distance a + c from the base class,
// represented by the column span of [[p^a, b], [0, p^c]] with 0 <= b < p^a
// and unit content; the p^c column scaling is the homothety normalization
// that makes the form unique per class.
struct TreeVertex {
  long a = 0;
  long b = 0;
  long c = 0;

  long distance() const { return a + c; }
};

// 1 + (p+1)(p^R - 1)/(p-1): closed form for the vertex count of the ball.
long ball_size(long p, long radius);

// Streams every vertex of the radius-R ball around the base class, distance
// by distance.  Guards: p an odd prime <= 7, R <= 12, ball_size <= 3*10^7.
void visit_ball(long p, long radius,
                const std::function<void(const TreeVertex&)>& fn);

// Materialized ball; same guards plus ball_size <= 10^7 so the vector stays
// within memory budget.  The refusal message names the largest radius that
// the guard admits for this p.
std::vector<TreeVertex> enumerate_ball(long p, long radius);

// The group element g_v carrying the base class to v (a pgl2 coset carrier).
PadicMatrix vertex_matrix(long p, const TreeVertex& v);

}  // namespace autfam
