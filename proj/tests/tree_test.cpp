#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "autfam/tree.hpp"
#include "doctest.h"

using namespace autfam;

namespace {

Rational frac(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// 1 + (p+1)(p^r - 1)/(p - 1) vertices in a ball of radius r.
Integer ball_closed_form(long p, long radius) {
  Integer total = 1;
  Integer shell = p + 1;
  for (long d = 1; d <= radius; ++d) {
    total += shell;
    shell *= p;
  }
  return total;
}

TEST_CASE("ball sizes match the homogeneous tree closed form") {
  for (long p : {3L, 5L, 7L}) {
    for (long r = 0; r <= 6; ++r) {
      CHECK(ball_size(p, r) == ball_closed_form(p, r));
    }
  }
  CHECK(ball_size(3, 0) == 1);
  CHECK(ball_size(3, 1) == 5);
  CHECK(ball_size(3, 2) == 17);
  CHECK(ball_size(5, 2) == 37);
  CHECK(ball_size(7, 2) == 65);
}

TEST_CASE("enumerated vertices are distinct and shell counts are (p+1)p^{d-1}") {
  for (long p : {3L, 5L}) {
    const long radius = 4;
    const std::vector<TreeVertex> ball = enumerate_ball(p, radius);
    CHECK(Integer(static_cast<long>(ball.size())) == ball_size(p, radius));

    std::set<std::tuple<long, long, long>> seen;
    std::vector<long> per_distance(radius + 1, 0);
    for (const TreeVertex& v : ball) {
      CHECK(v.a >= 0);
      CHECK(v.c >= 0);
      CHECK(v.b >= 0);
      if (v.a > 0) CHECK(Integer(v.b) < pow_integer(p, static_cast<unsigned long>(v.a)));
      seen.insert({v.a, v.b, v.c});
      per_distance[v.distance()] += 1;
    }
    CHECK(seen.size() == ball.size());
    CHECK(per_distance[0] == 1);
    long shell = p + 1;
    for (long d = 1; d <= radius; ++d) {
      CHECK(per_distance[d] == shell);
      shell *= p;
    }
  }
}

TEST_CASE("visitor enumeration agrees with ball_size at larger radii") {
  for (long p : {3L, 7L}) {
    const long radius = p == 3 ? 8 : 5;
    Integer count = 0;
    visit_ball(p, radius, [&](const TreeVertex&) { count += 1; });
    CHECK(count == ball_size(p, radius));
  }
}

TEST_CASE("enumeration guards refuse oversized or invalid requests") {
  CHECK_THROWS_AS(enumerate_ball(3, 13), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_ball(7, 9), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_ball(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_ball(4, 1), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_ball(11, 1), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_ball(3, -1), std::invalid_argument);
  CHECK_THROWS_AS(visit_ball(3, 13, [](const TreeVertex&) {}), std::invalid_argument);
}

TEST_CASE("vertex matrices carry the expected lattice data") {
  const TreeVertex v{2, 5, 1};
  CHECK(v.distance() == 3);
  const PadicMatrix m = vertex_matrix(3, v);
  CHECK(m.a == 9);
  CHECK(m.b == 5);
  CHECK(m.c == 0);
  CHECK(m.d == 3);
  CHECK(m.det() == 27);
}

TEST_CASE("matrix product and inverse are exact") {
  const PadicMatrix g = make_pgl2(5, 1, 2, 3, 4);
  const PadicMatrix gi = matrix_inverse(g);
  const PadicMatrix id = matrix_mul(g, gi);
  CHECK(id.a == 1);
  CHECK(id.b == 0);
  CHECK(id.c == 0);
  CHECK(id.d == 1);
  CHECK_THROWS_AS(make_sl2(5, 1, 2, 3, 4), std::invalid_argument);  // det -2
  CHECK_THROWS_AS(make_pgl2(4, 1, 0, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_pgl2(2, 1, 0, 0, 2), std::invalid_argument);
  CHECK_THROWS_AS(make_pgl2(5, 1, 2, 2, 4), std::invalid_argument);  // det 0
}

TEST_CASE("unramified elliptic invariants: norm-one style elements") {
  // [[1,3],[-3,1]] at p=3: disc = -36, depth-1 unramified torus.
  const EllipticInvariants inv = invariants(make_pgl2(3, 1, 3, -3, 1));
  CHECK(inv.torus == TorusType::unramified);
  CHECK(inv.elliptic);
  CHECK(inv.D_valuation == 2);
  CHECK(inv.md == 1);
  CHECK(inv.sd == 1);

  // Order-4 element at p = 3 mod 4: unit discriminant.
  const EllipticInvariants j = invariants(make_pgl2(3, 0, 1, -1, 0));
  CHECK(j.torus == TorusType::unramified);
  CHECK(j.elliptic);
  CHECK(j.D_valuation == 0);
  CHECK(j.md == 0);
  CHECK(j.sd == 0);

  // Same matrix at p = 5: -1 is a square, the element splits.
  const EllipticInvariants k = invariants(make_pgl2(5, 0, 1, -1, 0));
  CHECK(k.torus == TorusType::split);
  CHECK_FALSE(k.elliptic);
  CHECK(k.D_valuation == 0);
  CHECK(k.md == 0);
  CHECK(k.sd == 0);
}

TEST_CASE("principal congruence family 1 + p^m J has depth m") {
  for (long p : {3L, 5L, 7L}) {
    const long eps = (p % 4 == 3) ? -1 : 2;
    for (long m = 1; m <= 3; ++m) {
      const Integer pm = pow_integer(p, static_cast<unsigned long>(m));
      const EllipticInvariants inv =
          invariants(make_pgl2(p, 1, Rational(pm), Rational(eps) * Rational(pm), 1));
      CHECK(inv.torus == TorusType::unramified);
      CHECK(inv.elliptic);
      CHECK(inv.D_valuation == 2 * m);
      CHECK(inv.md == m);
      CHECK(inv.sd == m);
    }
  }
}

TEST_CASE("ramified elliptic invariants carry half-integer depths") {
  // [[0,1],[p,0]]: discriminant 4p, odd valuation.
  const EllipticInvariants inv = invariants(make_pgl2(3, 0, 1, 3, 0));
  CHECK(inv.torus == TorusType::ramified);
  CHECK(inv.elliptic);
  CHECK(inv.D_valuation == 0);
  CHECK(inv.md == 0);
  CHECK(inv.sd == 0);

  // Trace-0 antidiagonal form: both roots sit at valuation 3/2 but the
  // eigenvalue ratio is -1, so the weight is a unit.
  const EllipticInvariants anti = invariants(make_pgl2(5, 0, 5, -25, 0));
  CHECK(anti.torus == TorusType::ramified);
  CHECK(anti.D_valuation == 0);
  CHECK(anti.md == 0);
  CHECK(anti.sd == 0);

  // Unit-determinant shift: discriminant valuation 3 against determinant
  // valuation 0 leaves half-integer depths.
  const EllipticInvariants deep = invariants(make_pgl2(5, 1, 5, -25, 1));
  CHECK(deep.torus == TorusType::ramified);
  CHECK(deep.D_valuation == 3);
  CHECK(deep.md == frac(3, 2));
  CHECK(deep.sd == frac(3, 2));
}

TEST_CASE("split elements with distinct eigenvalue valuations") {
  // diag-conjugate [[1,0],[0,p]]: eigenvalues 1 and p.
  const EllipticInvariants inv = invariants(make_pgl2(3, 1, 0, 0, 3));
  CHECK(inv.torus == TorusType::split);
  CHECK_FALSE(inv.elliptic);
  CHECK(inv.D_valuation == -1);
  CHECK(inv.md == -1);
  CHECK(inv.sd == 0);
}

TEST_CASE("weight identity: D valuation equals md + sd") {
  const std::vector<PadicMatrix> grid = {
      make_pgl2(3, 1, 3, -3, 1),   make_pgl2(3, 0, 1, -1, 0),
      make_pgl2(3, 0, 1, 3, 0),    make_pgl2(3, 1, 0, 0, 3),
      make_pgl2(5, 0, 5, -25, 0),  make_pgl2(5, 1, 25, 50, 1),
      make_pgl2(7, 2, 7, -7, 2),   make_pgl2(7, 1, 0, 0, 7),
      make_pgl2(5, 0, 1, -1, 0),   make_pgl2(3, 2, 9, -9, 2),
  };
  for (const PadicMatrix& g : grid) {
    const EllipticInvariants inv = invariants(g);
    CHECK(inv.md + inv.sd == inv.D_valuation);
  }
}

TEST_CASE("degenerate elements are rejected") {
  CHECK_THROWS_AS(invariants(make_pgl2(3, 2, 0, 0, 2)), std::domain_error);   // central
  CHECK_THROWS_AS(invariants(make_pgl2(3, 1, 1, 0, 1)), std::domain_error);   // unipotent
  CHECK_THROWS_AS(invariants(make_pgl2(5, 7, 0, 0, 7)), std::domain_error);
}

}  // namespace
