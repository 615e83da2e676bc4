#include <stdexcept>
#include <vector>

#include "autfam/orbital.hpp"
#include "autfam/tree.hpp"
#include "doctest.h"

using namespace autfam;

namespace {

Rational frac(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

PadicMatrix congruence_element(long p, long m) {
  // 1 + p^m J with J^2 = eps, eps a unit nonresidue.
  const long eps = (p % 4 == 3) ? -1 : 2;
  const Integer pm = pow_integer(p, static_cast<unsigned long>(m));
  return make_pgl2(p, 1, Rational(pm), Rational(eps) * Rational(pm), 1);
}

long torus_eps_of(long p) { return (p % 4 == 3) ? -1 : 2; }

TEST_CASE("group counts at the reference element are 5, 1, 0") {
  const PadicMatrix g = make_pgl2(3, 1, 3, -3, 1);
  CHECK(orbital_Ks(g, 0) == 5);
  CHECK(orbital_Ks(g, 1) == 1);
  CHECK(orbital_Ks(g, 2) == 0);
  CHECK(orbital_Ks(g, 3) == 0);
}

TEST_CASE("depth-s torus cosets recover the congruence count") {
  const PadicMatrix g = make_pgl2(3, 1, 3, -3, 1);
  for (long s = 0; s <= 2; ++s) {
    CHECK(orbital_TtKs(g, s, s, -1) == orbital_Ks(g, s));
  }
  const PadicMatrix j = make_pgl2(3, 0, 1, -1, 0);
  for (long s = 0; s <= 2; ++s) {
    CHECK(orbital_TtKs(j, s, s, -1) == orbital_Ks(j, s));
  }
}

TEST_CASE("mixed-subgroup counts stay positive past the congruence support") {
  const PadicMatrix g = make_pgl2(3, 1, 3, -3, 1);
  CHECK(orbital_TtKs(g, 0, 0, -1) == 5);
  CHECK(orbital_TtKs(g, 0, 1, -1) == 1);
  CHECK(orbital_TtKs(g, 0, 2, -1) == frac(1, 3));

  // Order-4 element: the torus factor keeps the identity coset admissible at
  // every level, so the count never vanishes.
  const PadicMatrix j = make_pgl2(3, 0, 1, -1, 0);
  CHECK(orbital_Ks(j, 0) == 1);
  CHECK(orbital_Ks(j, 1) == 0);
  CHECK(orbital_TtKs(j, 0, 1, -1) == frac(1, 3));
  CHECK(orbital_TtKs(j, 0, 2, -1) == frac(1, 27));
  CHECK(orbital_TtKs(j, 0, 2, -1) > 0);
}

TEST_CASE("mixed counts dominate plain congruence counts") {
  const PadicMatrix g = make_pgl2(3, 1, 3, -3, 1);
  for (long s = 0; s <= 3; ++s) {
    CHECK(orbital_TtKs(g, 0, s, -1) >= orbital_Ks(g, s));
  }
}

TEST_CASE("congruence counts along 1 + p^m J are tube volumes") {
  for (long p : {3L, 5L, 7L}) {
    for (long m = 1; m <= 2; ++m) {
      const PadicMatrix g = congruence_element(p, m);
      for (long s = 0; s <= m + 1; ++s) {
        const Rational expected =
            s <= m ? Rational(ball_size(p, m - s)) : Rational(0);
        CHECK(orbital_Ks(g, s) == expected);
      }
    }
  }
}

TEST_CASE("support of the congruence count stops at the singular depth") {
  for (long p : {3L, 5L, 7L}) {
    for (long m = 1; m <= 2; ++m) {
      const PadicMatrix g = congruence_element(p, m);
      const EllipticInvariants inv = invariants(g);
      CHECK(inv.sd == m);
      CHECK(orbital_Ks(g, m + 1) == 0);
    }
  }
}

TEST_CASE("fixed-radius counts stabilize at the certified radius") {
  const PadicMatrix g = make_pgl2(3, 1, 3, -3, 1);
  // Radius 0 sees only the base vertex; the certified value needs radius 1.
  CHECK(orbital_Ks_within(g, 0, 0) == 1);
  CHECK(orbital_Ks_within(g, 0, 1) == 5);
  CHECK(orbital_Ks_within(g, 0, 2) == 5);
  CHECK(orbital_Ks_within(g, 0, 3) == orbital_Ks_within(g, 0, 4));
  CHECK(orbital_Ks_within(g, 0, 4) == orbital_Ks(g, 0));

  const PadicMatrix j = congruence_element(5, 2);
  CHECK(orbital_Ks_within(j, 0, 2) == orbital_Ks_within(j, 0, 3));
  CHECK(orbital_Ks_within(j, 0, 3) == orbital_Ks(j, 0));
  CHECK(orbital_TtKs_within(j, 0, 1, 2, 3) == orbital_TtKs_within(j, 0, 1, 2, 4));
  CHECK(orbital_TtKs_within(j, 0, 1, 2, 4) == orbital_TtKs(j, 0, 1, 2));
}

TEST_CASE("normalized mixed counts decay like (s+1) p^{-s}") {
  // D^{1/2} O(s) <= 2 (s+1) p^{-s} across the sampled family, and one extra
  // power of p is gained per level once s >= md + 2.
  for (long p : {3L, 5L, 7L}) {
    const long s_max = p == 3 ? 4 : 2;
    for (long m = 1; m <= 2; ++m) {
      const PadicMatrix g = congruence_element(p, m);
      const EllipticInvariants inv = invariants(g);
      const Integer weight = pow_integer(p, static_cast<unsigned long>(m));  // D^{-1/2}
      std::vector<Rational> mixed;
      for (long s = 0; s <= s_max; ++s) {
        mixed.push_back(orbital_TtKs(g, 0, s, torus_eps_of(p)));
      }
      for (long s = 0; s <= s_max; ++s) {
        const Rational normalized = mixed[s] / Rational(weight);
        const Rational bound =
            frac(2 * (s + 1), 1) / Rational(pow_integer(p, static_cast<unsigned long>(s)));
        CHECK(normalized <= bound);
        if (s >= 1) {
          CHECK(mixed[s] <= mixed[s - 1]);
          if (inv.md <= s - 2) {
            CHECK(mixed[s] * p <= mixed[s - 1]);
          }
        }
      }
    }
  }
}

TEST_CASE("decay profiles carry both columns and raise no flags") {
  const OrbitalProfile prof = decay_profile(make_pgl2(3, 1, 3, -3, 1), 4);
  CHECK(prof.flags.empty());
  CHECK(prof.inv.sd == 1);
  REQUIRE(prof.rows.size() == 5);
  CHECK(prof.rows[0].raw == 5);
  CHECK(prof.rows[1].raw == 1);
  CHECK(prof.rows[2].raw == 0);
  CHECK(prof.rows[2].raw_mixed == frac(1, 3));
  CHECK(prof.rows[4].raw_mixed == frac(1, 243));
  CHECK(prof.rows[0].a == SqrtScaled(frac(5, 3)));
  CHECK(prof.rows[4].a_mixed == SqrtScaled(frac(1, 729)));
  for (size_t i = 1; i < prof.rows.size(); ++i) {
    CHECK(prof.rows[i].a_mixed <= prof.rows[i - 1].a_mixed);
  }

  for (long p : {5L, 7L}) {
    for (long m = 1; m <= 2; ++m) {
      const OrbitalProfile q = decay_profile(congruence_element(p, m), 2);
      CHECK(q.flags.empty());
    }
  }
}

TEST_CASE("transform is an exact involution with unit determinant") {
  const PadicMatrix x = make_pgl2(3, 0, 3, -3, 0);
  const PadicMatrix g = cayley(x);
  CHECK(g.det() == 1);
  CHECK(g.a == frac(-5, 13));
  CHECK(g.b == frac(12, 13));
  const PadicMatrix back = cayley_inverse(g);
  CHECK(back.a == x.a);
  CHECK(back.b == x.b);
  CHECK(back.c == x.c);
  CHECK(back.d == x.d);

  for (long p : {3L, 5L, 7L}) {
    for (long m = 1; m <= 2; ++m) {
      const long eps = torus_eps_of(p);
      const Integer pm = pow_integer(p, static_cast<unsigned long>(m));
      const PadicMatrix y =
          make_pgl2(p, 0, Rational(pm), Rational(eps) * Rational(pm), 0);
      const PadicMatrix img = cayley(y);
      CHECK(img.det() == 1);
      const PadicMatrix rt = cayley_inverse(img);
      CHECK(rt.b == y.b);
      CHECK(rt.c == y.c);
    }
  }
}

TEST_CASE("algebra counts match group counts through the transform") {
  for (long p : {3L, 5L, 7L}) {
    for (long m = 1; m <= 2; ++m) {
      const long eps = torus_eps_of(p);
      const Integer pm = pow_integer(p, static_cast<unsigned long>(m));
      const PadicMatrix x =
          make_pgl2(p, 0, Rational(pm), Rational(eps) * Rational(pm), 0);
      const PadicMatrix g = cayley(x);
      for (long s = 1; s <= m + 1; ++s) {
        CHECK(orbital_lie(x, s) == orbital_Ks(g, s));
        CHECK(descent_check(g, s));
      }
    }
    // Ramified case: X = [[0,p],[-p^2,0]].
    const PadicMatrix xr = make_pgl2(p, 0, p, -p * p, 0);
    const PadicMatrix gr = cayley(xr);
    CHECK(orbital_lie(xr, 1) == 2);
    CHECK(orbital_Ks(gr, 1) == 2);
    CHECK(orbital_lie(xr, 2) == 0);
    CHECK(descent_check(gr, 1));
    CHECK(descent_check(gr, 2));
  }
}

TEST_CASE("matrix algebra counts agree between sl2 and pgl2 carriers") {
  const PadicMatrix x = make_pgl2(3, 0, 3, -3, 0);
  PadicMatrix g = cayley(x);
  CHECK(g.group == MatrixGroup::sl2);
  PadicMatrix gp = g;
  gp.group = MatrixGroup::pgl2;
  for (long s = 0; s <= 2; ++s) {
    CHECK(orbital_Ks(g, s) == orbital_Ks(gp, s));
  }
}

TEST_CASE("central elements produce indicator values") {
  const PadicMatrix z = make_pgl2(3, 2, 0, 0, 2);
  CHECK(orbital_Ks(z, 0) == 1);
  CHECK(orbital_Ks(z, 3) == 1);
  CHECK(orbital_TtKs(z, 0, 1, -1) == 1);
  const PadicMatrix neg = make_sl2(3, -1, 0, 0, -1);
  CHECK(orbital_Ks(neg, 0) == 1);
  CHECK(orbital_Ks(neg, 1) == 0);
  const PadicMatrix one = make_sl2(3, 1, 0, 0, 1);
  CHECK(orbital_Ks(one, 2) == 1);
}

TEST_CASE("sl2 congruence counts at the order-4 element") {
  const PadicMatrix s4 = make_sl2(3, 0, 1, -1, 0);
  CHECK(orbital_Ks(s4, 0) == 1);
  CHECK(orbital_Ks(s4, 1) == 0);
}

TEST_CASE("divergent and malformed inputs are rejected") {
  // Split classes diverge.
  CHECK_THROWS_AS(orbital_Ks(make_pgl2(3, 1, 0, 0, 3), 0), std::domain_error);
  CHECK_THROWS_AS(orbital_Ks(make_pgl2(5, 0, 1, -1, 0), 1), std::domain_error);
  CHECK_THROWS_AS(orbital_TtKs(make_pgl2(5, 0, 1, -1, 0), 0, 1, 2), std::domain_error);
  // Nonsemisimple elements have no invariants.
  CHECK_THROWS_AS(orbital_Ks(make_pgl2(3, 1, 1, 0, 1), 0), std::domain_error);
  // Level and depth ranges.
  CHECK_THROWS_AS(orbital_Ks(make_pgl2(3, 1, 3, -3, 1), -1), std::invalid_argument);
  CHECK_THROWS_AS(orbital_TtKs(make_pgl2(3, 1, 3, -3, 1), 2, 1, -1), std::invalid_argument);
  CHECK_THROWS_AS(orbital_TtKs(make_pgl2(3, 1, 3, -3, 1), -1, 1, -1), std::invalid_argument);
  // Fiber guard p^{3s} <= 10^6.
  CHECK_THROWS_AS(orbital_TtKs(make_pgl2(3, 1, 3, -3, 1), 0, 5, -1), std::domain_error);
  CHECK_THROWS_AS(orbital_TtKs(make_pgl2(7, 2, 7, -7, 2), 0, 3, -1), std::domain_error);
  // Torus parameter must be a unit nonresidue.
  CHECK_THROWS_AS(orbital_TtKs(make_pgl2(3, 1, 3, -3, 1), 0, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(orbital_TtKs(make_pgl2(3, 1, 3, -3, 1), 0, 1, 3), std::invalid_argument);
  // sl2 carriers are not accepted by the coset count.
  CHECK_THROWS_AS(orbital_TtKs(make_sl2(3, 0, 1, -1, 0), 0, 1, -1), std::invalid_argument);
}

TEST_CASE("algebra-side domain checks") {
  CHECK_THROWS_AS(orbital_lie(make_pgl2(3, 0, 3, -3, 0), 0), std::invalid_argument);
  // Zero element.
  PadicMatrix zero = make_pgl2(3, 1, 0, 0, 1);
  zero.a = 0;
  zero.d = 0;
  CHECK_THROWS_AS(orbital_lie(zero, 1), std::domain_error);
  CHECK_THROWS_AS(cayley(zero), std::domain_error);
  // Unit determinant: not topologically nilpotent.
  CHECK_THROWS_AS(orbital_lie(make_pgl2(3, 0, 1, -1, 0), 1), std::domain_error);
  CHECK_THROWS_AS(cayley(make_pgl2(3, 0, 1, -1, 0)), std::domain_error);
  // Nilpotent: orbit not closed.
  PadicMatrix nil = make_pgl2(3, 1, 1, 0, 1);
  nil.a = 0;
  nil.d = 0;
  nil.c = 0;
  nil.b = 3;
  CHECK_THROWS_AS(orbital_lie(nil, 1), std::domain_error);
  // Nonzero trace is not in the algebra slice.
  CHECK_THROWS_AS(orbital_lie(make_pgl2(3, 3, 3, -3, 3), 1), std::invalid_argument);
  CHECK_THROWS_AS(cayley(make_pgl2(3, 3, 3, -3, 3)), std::invalid_argument);
  // Split algebra element: [[p,0],[0,-p]] has square -det.
  PadicMatrix split = make_pgl2(3, 3, 0, 0, 3);
  split.d = -3;
  CHECK_THROWS_AS(orbital_lie(split, 1), std::domain_error);
  // Group elements away from the transform image are rejected.
  CHECK_THROWS_AS(descent_check(make_pgl2(3, 1, 3, -3, 1), 1), std::domain_error);
}

TEST_CASE("profile construction validates the torus shape") {
  CHECK_THROWS_AS(decay_profile(make_pgl2(3, 1, 0, 0, 3), 2), std::invalid_argument);
  CHECK_THROWS_AS(decay_profile(make_pgl2(3, 0, 1, 3, 0), 2), std::invalid_argument);
  CHECK_THROWS_AS(decay_profile(make_sl2(3, 0, 1, -1, 0), 2), std::invalid_argument);
  CHECK_THROWS_AS(decay_profile(make_pgl2(3, 1, 3, -3, 1), -1), std::invalid_argument);
}

}  // namespace
