#include "autfam/tree.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace autfam {

namespace {

Rational frac(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Residue in [0, p) of a p-integral rational.
long unit_residue(const Rational& x, long p) {
  const long num = static_cast<long>(mpz_fdiv_ui(x.get_num().get_mpz_t(),
                                                 static_cast<unsigned long>(p)));
  const long den = static_cast<long>(mpz_fdiv_ui(x.get_den().get_mpz_t(),
                                                 static_cast<unsigned long>(p)));
  if (den == 0) throw std::invalid_argument("tree: residue of a p-fractional value");
  return num * mod_inverse(den, p) % p;
}

long checked_radius(long p, long radius, long size_cap, const char* who) {
  if (radius < 0) throw std::invalid_argument(std::string(who) + ": radius must be nonnegative");
  if (radius > 12) {
    throw std::invalid_argument(std::string(who) +
                                ": radius exceeds the resource guard (max 12)");
  }
  Integer size = 1;
  long max_ok = 0;
  Integer shell = p + 1;  // (p+1) p^{d-1} vertices at distance d
  Integer running = 1;
  for (long d = 1; d <= 12; ++d) {
    running += shell;
    if (running <= size_cap) max_ok = d;
    if (d == radius) size = running;
    shell *= p;
  }
  if (radius > 0 && size > size_cap) {
    throw std::invalid_argument(std::string(who) + ": ball of radius " +
                                std::to_string(radius) + " for p=" + std::to_string(p) +
                                " exceeds the resource guard; largest admissible radius is " +
                                std::to_string(max_ok));
  }
  return max_ok;
}

}  // namespace

Rational PadicMatrix::det() const { return a * d - b * c; }

bool PadicMatrix::operator==(const PadicMatrix& o) const {
  return a == o.a && b == o.b && c == o.c && d == o.d && p == o.p && group == o.group;
}

PadicMatrix make_pgl2(long p, const Rational& a, const Rational& b,
                      const Rational& c, const Rational& d) {
  PadicMatrix m{a, b, c, d, p, MatrixGroup::pgl2};
  validate_matrix(m);
  return m;
}

PadicMatrix make_sl2(long p, const Rational& a, const Rational& b,
                     const Rational& c, const Rational& d) {
  PadicMatrix m{a, b, c, d, p, MatrixGroup::sl2};
  validate_matrix(m);
  return m;
}

void validate_matrix(const PadicMatrix& m) {
  if (m.p == 2 || !is_prime(m.p)) {
    throw std::invalid_argument("tree: p must be an odd prime");
  }
  const Rational det = m.det();
  if (det == 0) throw std::invalid_argument("tree: matrix must be invertible");
  if (m.group == MatrixGroup::sl2 && det != 1) {
    throw std::invalid_argument("tree: sl2 matrix must have determinant 1");
  }
}

PadicMatrix matrix_mul(const PadicMatrix& x, const PadicMatrix& y) {
  if (x.p != y.p) throw std::invalid_argument("tree: mixed primes in matrix product");
  PadicMatrix r;
  r.p = x.p;
  r.group = (x.group == y.group) ? x.group : MatrixGroup::pgl2;
  r.a = x.a * y.a + x.b * y.c;
  r.b = x.a * y.b + x.b * y.d;
  r.c = x.c * y.a + x.d * y.c;
  r.d = x.c * y.b + x.d * y.d;
  return r;
}

PadicMatrix matrix_inverse(const PadicMatrix& m) {
  const Rational det = m.det();
  if (det == 0) throw std::invalid_argument("tree: matrix must be invertible");
  PadicMatrix r;
  r.p = m.p;
  r.group = m.group;
  r.a = m.d / det;
  r.b = -m.b / det;
  r.c = -m.c / det;
  r.d = m.a / det;
  return r;
}

EllipticInvariants invariants(const PadicMatrix& gamma) {
  validate_matrix(gamma);
  if (gamma.is_central()) {
    throw std::domain_error("invariants: central element has no torus data");
  }
  const long p = gamma.p;
  const Rational t = gamma.trace();
  const Rational det = gamma.det();
  const Rational disc = t * t - 4 * det;
  if (disc == 0) {
    throw std::domain_error("invariants: repeated eigenvalue, element is not semisimple");
  }

  const long v_disc = padic_valuation(disc, p).v;
  const long v_det = padic_valuation(det, p).v;

  // disc is a p-adic square iff its valuation is even and the unit part is a
  // residue mod p (p odd, Hensel).
  bool square = false;
  if (v_disc % 2 == 0) {
    const Rational scale = frac(pow_integer(p, static_cast<unsigned long>(
                                    v_disc >= 0 ? v_disc : -v_disc)),
                                1);
    const Rational unit =
        (v_disc >= 0) ? Rational(disc / scale) : Rational(disc * scale);
    square = is_quadratic_residue(unit_residue(unit, p), p);
  }

  EllipticInvariants inv;
  inv.D_valuation = v_disc - v_det;
  if (square) {
    inv.torus = TorusType::split;
    inv.elliptic = false;
    // Newton polygon of x^2 - t x + det gives the eigenvalue valuations.
    const Valuation v_t = padic_valuation(t, p);
    Rational va, vb;  // valuations of the two eigenvalues
    if (!v_t.inf && 2 * v_t.v < v_det) {
      va = v_t.v;
      vb = v_det - v_t.v;
    } else {
      va = frac(v_det, 2);
      vb = va;
    }
    const Rational v_root = frac(v_disc, 2);  // valuation of the root difference
    const Rational n1 = v_root - vb;          // v(lambda - 1)
    const Rational n2 = v_root - va;          // v(1/lambda - 1)
    inv.sd = std::max(n1, n2);
    if (n1 == 0 && n2 == 0) {
      inv.md = 0;
    } else if (n1 == 0) {
      inv.md = n2;
    } else if (n2 == 0) {
      inv.md = n1;
    } else {
      inv.md = std::min(n1, n2);
    }
  } else {
    inv.torus = (v_disc % 2 == 0) ? TorusType::unramified : TorusType::ramified;
    inv.elliptic = true;
    // Both eigenvalue ratios give the same valuation: half the D-valuation.
    inv.md = frac(inv.D_valuation, 2);
    inv.sd = inv.md;
  }
  return inv;
}

long ball_size(long p, long radius) {
  if (radius < 0) throw std::invalid_argument("tree: radius must be nonnegative");
  Integer size = 1;
  Integer shell = p + 1;
  for (long d = 1; d <= radius; ++d) {
    size += shell;
    shell *= p;
  }
  if (!size.fits_slong_p()) throw std::invalid_argument("tree: ball size overflows");
  return size.get_si();
}

void visit_ball(long p, long radius,
                const std::function<void(const TreeVertex&)>& fn) {
  if (p == 2 || !is_prime(p) || p > 7) {
    throw std::invalid_argument("tree: p must be an odd prime at most 7");
  }
  checked_radius(p, radius, 30000000L, "visit_ball");
  fn(TreeVertex{0, 0, 0});
  for (long d = 1; d <= radius; ++d) {
    // c = 0: all residues b mod p^d.
    long pa = 1;
    for (long i = 0; i < d; ++i) pa *= p;
    for (long b = 0; b < pa; ++b) fn(TreeVertex{d, b, 0});
    // 0 < c < d: unit b mod p^{d-c}.
    long c = 1;
    for (long a = d - 1; a >= 1; --a, ++c) {
      pa /= p;
      for (long b = 0; b < pa; ++b) {
        if (b % p != 0) fn(TreeVertex{a, b, c});
      }
    }
    // a = 0: the single vertex down the diagonal direction.
    fn(TreeVertex{0, 0, d});
  }
}

std::vector<TreeVertex> enumerate_ball(long p, long radius) {
  if (p == 2 || !is_prime(p) || p > 7) {
    throw std::invalid_argument("tree: p must be an odd prime at most 7");
  }
  checked_radius(p, radius, 10000000L, "enumerate_ball");
  std::vector<TreeVertex> out;
  out.reserve(static_cast<size_t>(ball_size(p, radius)));
  visit_ball(p, radius, [&](const TreeVertex& v) { out.push_back(v); });
  return out;
}

PadicMatrix vertex_matrix(long p, const TreeVertex& v) {
  PadicMatrix g;
  g.p = p;
  g.group = MatrixGroup::pgl2;
  g.a = frac(pow_integer(p, static_cast<unsigned long>(v.a)), 1);
  g.b = v.b;
  g.c = 0;
  g.d = frac(pow_integer(p, static_cast<unsigned long>(v.c)), 1);
  return g;
}

}  // namespace autfam
