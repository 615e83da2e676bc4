#include "autfam/orbital.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace autfam {

namespace {

Rational frac(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

long ceil_rational(const Rational& q) {
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return c.get_si();
}

// Residue in [0, m) of a rational whose denominator is prime to m.
long residue_mod(const Rational& x, long m) {
  const long num = static_cast<long>(mpz_fdiv_ui(x.get_num().get_mpz_t(),
                                                 static_cast<unsigned long>(m)));
  const long den = static_cast<long>(mpz_fdiv_ui(x.get_den().get_mpz_t(),
                                                 static_cast<unsigned long>(m)));
  return num * mod_inverse(den, m) % m;
}

using Mat2 = std::array<Integer, 4>;  // row-major [[0,1],[2,3]]

Mat2 mat_mul(const Mat2& x, const Mat2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

long mat_content(const Mat2& m, long p) {
  bool seen = false;
  long content = 0;
  for (const Integer& e : m) {
    if (e == 0) continue;
    const long v = padic_valuation(e, p).v;
    if (!seen || v < content) content = v;
    seen = true;
  }
  if (!seen) throw std::logic_error("orbital: zero matrix in content computation");
  return content;
}

// Integer form of a pgl2 element: entries scaled by a rational so they are
// integral with unit content; det_val records v_p(det) = the displacement of
// the base vertex.
struct Normalized {
  Mat2 n;
  long det_val = 0;
  long p = 3;
};

Normalized normalize_pgl2(const PadicMatrix& g) {
  Integer lcm = 1;
  for (const Rational& e : {g.a, g.b, g.c, g.d}) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), lcm.get_mpz_t(), e.get_den().get_mpz_t());
    lcm = l;
  }
  Mat2 m;
  const Rational* src[4] = {&g.a, &g.b, &g.c, &g.d};
  for (int i = 0; i < 4; ++i) {
    m[i] = src[i]->get_num() * (lcm / src[i]->get_den());
  }
  const long content = mat_content(m, g.p);
  const Integer scale = pow_integer(g.p, static_cast<unsigned long>(content));
  for (Integer& e : m) mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), scale.get_mpz_t());
  Normalized out;
  out.n = m;
  out.p = g.p;
  const Integer det = m[0] * m[3] - m[1] * m[2];
  out.det_val = padic_valuation(det, g.p).v;
  return out;
}

Mat2 vertex_carrier(long p, const TreeVertex& v) {
  return {pow_integer(p, static_cast<unsigned long>(v.a)), Integer(v.b), Integer(0),
          pow_integer(p, static_cast<unsigned long>(v.c))};
}

Mat2 vertex_adjugate(long p, const TreeVertex& v) {
  return {pow_integer(p, static_cast<unsigned long>(v.c)), Integer(-v.b), Integer(0),
          pow_integer(p, static_cast<unsigned long>(v.a))};
}

// Conjugate of the normalized element into the vertex frame, scaled by
// p^{a+c}: h_v = H / p^{a+c}.
Mat2 conjugate_at(const Normalized& ng, const TreeVertex& v) {
  return mat_mul(vertex_adjugate(ng.p, v), mat_mul(ng.n, vertex_carrier(ng.p, v)));
}

// If gamma stabilizes v, writes the unit-content unit-determinant frame
// matrix into y and returns true; the condition is that the content of H
// absorbs both the p^{a+c} scaling and half the determinant valuation.
bool stabilizer_frame(const Normalized& ng, const TreeVertex& v, Mat2* y) {
  Mat2 h = conjugate_at(ng, v);
  const long content = mat_content(h, ng.p);
  if (2 * content != 2 * v.distance() + ng.det_val) return false;
  const Integer scale = pow_integer(ng.p, static_cast<unsigned long>(content));
  for (Integer& e : h) mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), scale.get_mpz_t());
  *y = h;
  return true;
}

bool is_scalar_mod(const Mat2& y, const Integer& mod) {
  const Integer diff = y[0] - y[3];
  return mpz_divisible_p(diff.get_mpz_t(), mod.get_mpz_t()) &&
         mpz_divisible_p(y[1].get_mpz_t(), mod.get_mpz_t()) &&
         mpz_divisible_p(y[2].get_mpz_t(), mod.get_mpz_t());
}

// --- fiber tables: canonical representatives of K_0/K_s mod p^s ---

struct FiberElem {
  int32_t x[4];
  int32_t xi[4];
};

struct FiberTable {
  long modulus = 1;       // p^s
  std::vector<FiberElem> elems;
};

const FiberTable& fiber_table(long p, long s) {
  static std::map<std::pair<long, long>, FiberTable> cache;
  const auto key = std::make_pair(p, s);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  FiberTable table;
  if (s == 0) {
    table.modulus = 1;
    table.elems.push_back(FiberElem{{1, 0, 0, 0}, {1, 0, 0, 0}});
  } else {
    long modulus = 1;
    for (long i = 0; i < s; ++i) modulus *= p;
    table.modulus = modulus;
    // One representative per projective class: scale so the first unit entry
    // (row-major scan) is 1; earlier entries are then multiples of p.
    std::vector<long> opts[4];
    for (int pos = 0; pos < 4; ++pos) {
      for (int j = 0; j < 4; ++j) {
        opts[j].clear();
        if (j < pos) {
          for (long v = 0; v < modulus; v += p) opts[j].push_back(v);
        } else if (j == pos) {
          opts[j].push_back(1);
        } else {
          for (long v = 0; v < modulus; ++v) opts[j].push_back(v);
        }
      }
      for (long a : opts[0])
        for (long b : opts[1])
          for (long c : opts[2])
            for (long d : opts[3]) {
              const long det = ((a * d - b * c) % modulus + modulus) % modulus;
              if (det % p == 0) continue;
              const long inv = mod_inverse(det, modulus);
              FiberElem e;
              e.x[0] = static_cast<int32_t>(a);
              e.x[1] = static_cast<int32_t>(b);
              e.x[2] = static_cast<int32_t>(c);
              e.x[3] = static_cast<int32_t>(d);
              e.xi[0] = static_cast<int32_t>(d * inv % modulus);
              e.xi[1] = static_cast<int32_t>(((-b * inv) % modulus + modulus) % modulus);
              e.xi[2] = static_cast<int32_t>(((-c * inv) % modulus + modulus) % modulus);
              e.xi[3] = static_cast<int32_t>(a * inv % modulus);
              table.elems.push_back(e);
            }
    }
    // |PGL2(Z/p^s)| = p^{3s-2}(p^2-1).
    const Integer expected = pow_integer(p, static_cast<unsigned long>(3 * s - 2)) * (p * p - 1);
    if (Integer(static_cast<long>(table.elems.size())) != expected) {
      throw std::logic_error("orbital: fiber table size mismatch");
    }
  }
  return cache.emplace(key, std::move(table)).first->second;
}

// --- certified enumeration ---

struct CertifiedScan {
  Integer total;
  long radius = 0;
};

// Grows the ball until the outermost shell contributes nothing; the starting
// radius already covers the analytic support bound, so a quiet shell proves
// completeness (qualifying vertex sets are convex tubes around the fixed
// locus of gamma).
CertifiedScan certified_scan(long p, long start_radius, const char* who,
                             const std::function<Integer(const TreeVertex&)>& weight) {
  for (long r = std::max(start_radius, 1L);; ++r) {
    if (r + 1 > 12 || ball_size(p, r + 1) > 30000000L) {
      throw std::domain_error(std::string(who) + ": radius " + std::to_string(r + 1) +
                              " needed to certify the enumeration exceeds the resource guard");
    }
    Integer total = 0;
    bool boundary = false;
    visit_ball(p, r + 1, [&](const TreeVertex& v) {
      const Integer w = weight(v);
      if (w != 0) {
        total += w;
        if (v.distance() == r + 1) boundary = true;
      }
    });
    if (!boundary) return {total, r};
  }
}

Integer plain_scan(long p, long radius,
                   const std::function<Integer(const TreeVertex&)>& weight) {
  Integer total = 0;
  visit_ball(p, radius, [&](const TreeVertex& v) { total += weight(v); });
  return total;
}

// --- per-kernel vertex weights ---

std::function<Integer(const TreeVertex&)> ks_weight_pgl2(const Normalized& ng,
                                                         const Integer& mod) {
  return [&ng, mod](const TreeVertex& v) -> Integer {
    Mat2 y;
    if (!stabilizer_frame(ng, v, &y)) return 0;
    return is_scalar_mod(y, mod) ? 1 : 0;
  };
}

std::function<Integer(const TreeVertex&)> ks_weight_sl2(const PadicMatrix& gamma,
                                                        long s) {
  return [gamma, s](const TreeVertex& v) -> Integer {
    const PadicMatrix g = vertex_matrix(gamma.p, v);
    const PadicMatrix h = matrix_mul(matrix_inverse(g), matrix_mul(gamma, g));
    const Valuation bound = Valuation::of(s);
    return padic_valuation(h.a - 1, gamma.p) >= bound &&
                   padic_valuation(h.b, gamma.p) >= bound &&
                   padic_valuation(h.c, gamma.p) >= bound &&
                   padic_valuation(h.d - 1, gamma.p) >= bound
               ? 1
               : 0;
  };
}

std::function<Integer(const TreeVertex&)> lie_weight(const Mat2& m, long p,
                                                     long threshold_base) {
  return [m, p, threshold_base](const TreeVertex& v) -> Integer {
    const Mat2 h = mat_mul(vertex_adjugate(p, v), mat_mul(m, vertex_carrier(p, v)));
    const Integer mod =
        pow_integer(p, static_cast<unsigned long>(threshold_base + v.distance()));
    for (const Integer& e : h) {
      if (!mpz_divisible_p(e.get_mpz_t(), mod.get_mpz_t())) return 0;
    }
    return 1;
  };
}

std::function<Integer(const TreeVertex&)> ttks_weight(const Normalized& ng,
                                                      const FiberTable& table,
                                                      long eps_mod, long depth_pow) {
  const long P = table.modulus;
  return [&ng, &table, eps_mod, depth_pow, P](const TreeVertex& v) -> Integer {
    Mat2 y;
    if (!stabilizer_frame(ng, v, &y)) return 0;
    long ym[4];
    for (int i = 0; i < 4; ++i) {
      ym[i] = static_cast<long>(
          mpz_fdiv_ui(y[i].get_mpz_t(), static_cast<unsigned long>(P)));
    }
    long hits = 0;
    for (const FiberElem& f : table.elems) {
      // z = x^{-1} y x mod p^s
      const long t0 = (f.xi[0] * ym[0] + f.xi[1] * ym[2]) % P;
      const long t1 = (f.xi[0] * ym[1] + f.xi[1] * ym[3]) % P;
      const long t2 = (f.xi[2] * ym[0] + f.xi[3] * ym[2]) % P;
      const long t3 = (f.xi[2] * ym[1] + f.xi[3] * ym[3]) % P;
      const long z0 = (t0 * f.x[0] + t1 * f.x[2]) % P;
      const long z1 = (t0 * f.x[1] + t1 * f.x[3]) % P;
      const long z2 = (t2 * f.x[0] + t3 * f.x[2]) % P;
      const long z3 = (t2 * f.x[1] + t3 * f.x[3]) % P;
      // torus shape: equal diagonal, z21 = eps z12, off-diagonal depth >= t.
      if (z0 != z3) continue;
      if ((z2 - eps_mod * z1 % P + P) % P != 0) continue;
      if (z1 % depth_pow != 0 || z2 % depth_pow != 0) continue;
      ++hits;
    }
    return hits;
  };
}

// --- validation helpers ---

void require_nonnegative_level(long s, const char* who) {
  if (s < 0) throw std::invalid_argument(std::string(who) + ": level s must be nonnegative");
}

// Elliptic invariants, with the divergent split case rejected.
EllipticInvariants elliptic_invariants(const PadicMatrix& gamma, const char* who) {
  const EllipticInvariants inv = invariants(gamma);
  if (!inv.elliptic) {
    throw std::domain_error(std::string(who) +
                            ": split class has a noncompact centralizer, integral diverges");
  }
  return inv;
}

long eps_residue_checked(long p, long torus_eps, long modulus, const char* who) {
  const long r = ((torus_eps % p) + p) % p;
  if (r == 0 || is_quadratic_residue(r, p)) {
    throw std::invalid_argument(std::string(who) +
                                ": torus_eps must be a unit nonresidue mod p");
  }
  return ((torus_eps % modulus) + modulus) % modulus;
}

SqrtScaled half_power_scale(long p, long exponent_halves, const Rational& value) {
  // value * p^{exponent_halves / 2} as an exact (rational, sqrt p) pair.
  if (exponent_halves % 2 == 0) {
    const long e = exponent_halves / 2;
    const Integer pw = pow_integer(p, static_cast<unsigned long>(e >= 0 ? e : -e));
    return SqrtScaled(e >= 0 ? value * frac(pw, 1) : value * frac(1, pw));
  }
  const long e = (exponent_halves - 1) / 2;
  const Integer pw = pow_integer(p, static_cast<unsigned long>(e >= 0 ? e : -e));
  const Rational coef = e >= 0 ? value * frac(pw, 1) : value * frac(1, pw);
  return SqrtScaled(coef, p);
}

}  // namespace

PadicMatrix cayley(const PadicMatrix& x) {
  if (x.p == 2 || !is_prime(x.p)) throw std::invalid_argument("cayley: p must be an odd prime");
  if (x.trace() != 0) throw std::invalid_argument("cayley: trace must be 0");
  if (x.is_zero()) throw std::domain_error("cayley: zero element is central/degenerate");
  const Rational det = x.det();
  if (det != 0 && padic_valuation(det, x.p).v < 1) {
    throw std::domain_error("cayley: element is not topologically nilpotent");
  }
  PadicMatrix half = x;
  half.a /= 2;
  half.b /= 2;
  half.c /= 2;
  half.d /= 2;
  PadicMatrix plus = half, minus = half;
  plus.a += 1;
  plus.d += 1;
  minus.a = 1 - minus.a;
  minus.b = -minus.b;
  minus.c = -minus.c;
  minus.d = 1 - minus.d;
  PadicMatrix out = matrix_mul(plus, matrix_inverse(minus));
  out.group = MatrixGroup::sl2;
  validate_matrix(out);
  return out;
}

PadicMatrix cayley_inverse(const PadicMatrix& g) {
  validate_matrix(g);
  PadicMatrix plus = g, minus = g;
  plus.a += 1;
  plus.d += 1;
  minus.a -= 1;
  minus.d -= 1;
  if (plus.det() == 0) {
    throw std::domain_error("cayley_inverse: g + 1 is singular, not a transform image");
  }
  PadicMatrix out = matrix_mul(minus, matrix_inverse(plus));
  out.a *= 2;
  out.b *= 2;
  out.c *= 2;
  out.d *= 2;
  out.group = g.group;
  return out;
}

Rational orbital_Ks(const PadicMatrix& gamma, long s) {
  validate_matrix(gamma);
  require_nonnegative_level(s, "orbital_Ks");
  if (gamma.is_central()) {
    // Point orbit: the integral is the indicator value at gamma.
    if (gamma.group == MatrixGroup::pgl2) return 1;
    return (gamma.a == 1 || s == 0) ? 1 : 0;
  }
  const EllipticInvariants inv = elliptic_invariants(gamma, "orbital_Ks");
  if (gamma.group == MatrixGroup::sl2) {
    const long start = ceil_rational(inv.sd) - s + 2;
    return frac(certified_scan(gamma.p, start, "orbital_Ks", ks_weight_sl2(gamma, s)).total, 1);
  }
  const Normalized ng = normalize_pgl2(gamma);
  const Integer mod = pow_integer(gamma.p, static_cast<unsigned long>(s));
  const long start = ng.det_val + std::max(0L, ceil_rational(inv.sd) - s) + 2;
  return frac(certified_scan(gamma.p, start, "orbital_Ks", ks_weight_pgl2(ng, mod)).total, 1);
}

Rational orbital_Ks_within(const PadicMatrix& gamma, long s, long radius) {
  validate_matrix(gamma);
  require_nonnegative_level(s, "orbital_Ks");
  if (gamma.is_central()) return orbital_Ks(gamma, s);
  elliptic_invariants(gamma, "orbital_Ks");
  if (gamma.group == MatrixGroup::sl2) {
    return frac(plain_scan(gamma.p, radius, ks_weight_sl2(gamma, s)), 1);
  }
  const Normalized ng = normalize_pgl2(gamma);
  const Integer mod = pow_integer(gamma.p, static_cast<unsigned long>(s));
  return frac(plain_scan(gamma.p, radius, ks_weight_pgl2(ng, mod)), 1);
}

namespace {

Rational ttks_value(const PadicMatrix& gamma, long t, long s, long torus_eps,
                    long radius_or_negative) {
  validate_matrix(gamma);
  if (gamma.group != MatrixGroup::pgl2) {
    throw std::invalid_argument("orbital_TtKs: pgl2 elements only");
  }
  require_nonnegative_level(s, "orbital_TtKs");
  if (t < 0 || t > s) {
    throw std::invalid_argument("orbital_TtKs: depth t must satisfy 0 <= t <= s");
  }
  Integer fiber_guard = pow_integer(gamma.p, static_cast<unsigned long>(3 * s));
  if (fiber_guard > 1000000) {
    throw std::domain_error("orbital_TtKs: fiber guard p^{3s} <= 10^6 exceeded");
  }
  const FiberTable& table = fiber_table(gamma.p, s);
  const long eps_mod = eps_residue_checked(gamma.p, torus_eps, table.modulus, "orbital_TtKs");
  if (gamma.is_central()) return 1;  // scalar lies in every T_t K_s
  const EllipticInvariants inv = elliptic_invariants(gamma, "orbital_TtKs");

  long depth_pow = 1;
  for (long i = 0; i < t; ++i) depth_pow *= gamma.p;
  const Normalized ng = normalize_pgl2(gamma);
  const auto weight = ttks_weight(ng, table, eps_mod, depth_pow);
  Integer hits;
  if (radius_or_negative < 0) {
    const long start = ng.det_val + ceil_rational(inv.sd) + 2;
    hits = certified_scan(gamma.p, start, "orbital_TtKs", weight).total;
  } else {
    hits = plain_scan(gamma.p, radius_or_negative, weight);
  }
  return frac(hits, static_cast<long>(table.elems.size()));
}

}  // namespace

Rational orbital_TtKs(const PadicMatrix& gamma, long t, long s, long torus_eps) {
  return ttks_value(gamma, t, s, torus_eps, -1);
}

Rational orbital_TtKs_within(const PadicMatrix& gamma, long t, long s,
                             long torus_eps, long radius) {
  if (radius < 0) throw std::invalid_argument("orbital_TtKs: radius must be nonnegative");
  return ttks_value(gamma, t, s, torus_eps, radius);
}

namespace {

struct LiePrepared {
  Mat2 m;          // x scaled by an integer with p-valuation `shift`
  long shift = 0;  // power of p cleared from denominators
};

// Clears denominators. Divisibility of Ad(g^{-1}) x by p^s is equivalent to
// divisibility of the scaled conjugate by p^{s + shift + distance}: the
// prime-to-p part of the scale never affects p-divisibility.
LiePrepared prepare_lie(const PadicMatrix& x, const char* who) {
  if (x.p == 2 || !is_prime(x.p)) {
    throw std::invalid_argument(std::string(who) + ": p must be an odd prime");
  }
  if (x.trace() != 0) throw std::invalid_argument(std::string(who) + ": trace must be 0");
  if (x.is_zero()) throw std::domain_error(std::string(who) + ": zero element is central/degenerate");
  const Rational det = x.det();
  if (det == 0) {
    throw std::domain_error(std::string(who) + ": nilpotent element, orbit is not closed");
  }
  if (padic_valuation(det, x.p).v < 1) {
    throw std::domain_error(std::string(who) + ": element is not topologically nilpotent");
  }
  Integer lcm = 1;
  for (const Rational& e : {x.a, x.b, x.c, x.d}) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), lcm.get_mpz_t(), e.get_den().get_mpz_t());
    lcm = l;
  }
  LiePrepared out;
  out.shift = padic_valuation(lcm, x.p).v;
  const Rational* src[4] = {&x.a, &x.b, &x.c, &x.d};
  for (int i = 0; i < 4; ++i) out.m[i] = src[i]->get_num() * (lcm / src[i]->get_den());
  return out;
}

}  // namespace

Rational orbital_lie(const PadicMatrix& x, long s) {
  if (s < 1) throw std::invalid_argument("orbital_lie: level s must be >= 1");
  LiePrepared lp = prepare_lie(x, "orbital_lie");
  const Rational det = x.det();
  const long det_val = padic_valuation(det, x.p).v;
  // Split check: -det a square means rational eigenvalues.
  {
    const Rational neg = -det;
    const long v = padic_valuation(neg, x.p).v;
    if (v % 2 == 0) {
      const Integer pw = pow_integer(x.p, static_cast<unsigned long>(v));
      const Rational unit = neg / frac(pw, 1);
      if (is_quadratic_residue(residue_mod(unit, x.p), x.p)) {
        throw std::domain_error("orbital_lie: split element, integral diverges");
      }
    }
  }
  const long depth_ceil = (det_val + 1) / 2;
  const long start = 2 * lp.shift + std::max(0L, depth_ceil - s) + 2;
  const auto weight = lie_weight(lp.m, x.p, s + lp.shift);
  return frac(certified_scan(x.p, start, "orbital_lie", weight).total, 1);
}

Rational orbital_lie_within(const PadicMatrix& x, long s, long radius) {
  if (s < 1) throw std::invalid_argument("orbital_lie: level s must be >= 1");
  LiePrepared lp = prepare_lie(x, "orbital_lie");
  const auto weight = lie_weight(lp.m, x.p, s + lp.shift);
  return frac(plain_scan(x.p, radius, weight), 1);
}

bool descent_check(const PadicMatrix& gamma, long s) {
  if (s < 1) throw std::invalid_argument("descent_check: level s must be >= 1");
  const PadicMatrix x = cayley_inverse(gamma);
  if (x.trace() != 0) {
    throw std::domain_error("descent_check: gamma is not a transform image (det must be 1)");
  }
  return orbital_lie(x, s) == orbital_Ks(gamma, s);
}

OrbitalProfile decay_profile(const PadicMatrix& gamma, long s_max) {
  validate_matrix(gamma);
  if (gamma.group != MatrixGroup::pgl2) {
    throw std::invalid_argument("decay_profile: pgl2 elements only");
  }
  if (s_max < 0) throw std::invalid_argument("decay_profile: s_max must be nonnegative");
  if (gamma.b == 0 || gamma.a != gamma.d) {
    throw std::invalid_argument(
        "decay_profile: gamma must lie in a standard torus [[a,b],[eps b,a]]");
  }
  OrbitalProfile profile;
  profile.gamma = gamma;
  profile.inv = elliptic_invariants(gamma, "decay_profile");
  if (profile.inv.torus != TorusType::unramified) {
    throw std::invalid_argument("decay_profile: torus of gamma must be unramified");
  }
  const Rational eps_exact = gamma.c / gamma.b;
  if (padic_valuation(eps_exact, gamma.p) != Valuation::of(0)) {
    throw std::invalid_argument("decay_profile: torus parameter must be a unit");
  }
  long modulus = gamma.p;
  for (long i = 1; i <= s_max; ++i) modulus *= gamma.p;
  const long eps = residue_mod(eps_exact, modulus);
  profile.torus_eps = eps;

  const long d_val = profile.inv.D_valuation;
  for (long s = 0; s <= s_max; ++s) {
    OrbitalRow row;
    row.s = s;
    row.raw = orbital_Ks(gamma, s);
    row.raw_mixed = orbital_TtKs(gamma, 0, s, eps);
    row.a = half_power_scale(gamma.p, -d_val, row.raw);
    row.a_mixed = half_power_scale(gamma.p, -d_val, row.raw_mixed);
    profile.rows.push_back(row);
  }
  for (size_t i = 1; i < profile.rows.size(); ++i) {
    const OrbitalRow& prev = profile.rows[i - 1];
    const OrbitalRow& cur = profile.rows[i];
    if (cur.raw > prev.raw) {
      profile.flags.push_back("raw increases at s=" + std::to_string(i));
    }
    if (cur.raw_mixed > prev.raw_mixed) {
      profile.flags.push_back("raw_mixed increases at s=" + std::to_string(i));
    }
    if (profile.inv.md <= Rational(static_cast<long>(i) - 2) &&
        cur.raw_mixed * gamma.p > prev.raw_mixed) {
      profile.flags.push_back("mixed decay factor violated at s=" + std::to_string(i));
    }
  }
  for (const OrbitalRow& row : profile.rows) {
    if (row.s > profile.inv.sd && row.raw != 0) {
      profile.flags.push_back("support extends beyond singular depth");
    }
  }
  return profile;
}

}  // namespace autfam
