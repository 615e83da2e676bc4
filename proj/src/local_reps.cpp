#include "autfam/local_reps.hpp"

#include <stdexcept>

namespace autfam {

namespace {

void validate_residue_cardinality(long q) {
  if (q < 5 || !is_prime(q)) {
    throw std::invalid_argument(
        "local_reps: residue cardinality must be an odd prime >= 5");
  }
}

Rational half() { return Rational(1, 2); }

Rational make_rational(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Depth lattice at the chosen point: integers at a vertex, half-integers at
// a barycenter.  Returns the depth as a count of half-steps.
long half_steps(const MoyPrasadSpec& spec, const Rational& r) {
  Rational doubled = 2 * r;
  doubled.canonicalize();
  if (doubled.get_den() != 1 || doubled < 0) {
    throw std::invalid_argument("moy_prasad: depth must be a nonnegative "
                                "integer or half-integer");
  }
  const long m = doubled.get_num().get_si();
  if (spec.point == BuildingPoint::vertex && m % 2 != 0) {
    throw std::invalid_argument(
        "moy_prasad: vertex filtrations jump at integer depths only");
  }
  return m;
}

// [G_{x,0} : G_{x,r}] with r given in half-steps.  Jumps carry q^3 per unit
// depth: at a vertex all of it at the integer step, at a barycenter q^2 at
// the half-integer root step and q at the integer torus step.
Integer cumulative_index(const MoyPrasadSpec& spec, long q, long m) {
  if (m == 0) return 1;
  const Integer Q(q);
  if (spec.point == BuildingPoint::vertex) {
    // first step crosses the reductive quotient PGL2(F_q) or SL2(F_q),
    // both of order q^3 - q
    return (Q * Q * Q - Q) *
           pow_integer(q, static_cast<unsigned long>(3 * (m / 2 - 1)));
  }
  // barycenter: torus quotient of order q - 1, then alternating q^2, q
  Integer index(q - 1);
  for (long j = 2; j <= m; ++j) {
    index *= (j % 2 == 0) ? Q * Q : Q;
  }
  return index;
}

}  // namespace

std::vector<LocalRepDescriptor> enumerate_types(long q) {
  validate_residue_cardinality(q);
  const Rational st_degree = make_rational(q - 1, 2);
  std::vector<LocalRepDescriptor> catalog;
  catalog.push_back({RepKind::unramified_principal_series, q, 0, Rational(0),
                     std::nullopt, 0, BuildingPoint::vertex});
  catalog.push_back({RepKind::steinberg, q, 1, Rational(0), st_degree, 1,
                     BuildingPoint::barycenter});
  catalog.push_back({RepKind::steinberg_unramified_twist, q, 1, Rational(0),
                     st_degree, 1, BuildingPoint::barycenter});
  catalog.push_back({RepKind::depth_zero_supercuspidal, q, 2, Rational(0),
                     Rational(q - 1), (q - 1) / 2, BuildingPoint::vertex});
  catalog.push_back({RepKind::simple_supercuspidal, q, 3, half(),
                     make_rational(Integer(q) * Integer(q) - 1, 2),
                     2 * (q - 1), BuildingPoint::barycenter});
  return catalog;
}

long simple_supercuspidal_pair_count(long q) {
  validate_residue_cardinality(q);
  return q - 1;
}

Rational formal_degree(const LocalRepDescriptor& d) {
  if (!d.formal_degree) {
    throw std::domain_error(
        "formal_degree: kind is not square-integrable, no formal degree");
  }
  return *d.formal_degree;
}

Rational formal_degree_from_datum(const CompactInductionDatum& d) {
  if (d.dim_rho < 1) {
    throw std::invalid_argument("formal_degree_from_datum: dim rho must be "
                                "a positive integer");
  }
  if (d.vol_j_mod_center <= 0) {
    throw std::invalid_argument(
        "formal_degree_from_datum: vol(J/Z) must be positive");
  }
  Rational deg = Rational(d.dim_rho) / d.vol_j_mod_center;
  deg.canonicalize();
  return deg;
}

Rational euler_poincare_formal_degree(const LocalRepDescriptor& d) {
  Rational deg = formal_degree(d) * Rational(2, d.q - 1);
  deg.canonicalize();
  return deg;
}

Integer moy_prasad_index(const MoyPrasadSpec& spec, long q, const Rational& r,
                         const Rational& r_prime) {
  validate_residue_cardinality(q);
  const long from = half_steps(spec, r);
  const long to = half_steps(spec, r_prime);
  if (from > to) {
    throw std::invalid_argument("moy_prasad: index requires r <= r'");
  }
  const Integer num = cumulative_index(spec, q, to);
  const Integer den = cumulative_index(spec, q, from);
  return num / den;  // divides exactly: nested subgroups of one filtration
}

Rational moy_prasad_volume(const MoyPrasadSpec& spec, long q,
                           const Rational& r) {
  validate_residue_cardinality(q);
  const Rational base = (spec.point == BuildingPoint::vertex)
                            ? Rational(1)
                            : Rational(1, q + 1);
  Rational vol = base / Rational(cumulative_index(spec, q, half_steps(spec, r)));
  vol.canonicalize();
  return vol;
}

Rational formal_degree_upper_bound(const MoyPrasadSpec& spec, long q,
                                   const Rational& s) {
  Rational bound =
      Rational(Integer(q) * Integer(q) * Integer(q)) / moy_prasad_volume(spec, q, s);
  bound.canonicalize();
  return bound;
}

}  // namespace autfam
