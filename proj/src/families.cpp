#include "autfam/families.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "autfam/eichler_selberg.hpp"

namespace autfam {

namespace {

Rational make_rational(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

void validate_weight(long k) {
  if (k < 2 || k % 2 != 0) {
    throw std::invalid_argument("families: weight must be a positive even integer");
  }
}

void validate_cube_prime(long q) {
  if (q < 5 || !is_prime(q)) {
    throw std::invalid_argument("families: residue cardinality must be a prime >= 5");
  }
}

void validate_steinberg_set(const std::vector<long>& s, bool allow_empty) {
  if (s.empty()) {
    if (allow_empty) return;
    throw std::invalid_argument("families: Steinberg set must be nonempty");
  }
  for (long q : s) {
    if (q < 2 || !is_prime(q)) {
      throw std::invalid_argument("families: Steinberg set entries must be prime");
    }
  }
  std::vector<long> sorted = s;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("families: Steinberg set entries must be distinct");
  }
}

long steinberg_level(const std::vector<long>& s) {
  long level = 1;
  for (long q : s) level *= q;
  return level;
}

}  // namespace

Rational count_sc_pair(long k, long q) {
  validate_weight(k);
  validate_cube_prime(q);
  return make_rational(Integer(k - 1) * (Integer(q) * q - 1), 12);
}

long count_sc_aggregate(long k, long q) {
  const long dim = dim_new(k, q * q * q);
  const Rational predicted = Rational(q - 1) * count_sc_pair(k, q);
  if (Rational(dim) != predicted) {
    throw std::logic_error("count_sc_aggregate: newspace dimension disagrees with (q-1) pair count");
  }
  return dim;
}

Rational count_st_main(long k, const std::vector<long>& steinberg_set) {
  validate_weight(k);
  validate_steinberg_set(steinberg_set, false);
  Integer phi = 1;
  for (long q : steinberg_set) phi *= q - 1;
  return make_rational(Integer(k - 1) * phi,
                       Integer(12) * pow_integer(2, steinberg_set.size()));
}

long count_st_actual(long k, const std::vector<long>& steinberg_set) {
  validate_weight(k);
  validate_steinberg_set(steinberg_set, false);
  return dim_new(k, steinberg_level(steinberg_set));
}

Rational steinberg_discrepancy(long k, const std::vector<long>& steinberg_set) {
  const Rational actual(count_st_actual(k, steinberg_set));
  const Rational patterns(pow_integer(2, steinberg_set.size()));
  return actual - patterns * count_st_main(k, steinberg_set);
}

Rational tau_prime_pgl2(const std::vector<long>& steinberg_set) {
  validate_steinberg_set(steinberg_set, true);
  Rational total(-1, 12);
  for (long q : steinberg_set) {
    Rational factor(1 - q, 2);
    factor.canonicalize();
    total *= factor;
  }
  return total;
}

Rational family_main_term(const FamilySpec& spec) {
  if (spec.kind == FamilyKind::supercuspidal_cube) {
    return count_sc_pair(spec.k, spec.q);
  }
  return count_st_main(spec.k, spec.steinberg_set);
}

long family_actual_count(const FamilySpec& spec) {
  if (spec.kind == FamilyKind::supercuspidal_cube) {
    return count_sc_aggregate(spec.k, spec.q);
  }
  return count_st_actual(spec.k, spec.steinberg_set);
}

EquidistReport equidist_report(long k, long N, long n_max) {
  validate_weight(k);
  if (n_max < 1) {
    throw std::invalid_argument("equidist_report: n_max must be >= 1");
  }
  long base = 0;
  int exponent = 0;
  if (!is_prime_power(N, &base, &exponent) || (exponent != 1 && exponent != 3)) {
    throw std::invalid_argument("equidist_report: level must be q or q^3 for a prime q");
  }
  if (exponent == 3) validate_cube_prime(base);

  EquidistReport report;
  report.k = k;
  report.N = N;
  report.family_size = dim_new(k, N);
  const Rational size(report.family_size);

  for (long n = 1; n <= n_max; ++n) {
    if (std::gcd(n, N) != 1) continue;
    EquidistRow row;
    row.n = n;
    row.is_square_index = is_square(n);
    const Rational trace = trace_new({k, N, n}).value;
    // S(n) = trace / n^{(k-1)/2} = (trace / n^{k/2}) * sqrt(n).
    row.value = SqrtScaled(make_rational(trace.get_num(), pow_integer(n, k / 2)), n);
    // sqrt(n) * S(n) = trace / n^{k/2-1}.
    row.residual = make_rational(trace.get_num(), pow_integer(n, k / 2 - 1));
    if (row.is_square_index) row.residual -= size;
    Rational slope = abs(row.residual) / n;
    slope.canonicalize();
    if (slope > report.residual_slope) report.residual_slope = slope;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace autfam
