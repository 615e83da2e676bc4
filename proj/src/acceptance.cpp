#include "autfam/acceptance.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "autfam/eichler_selberg.hpp"
#include "autfam/families.hpp"
#include "autfam/finite_lie.hpp"
#include "autfam/local_reps.hpp"
#include "autfam/orbital.hpp"
#include "autfam/plancherel.hpp"
#include "autfam/tree.hpp"

namespace autfam {

namespace {

Rational frac(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational rational_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// Truncated decimal rendering for report lines; integer arithmetic only, so
// the output is deterministic.
std::string decimal_string(const Rational& x, int digits) {
  const bool negative = x < 0;
  const Rational ax = rational_abs(x);
  Integer scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const Integer scaled = ax.get_num() * scale / ax.get_den();
  const Integer whole = scaled / scale;
  std::string fractional = Integer(scaled % scale).get_str();
  fractional.insert(0, static_cast<size_t>(digits) - fractional.size(), '0');
  return (negative ? "-" : "") + whole.get_str() + "." + fractional;
}

PadicMatrix congruence_element(long p, long m) {
  const long eps = (p % 4 == 3) ? -1 : 2;
  const Integer pm = pow_integer(p, static_cast<unsigned long>(m));
  return make_pgl2(p, 1, Rational(pm), Rational(eps) * Rational(pm), 1);
}

CriterionResult dimension_law() {
  CriterionResult r{1, "exact-dimension-law", true, ""};
  long cells = 0;
  for (long q : {5L, 7L, 11L, 13L}) {
    const long level = q * q * q;
    for (long k = 2; k <= 20; k += 2) {
      const Integer expected = Integer(k - 1) * (q + 1) * (q - 1) * (q - 1) / 12;
      if (Integer(dim_new(k, level)) != expected) {
        r.passed = false;
        r.detail = "first failure at k=" + std::to_string(k) + " q=" + std::to_string(q);
        return r;
      }
      ++cells;
    }
  }
  r.detail = std::to_string(cells) + " (k, q^3) cells, tolerance 0";
  return r;
}

CriterionResult pair_count_identity() {
  CriterionResult r{2, "pair-count-identity", true, ""};
  long cells = 0;
  for (long q : {5L, 7L, 11L, 13L}) {
    const long level = q * q * q;
    for (long k = 2; k <= 20; k += 2) {
      if (Rational(dim_new(k, level)) != Rational(q - 1) * count_sc_pair(k, q)) {
        r.passed = false;
        r.detail = "first failure at k=" + std::to_string(k) + " q=" + std::to_string(q);
        return r;
      }
      ++cells;
    }
  }
  r.detail = std::to_string(cells) + " cells match (q-1) x pair count";
  return r;
}

CriterionResult formal_degree_value() {
  CriterionResult r{3, "formal-degree-value", true, ""};
  for (long q : {5L, 7L, 11L, 13L}) {
    CompactInductionDatum datum;
    datum.dim_rho = 1;
    datum.vol_j_mod_center = Rational(2) / Rational(Integer(q) * Integer(q) - 1);
    datum.vol_j_mod_center.canonicalize();
    datum.s_sigma = Rational(1, 2);
    const Rational expected = frac(q * q - 1, 2);
    if (formal_degree_from_datum(datum) != expected) {
      r.passed = false;
      r.detail = "mismatch at q=" + std::to_string(q);
      return r;
    }
  }
  r.detail = "degree (q^2-1)/2 for q in {5,7,11,13}";
  return r;
}

CriterionResult steinberg_main_term() {
  CriterionResult r{4, "steinberg-main-term", true, ""};
  const Rational bound = frac(5, 2);
  Rational worst = 0;
  long cells = 0;
  for (long q = 2; q <= 199; ++q) {
    if (!is_prime(q)) continue;
    for (long k = 2; k <= 40; k += 2) {
      const Rational gap =
          rational_abs(Rational(dim_new(k, q)) - frac((k - 1) * (q - 1), 12));
      if (gap > worst) worst = gap;
      ++cells;
    }
  }
  r.passed = worst <= bound;
  r.detail = std::to_string(cells) + " cells, worst gap " + to_fraction_string(worst) +
             " <= 5/2";
  if (!r.passed) r.detail = "gap " + to_fraction_string(worst) + " exceeds 5/2";
  return r;
}

CriterionResult equidistribution_residuals() {
  CriterionResult r{5, "equidistribution-residuals", true, ""};
  const Rational cap = frac(9, 5);       // single pilot constant across k
  const Rational spread_cap = frac(11, 5);
  Rational max_slope = 0, min_slope = 0;
  bool first = true;
  std::string slopes;
  for (long k : {2L, 4L, 12L, 20L}) {
    const EquidistReport report = equidist_report(k, 125, 500);
    const Rational slope = report.residual_slope;
    if (!slopes.empty()) slopes += " ";
    slopes += decimal_string(slope, 6);
    if (first || slope > max_slope) max_slope = slope;
    if (first || slope < min_slope) min_slope = slope;
    first = false;
  }
  if (max_slope > cap) {
    r.passed = false;
    r.detail = "slope " + decimal_string(max_slope, 6) + " exceeds 9/5";
    return r;
  }
  if (min_slope <= 0 || max_slope > spread_cap * min_slope) {
    r.passed = false;
    r.detail = "slope spread beyond 11/5: " + slopes;
    return r;
  }
  r.detail = "slopes {" + slopes + "} within 9/5, spread within 11/5";
  return r;
}

CriterionResult plancherel_inversion() {
  CriterionResult r{6, "plancherel-inversion", true, ""};
  long double worst = 0.0L;
  for (long p : {2L, 3L, 5L, 101L}) {
    for (long m = 0; m <= 6; ++m) {
      PlancherelSpec spec;
      spec.p = p;
      const long double integral = plancherel_integrate(
          spec, [m, p](long double x) { return satake_trace(m, p, x); });
      const long double target = (m == 0) ? 1.0L : 0.0L;
      const long double err = fabsl(integral - target);
      if (err > worst) worst = err;
    }
  }
  r.passed = worst < 1e-10L;
  std::ostringstream os;
  os << "max |residual| " << static_cast<double>(worst) << " over m<=6, p in {2,3,5,101}";
  r.detail = os.str();
  return r;
}

CriterionResult orbital_decay() {
  CriterionResult r{7, "orbital-decay", true, ""};
  const Rational c1 = 2;  // frozen pilot constant, shared by every gamma at fixed p
  Rational worst_margin = 0;
  for (long p : {3L, 5L, 7L}) {
    const long eps = (p % 4 == 3) ? -1 : 2;
    const long s_max = (p == 3) ? 4 : 2;  // fiber guard p^{3s} <= 10^6
    for (long m = 1; m <= 3; ++m) {
      const PadicMatrix gamma = congruence_element(p, m);
      const Rational half_weight =
          Rational(pow_integer(p, static_cast<unsigned long>(m)));  // D^{-1/2}
      std::vector<Rational> mixed;
      for (long s = 0; s <= s_max; ++s) {
        mixed.push_back(orbital_TtKs(gamma, 0, s, eps));
      }
      for (long s = 0; s <= s_max; ++s) {
        if (s >= 1 && mixed[s] > mixed[s - 1]) {
          r.passed = false;
          r.detail = "monotonicity fails at p=" + std::to_string(p) +
                     " m=" + std::to_string(m) + " s=" + std::to_string(s);
          return r;
        }
        if (s >= m + 2 && mixed[s] * p > mixed[s - 1]) {
          r.passed = false;
          r.detail = "level decay fails at p=" + std::to_string(p) +
                     " m=" + std::to_string(m) + " s=" + std::to_string(s);
          return r;
        }
        // a_s <= C1 (s+1) p^{-s}  with  a_s = D^{1/2} O(s).
        const Rational lhs = (mixed[s] / half_weight) *
                             Rational(pow_integer(p, static_cast<unsigned long>(s)));
        const Rational margin = lhs / (c1 * Rational(s + 1));
        if (margin > worst_margin) worst_margin = margin;
        if (margin > 1) {
          r.passed = false;
          r.detail = "uniform constant fails at p=" + std::to_string(p) +
                     " m=" + std::to_string(m) + " s=" + std::to_string(s);
          return r;
        }
      }
      for (long s = m + 1; s <= m + 2; ++s) {
        if (orbital_Ks(gamma, s) != 0) {
          r.passed = false;
          r.detail = "support extends past singular depth at p=" + std::to_string(p) +
                     " m=" + std::to_string(m) + " s=" + std::to_string(s);
          return r;
        }
      }
    }
  }
  r.detail = "C1=2 uniform, worst margin " + to_fraction_string(worst_margin) +
             ", support + decay checks over p in {3,5,7}, m in {1,2,3}";
  return r;
}

CriterionResult lie_descent() {
  CriterionResult r{8, "lie-descent", true, ""};
  long checks = 0;
  for (long p : {3L, 5L, 7L}) {
    const long eps = (p % 4 == 3) ? -1 : 2;
    for (long m = 1; m <= 3; ++m) {
      const Integer pm = pow_integer(p, static_cast<unsigned long>(m));
      const PadicMatrix x =
          make_pgl2(p, 0, Rational(pm), Rational(eps) * Rational(pm), 0);
      const PadicMatrix gamma = cayley(x);
      for (long s = 1; s <= m + 2; ++s) {
        if (orbital_lie(x, s) != orbital_Ks(gamma, s)) {
          r.passed = false;
          r.detail = "mismatch at p=" + std::to_string(p) + " m=" + std::to_string(m) +
                     " s=" + std::to_string(s);
          return r;
        }
        ++checks;
      }
    }
  }
  r.detail = std::to_string(checks) + " exact group/algebra equalities, tolerance 0";
  return r;
}

CriterionResult finite_span_scan() {
  CriterionResult r{9, "finite-span-scan", true, ""};
  long failures = 0;
  for (long q : {3L, 5L, 7L}) failures += count_lie_counterexamples(2, q, true);
  for (long q : {3L, 5L}) failures += count_lie_counterexamples(3, q, false, 10000);
  r.passed = failures == 0;
  r.detail = failures == 0
                 ? "0 counterexamples (exhaustive sl2 q in {3,5,7}; stratified sl3 q in {3,5})"
                 : std::to_string(failures) + " counterexamples";
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance_criteria() {
  std::vector<CriterionResult> results;
  results.push_back(dimension_law());
  results.push_back(pair_count_identity());
  results.push_back(formal_degree_value());
  results.push_back(steinberg_main_term());
  results.push_back(equidistribution_residuals());
  results.push_back(plancherel_inversion());
  results.push_back(orbital_decay());
  results.push_back(lie_descent());
  results.push_back(finite_span_scan());
  return results;
}

std::string render_acceptance(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  for (const CriterionResult& r : results) {
    os << (r.passed ? "PASS" : "FAIL") << " " << (r.index < 10 ? "0" : "")
       << r.index << " " << r.name << ": " << r.detail << "\n";
  }
  return os.str();
}

int run_acceptance_suite(std::ostream& out) {
  std::vector<CriterionResult> results = run_acceptance_criteria();
  const std::string first = render_acceptance(results);

  CriterionResult determinism{10, "determinism", false, ""};
  const std::string second = render_acceptance(run_acceptance_criteria());
  determinism.passed = (first == second);
  determinism.detail = determinism.passed
                           ? "re-run byte-identical (" + std::to_string(first.size()) +
                                 " bytes of criterion output)"
                           : "re-run output differs";
  results.push_back(determinism);

  int failures = 0;
  for (const CriterionResult& r : results) {
    if (!r.passed) ++failures;
  }
  out << render_acceptance(results);
  return failures;
}

}  // namespace autfam
