#include "autfam/plancherel.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>

#include "autfam/eichler_selberg.hpp"

namespace autfam {

namespace {

constexpr long double kPi = 3.14159265358979323846264338327950288L;

void validate_residue_cardinality(long p) {
  if (p < 2 || !is_prime(p)) {
    throw std::invalid_argument("plancherel: residue cardinality must be prime");
  }
}

void validate_spec(const PlancherelSpec& spec) {
  validate_residue_cardinality(spec.p);
  if (!(spec.tolerance > 0.0L) || spec.tolerance > 1e-8L) {
    throw std::invalid_argument("plancherel: tolerance must lie in (0, 1e-8]");
  }
}

// Gauss-Legendre nodes and weights on [-1, 1], cached per order.
const std::pair<std::vector<long double>, std::vector<long double>>&
gauss_legendre(long order) {
  static std::map<long, std::pair<std::vector<long double>, std::vector<long double>>>
      table;
  auto it = table.find(order);
  if (it != table.end()) return it->second;

  std::vector<long double> nodes(order), weights(order);
  for (long i = 0; i < order; ++i) {
    // Newton iteration from the Chebyshev-angle initial guess.
    long double x = std::cos(kPi * (i + 0.75L) / (order + 0.5L));
    for (int iter = 0; iter < 64; ++iter) {
      long double p0 = 1.0L, p1 = x;
      for (long n = 2; n <= order; ++n) {
        const long double p2 = ((2 * n - 1) * x * p1 - (n - 1) * p0) / n;
        p0 = p1;
        p1 = p2;
      }
      const long double deriv = order * (x * p1 - p0) / (x * x - 1.0L);
      const long double step = p1 / deriv;
      x -= step;
      if (std::fabs(step) < 1e-19L) break;
    }
    long double p0 = 1.0L, p1 = x;
    for (long n = 2; n <= order; ++n) {
      const long double p2 = ((2 * n - 1) * x * p1 - (n - 1) * p0) / n;
      p0 = p1;
      p1 = p2;
    }
    const long double deriv = order * (x * p1 - p0) / (x * x - 1.0L);
    nodes[i] = x;
    weights[i] = 2.0L / ((1.0L - x * x) * deriv * deriv);
  }
  return table.emplace(order, std::make_pair(std::move(nodes), std::move(weights)))
      .first->second;
}

// integral over theta in [0, pi] of f(2 cos theta) * density * 2 sin theta.
long double integrate_theta(long p, long order,
                            const std::function<long double(long double)>& f) {
  const auto& [nodes, weights] = gauss_legendre(order);
  long double sum = 0.0L, compensation = 0.0L;
  for (long i = 0; i < order; ++i) {
    const long double theta = kPi * (nodes[i] + 1.0L) / 2.0L;
    const long double x = 2.0L * std::cos(theta);
    const long double value = f(x) * plancherel_density(p, x) * 2.0L *
                              std::sin(theta) * weights[i] * kPi / 2.0L;
    const long double y = value - compensation;  // Kahan: the sum cancels heavily
    const long double t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
  }
  return sum;
}

// Coefficients of x^j in the basis U_i(x/2): x * U_i = U_{i+1} + U_{i-1}.
std::vector<Integer> power_in_trace_basis(long j) {
  std::vector<Integer> coeff{1};
  for (long step = 0; step < j; ++step) {
    std::vector<Integer> next(coeff.size() + 1, Integer(0));
    for (std::size_t i = 0; i < coeff.size(); ++i) {
      next[i + 1] += coeff[i];
      if (i >= 1) next[i - 1] += coeff[i];
    }
    coeff = std::move(next);
  }
  return coeff;
}

}  // namespace

long double plancherel_density(long p, long double x) {
  validate_residue_cardinality(p);
  if (std::fabs(x) > 2.0L) {
    throw std::domain_error("plancherel_density: parameter outside [-2, 2]");
  }
  const long double rp = std::sqrt(static_cast<long double>(p));
  const long double edge = (rp + 1.0L / rp) * (rp + 1.0L / rp);
  return (p + 1.0L) / kPi * std::sqrt(1.0L - x * x / 4.0L) / (edge - x * x);
}

long double satake_trace(long m, long p, long double x) {
  validate_residue_cardinality(p);
  if (m < 0) throw std::invalid_argument("satake_trace: power must be >= 0");
  if (m == 0) return 1.0L;
  const long double rp = std::sqrt(static_cast<long double>(p));
  long double prev = rp * x;  // t_1
  if (m == 1) return prev;
  long double curr = p * x * x - p - 1.0L;  // t_2
  for (long i = 2; i < m; ++i) {
    const long double next = rp * x * curr - p * prev;
    prev = curr;
    curr = next;
  }
  return curr;
}

long double plancherel_integrate(const PlancherelSpec& spec,
                                 const std::function<long double(long double)>& f) {
  validate_spec(spec);
  long double previous = integrate_theta(spec.p, 16, f);
  for (long order = 32; order <= 4096; order *= 2) {
    const long double current = integrate_theta(spec.p, order, f);
    if (std::fabs(current - previous) <= spec.tolerance) return current;
    previous = current;
  }
  return previous;
}

long double plancherel_moment(long p, long j) {
  if (j < 0 || j > 16) {
    throw std::invalid_argument("plancherel_moment: power must lie in [0, 16]");
  }
  return plancherel_integrate({p, 1e-12L},
                              [j](long double x) { return std::pow(x, j); });
}

Rational plancherel_moment_exact(long p, long j) {
  validate_residue_cardinality(p);
  if (j < 0 || j > 16) {
    throw std::invalid_argument("plancherel_moment_exact: power must lie in [0, 16]");
  }
  const std::vector<Integer> coeff = power_in_trace_basis(j);
  Rational total(0);
  for (std::size_t i = 0; i < coeff.size(); i += 2) {
    Rational term(coeff[i], pow_integer(p, i / 2));
    term.canonicalize();
    total += term;
  }
  return total;
}

MomentComparisonReport compare_family_moments(long k, long N, long p,
                                              long max_power) {
  validate_residue_cardinality(p);
  if (max_power < 0 || max_power > 8) {
    throw std::invalid_argument("compare_family_moments: power cap must lie in [0, 8]");
  }
  if (N % p == 0) {
    throw std::invalid_argument("compare_family_moments: p must not divide the level");
  }
  const long m = dim_new(k, N);
  if (m <= 0) {
    throw std::domain_error("compare_family_moments: empty family");
  }

  // lambda_sum[i] = trace_new(k, N, p^i) / p^{i(k-1)/2}, the exact sum of
  // normalized eigenvalue traces U_i over the family.
  std::vector<SqrtScaled> lambda_sum;
  long power = 1;
  for (long i = 0; i <= max_power; ++i) {
    const Rational trace = trace_new({k, N, power}).value;
    Rational coef(trace.get_num(), pow_integer(p, i * (k / 2)));
    coef.canonicalize();
    lambda_sum.push_back(SqrtScaled(coef, power));
    if (i < max_power) {
      if (power > std::numeric_limits<long>::max() / p) {
        throw std::domain_error("compare_family_moments: p^j overflows the index range");
      }
      power *= p;
    }
  }

  MomentComparisonReport report;
  report.k = k;
  report.N = N;
  report.p = p;
  report.max_power = max_power;
  for (long j = 0; j <= max_power; ++j) {
    const std::vector<Integer> coeff = power_in_trace_basis(j);
    SqrtScaled empirical;
    for (std::size_t i = 0; i < coeff.size(); ++i) {
      if (coeff[i] == 0) continue;
      empirical += Rational(coeff[i]) * lambda_sum[i];
    }
    empirical *= Rational(1, m);
    MomentComparisonRow row;
    row.j = j;
    row.empirical = empirical;
    row.limit = (j % 2 == 0) ? SqrtScaled(plancherel_moment_exact(p, j))
                             : SqrtScaled();
    row.discrepancy = (empirical - row.limit).abs();
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace autfam
