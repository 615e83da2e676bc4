#include "autfam/finite_lie.hpp"

#include <random>
#include <stdexcept>
#include <string>

namespace autfam {

namespace {

long reduce(long v, long q) { return ((v % q) + q) % q; }

void validate_shape(long n, long q, const FiniteLieElement& x, const char* who) {
  if (n != 2 && n != 3) throw std::invalid_argument(std::string(who) + ": n must be 2 or 3");
  if (q == 2 || q > 7 || !is_prime(q)) {
    throw std::invalid_argument(std::string(who) + ": q must be an odd prime at most 7");
  }
  if (x.n != n || x.q != q || x.entries.size() != static_cast<size_t>(n * n)) {
    throw std::invalid_argument(std::string(who) + ": element shape does not match n, q");
  }
}

void validate_levi(long n, LeviKind levi, const char* who) {
  if (levi == LeviKind::block && n != 3) {
    throw std::invalid_argument(std::string(who) + ": block Levi is proper only for n = 3");
  }
}

long trace_mod(const FiniteLieElement& x) {
  long t = 0;
  for (long i = 0; i < x.n; ++i) t += x.entries[i * x.n + i];
  return reduce(t, x.q);
}

long det_mod(const FiniteLieElement& x) {
  const std::vector<long>& e = x.entries;
  const long q = x.q;
  if (x.n == 2) return reduce(e[0] * e[3] - e[1] * e[2], q);
  return reduce(e[0] * (e[4] * e[8] - e[5] * e[7]) - e[1] * (e[3] * e[8] - e[5] * e[6]) +
                    e[2] * (e[3] * e[7] - e[4] * e[6]),
                q);
}

// Row-reduces in place and returns the rank.
long fq_rank(std::vector<std::vector<long>>& rows, long q) {
  const size_t dim = rows.empty() ? 0 : rows[0].size();
  size_t rank = 0;
  for (size_t col = 0; col < dim && rank < rows.size(); ++col) {
    size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const long inv = mod_inverse(rows[rank][col], q);
    for (size_t j = col; j < dim; ++j) rows[rank][j] = rows[rank][j] * inv % q;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const long factor = rows[r][col];
      for (size_t j = col; j < dim; ++j) {
        rows[r][j] = reduce(rows[r][j] - factor * rows[rank][j], q);
      }
    }
    ++rank;
  }
  return static_cast<long>(rank);
}

// Basis of the centralizer {Y in sl_n : MY = YM} as length-n^2 vectors: the
// kernel of the commutator system plus the trace constraint.
std::vector<std::vector<long>> centralizer_in_sl(const std::vector<long>& m, long n, long q) {
  const long dim = n * n;
  std::vector<std::vector<long>> sys;
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      std::vector<long> row(dim, 0);
      for (long k = 0; k < n; ++k) {
        row[k * n + j] = reduce(row[k * n + j] + m[i * n + k], q);
        row[i * n + k] = reduce(row[i * n + k] - m[k * n + j], q);
      }
      sys.push_back(std::move(row));
    }
  }
  std::vector<long> trace_row(dim, 0);
  for (long i = 0; i < n; ++i) trace_row[i * n + i] = 1;
  sys.push_back(std::move(trace_row));

  // Reduce and read off the kernel through the free columns.
  const long rank = fq_rank(sys, q);
  std::vector<long> pivot_col(rank, -1);
  std::vector<bool> is_pivot(dim, false);
  for (long r = 0; r < rank; ++r) {
    long c = 0;
    while (c < dim && sys[r][c] == 0) ++c;
    pivot_col[r] = c;
    is_pivot[c] = true;
  }
  std::vector<std::vector<long>> basis;
  for (long free = 0; free < dim; ++free) {
    if (is_pivot[free]) continue;
    std::vector<long> v(dim, 0);
    v[free] = 1;
    for (long r = 0; r < rank; ++r) {
      v[pivot_col[r]] = reduce(-sys[r][free], q);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::vector<long>> levi_basis(long n, long q, LeviKind levi) {
  (void)q;
  std::vector<std::vector<long>> basis;
  const long dim = n * n;
  auto unit = [&](long i, long j, long sign_i2, long j2) {
    std::vector<long> v(dim, 0);
    v[i * n + j] = 1;
    if (sign_i2 >= 0) v[sign_i2 * n + j2] = q - 1;  // -1 mod q
    return v;
  };
  // Diagonal part: E_ii - E_{i+1,i+1}.
  for (long i = 0; i + 1 < n; ++i) basis.push_back(unit(i, i, i + 1, i + 1));
  if (levi == LeviKind::block) {
    basis.push_back(unit(0, 1, -1, 0));
    basis.push_back(unit(1, 0, -1, 0));
  }
  return basis;
}

bool proper_span(long n, long q, const std::vector<long>& m, LeviKind levi) {
  std::vector<std::vector<long>> rows = levi_basis(n, q, levi);
  for (std::vector<long>& v : centralizer_in_sl(m, n, q)) rows.push_back(std::move(v));
  return fq_rank(rows, q) < n * n - 1;
}

bool central_entries(const std::vector<long>& e, long n, long q) {
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      if (i != j && e[i * n + j] != 0) return false;
    }
  }
  for (long i = 1; i < n; ++i) {
    if (reduce(e[i * n + i] - e[0], q) != 0) return false;
  }
  return true;
}

}  // namespace

FiniteLieElement make_finite_element(long n, long q, const std::vector<long>& entries) {
  if (n != 2 && n != 3) throw std::invalid_argument("finite_lie: n must be 2 or 3");
  if (q == 2 || q > 7 || !is_prime(q)) {
    throw std::invalid_argument("finite_lie: q must be an odd prime at most 7");
  }
  if (entries.size() != static_cast<size_t>(n * n)) {
    throw std::invalid_argument("finite_lie: expected n*n entries");
  }
  FiniteLieElement x;
  x.n = n;
  x.q = q;
  x.entries.reserve(entries.size());
  for (long v : entries) x.entries.push_back(reduce(v, q));
  return x;
}

bool is_central_element(const FiniteLieElement& x) {
  return central_entries(x.entries, x.n, x.q);
}

bool orth_check_lie(long n, long q, const FiniteLieElement& x, LeviKind levi) {
  validate_shape(n, q, x, "orth_check_lie");
  validate_levi(n, levi, "orth_check_lie");
  if (trace_mod(x) != 0) {
    throw std::invalid_argument("orth_check_lie: element must have trace 0");
  }
  if (is_central_element(x)) {
    throw std::domain_error("orth_check_lie: central element violates the lemma hypothesis");
  }
  return proper_span(n, q, x.entries, levi);
}

bool orth_check_group(long n, long q, const FiniteLieElement& delta, LeviKind levi) {
  validate_shape(n, q, delta, "orth_check_group");
  validate_levi(n, levi, "orth_check_group");
  if (det_mod(delta) == 0) {
    throw std::invalid_argument("orth_check_group: element must be invertible");
  }
  if (is_central_element(delta)) {
    throw std::domain_error("orth_check_group: scalar element violates the lemma hypothesis");
  }
  // Ad(delta)-fixed vectors are exactly the matrices commuting with delta.
  return proper_span(n, q, delta.entries, levi);
}

namespace {

long scan_element(long n, long q, const std::vector<long>& entries, bool group_side) {
  if (central_entries(entries, n, q)) return 0;
  if (group_side) {
    FiniteLieElement d;
    d.n = n;
    d.q = q;
    d.entries = entries;
    if (det_mod(d) == 0) return 0;
  }
  long failures = 0;
  if (!proper_span(n, q, entries, LeviKind::torus)) ++failures;
  if (n == 3 && !proper_span(n, q, entries, LeviKind::block)) ++failures;
  return failures;
}

// All diagonal and companion matrices (trace 0 on the algebra side, free
// trace on the group side): exact coverage of the semisimple classes with
// rational or irreducible-cubic spectrum.
long scan_structured_sl3(long q, bool group_side) {
  long failures = 0;
  std::vector<long> e(9, 0);
  for (long a = 0; a < q; ++a) {
    for (long b = 0; b < q; ++b) {
      for (long t = 0; t < (group_side ? q : 1L); ++t) {
        e.assign(9, 0);
        e[0] = a;
        e[4] = b;
        e[8] = group_side ? t : reduce(-a - b, q);
        failures += scan_element(3, q, e, group_side);
        // companion of x^3 - t x^2 + c1 x - c0
        e.assign(9, 0);
        e[2] = a;  // c0
        e[3] = 1;
        e[5] = reduce(-b, q);  // -c1
        e[7] = 1;
        e[8] = group_side ? t : 0;
        failures += scan_element(3, q, e, group_side);
      }
    }
  }
  return failures;
}

long scan_sampled_sl3(long q, long samples, bool group_side) {
  std::mt19937_64 rng(0x5eedf00dULL);
  std::uniform_int_distribution<long> pick(0, q - 1);
  long failures = 0;
  std::vector<long> e(9, 0);
  for (long i = 0; i < samples; ++i) {
    if (group_side) {
      for (long j = 0; j < 9; ++j) e[j] = pick(rng);
    } else {
      for (long j = 0; j < 9; ++j) e[j] = pick(rng);
      e[8] = reduce(-e[0] - e[4], q);  // trace 0
    }
    failures += scan_element(3, q, e, group_side);
  }
  return failures;
}

}  // namespace

long count_lie_counterexamples(long n, long q, bool exhaustive, long samples) {
  FiniteLieElement probe;
  probe.n = n;
  probe.q = q;
  probe.entries.assign(static_cast<size_t>(n * n), 0);
  validate_shape(n, q, probe, "count_lie_counterexamples");
  long failures = 0;
  if (n == 2) {
    std::vector<long> e(4, 0);
    for (long a = 0; a < q; ++a) {
      for (long b = 0; b < q; ++b) {
        for (long c = 0; c < q; ++c) {
          e[0] = a;
          e[1] = b;
          e[2] = c;
          e[3] = reduce(-a, q);
          failures += scan_element(2, q, e, false);
        }
      }
    }
    return failures;
  }
  if (exhaustive) {
    if (q != 3) {
      throw std::invalid_argument(
          "count_lie_counterexamples: exhaustive sl_3 scan is guarded to q = 3");
    }
    std::vector<long> e(9, 0);
    for (long idx = 0; idx < 6561; ++idx) {  // 3^8 free coordinates
      long rest = idx;
      for (long j = 0; j < 8; ++j) {
        e[j] = rest % 3;
        rest /= 3;
      }
      e[8] = reduce(-e[0] - e[4], 3);
      failures += scan_element(3, 3, e, false);
    }
    return failures;
  }
  failures += scan_structured_sl3(q, false);
  failures += scan_sampled_sl3(q, samples, false);
  return failures;
}

long count_group_counterexamples(long n, long q, bool exhaustive, long samples) {
  FiniteLieElement probe;
  probe.n = n;
  probe.q = q;
  probe.entries.assign(static_cast<size_t>(n * n), 0);
  validate_shape(n, q, probe, "count_group_counterexamples");
  long failures = 0;
  if (n == 2) {
    std::vector<long> e(4, 0);
    for (long a = 0; a < q; ++a)
      for (long b = 0; b < q; ++b)
        for (long c = 0; c < q; ++c)
          for (long d = 0; d < q; ++d) {
            e = {a, b, c, d};
            failures += scan_element(2, q, e, true);
          }
    return failures;
  }
  if (exhaustive) {
    if (q != 3) {
      throw std::invalid_argument(
          "count_group_counterexamples: exhaustive GL_3 scan is guarded to q = 3");
    }
    std::vector<long> e(9, 0);
    for (long idx = 0; idx < 19683; ++idx) {  // 3^9
      long rest = idx;
      for (long j = 0; j < 9; ++j) {
        e[j] = rest % 3;
        rest /= 3;
      }
      failures += scan_element(3, 3, e, true);
    }
    return failures;
  }
  failures += scan_structured_sl3(q, true);
  failures += scan_sampled_sl3(q, samples, true);
  return failures;
}

}  // namespace autfam
