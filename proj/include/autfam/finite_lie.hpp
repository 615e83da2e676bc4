#pragma once

#include <vector>

#include "autfam/arith.hpp"

namespace autfam {

// n x n matrix over F_q, row-major, entries reduced mod q.  Carries both
// algebra elements (trace 0) and group elements (nonzero determinant).
struct FiniteLieElement {
  long n = 2;
  long q = 3;
  std::vector<long> entries;
};

// Proper Levi-type subalgebras of sl_n: the diagonal torus, or the (2,1)
// block subalgebra (n = 3 only).
enum class LeviKind { torus, block };

// Validates n in {2,3}, q an odd prime <= 7, and reduces entries mod q.
FiniteLieElement make_finite_element(long n, long q, const std::vector<long>& entries);

// True iff x is a scalar matrix mod q (including 0).
bool is_central_element(const FiniteLieElement& x);

// True iff span(m + g_X) is a proper subspace of sl_n, where m is the chosen
// Levi subalgebra and g_X the centralizer of X, by Gaussian elimination over
// F_q.  X must be trace 0; central X violates the lemma hypothesis and is
// rejected with std::domain_error.
bool orth_check_lie(long n, long q, const FiniteLieElement& x, LeviKind levi);

// Group version: g_delta is the Ad(delta)-fixed subspace of sl_n.  delta must
// be invertible; scalar delta violates the hypothesis.
bool orth_check_group(long n, long q, const FiniteLieElement& delta, LeviKind levi);

// Scans algebra elements for failures of the proper-span property against
// every applicable Levi kind and returns the failure count (expected 0).
// n = 2 always enumerates all of sl_2(F_q).  n = 3 enumerates exhaustively
// when requested (q = 3 only, resource guard), otherwise covers all diagonal
// and companion trace-0 matrices plus `samples` seeded pseudorandom elements.
long count_lie_counterexamples(long n, long q, bool exhaustive, long samples = 10000);

// Group-side scan over noncentral invertible delta; same coverage contract.
long count_group_counterexamples(long n, long q, bool exhaustive, long samples = 10000);

}  // namespace autfam
