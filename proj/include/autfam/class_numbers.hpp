#pragma once

#include <string>

#include "autfam/arith.hpp"

namespace autfam {

// Hurwitz class number H(n): weighted class count of positive definite binary
// quadratic forms (primitive or not) of discriminant -n.  H(0) = -1/12, and
// H(n) = 0 unless n = 0 or 3 mod 4.  Forms equivalent to a multiple of
// x^2 + y^2 count 1/2, multiples of x^2 + xy + y^2 count 1/3.
Rational hurwitz_class_number(long n);

// Weighted class number of *primitive* forms of discriminant D < 0
// (1/2 at D = -4, 1/3 at D = -3, the ordinary class number below -4).
Rational weighted_class_number(long D);

// Optional persistent cache for both class-number functions, one "n,num,den"
// line per entry: n >= 0 keys hurwitz_class_number(n), n < 0 keys
// weighted_class_number(n).  The path comes from set_class_number_cache_path
// or, when unset, the AUTFAM_CACHE environment variable; empty path keeps the
// cache in memory only.
void set_class_number_cache_path(const std::string& path);
std::string class_number_cache_path();
// Drop all in-memory entries (the cache file is left alone).
void reset_class_number_cache();

}  // namespace autfam
