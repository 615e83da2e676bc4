#include "autfam/class_numbers.hpp"

#include <cstdlib>
#include <fstream>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace autfam {

namespace {

struct HurwitzCache {
  std::shared_mutex mutex;
  std::unordered_map<long, Rational> values;
  std::string explicit_path;
  bool path_overridden = false;
  bool file_loaded = false;
};

HurwitzCache& cache() {
  static HurwitzCache state;
  return state;
}

std::string resolved_path_locked(const HurwitzCache& state) {
  if (state.path_overridden) return state.explicit_path;
  const char* env = std::getenv("AUTFAM_CACHE");
  return env ? std::string(env) : std::string();
}

bool parse_field(const std::string& field, mpz_class* out) {
  if (field.empty()) return false;
  return mpz_set_str(out->get_mpz_t(), field.c_str(), 10) == 0;
}

// Cache lines are "n,num,den".  Anything else is a hard error: a corrupt
// cache silently feeding wrong class numbers would poison every consumer.
void load_file_locked(HurwitzCache& state) {
  if (state.file_loaded) return;
  state.file_loaded = true;
  const std::string path = resolved_path_locked(state);
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) return;  // absent file: created lazily on first append
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? std::string::npos
                                            : line.find(',', c1 + 1);
    mpz_class n, num, den;
    const bool ok = c2 != std::string::npos &&
                    line.find(',', c2 + 1) == std::string::npos &&
                    parse_field(line.substr(0, c1), &n) &&
                    parse_field(line.substr(c1 + 1, c2 - c1 - 1), &num) &&
                    parse_field(line.substr(c2 + 1), &den) && den > 0 &&
                    n.fits_slong_p();
    if (!ok) {
      throw std::runtime_error("class number cache format error: " + path +
                               " line " + std::to_string(line_no) + ": \"" +
                               line + "\"");
    }
    Rational value(num, den);
    value.canonicalize();
    state.values.emplace(n.get_si(), value);
  }
}

void append_line(const std::string& path, long n, const Rational& value) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::app);
  if (!out) return;  // cache is an optimization; an unwritable file is not fatal
  out << n << ',' << value.get_num() << ',' << value.get_den() << '\n';
}

}  // namespace

Rational weighted_class_number(long D) {
  if (D >= 0) {
    throw std::invalid_argument(
        "weighted_class_number: discriminant must be negative");
  }
  const long residue = ((D % 4) + 4) % 4;
  if (residue != 0 && residue != 1) {
    throw std::invalid_argument(
        "weighted_class_number: discriminant must be 0 or 1 mod 4");
  }

  // Shares the persistent cache with hurwitz_class_number; the negative key
  // keeps the two families of entries apart.  Trace sweeps re-query the same
  // discriminants heavily, so this is the entry point that profits most.
  HurwitzCache& state = cache();
  {
    std::shared_lock<std::shared_mutex> lock(state.mutex);
    if (state.file_loaded) {
      if (auto it = state.values.find(D); it != state.values.end()) {
        return it->second;
      }
    }
  }
  {
    std::unique_lock<std::shared_mutex> lock(state.mutex);
    load_file_locked(state);
    if (auto it = state.values.find(D); it != state.values.end()) {
      return it->second;
    }
  }

  // Reduced primitive forms ax^2 + bxy + cy^2: -a < b <= a <= c, b >= 0 when
  // a == c, gcd(a,b,c) = 1.  Each discriminant class has exactly one.
  const long abs_disc = -D;
  long count = 0;
  for (long a = 1; 3 * a * a <= abs_disc; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      if (((b - D) & 1L) != 0) continue;
      const long four_ac = b * b + abs_disc;
      if (four_ac % (4 * a) != 0) continue;
      const long c = four_ac / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1) continue;
      ++count;
    }
  }

  Rational result(count);
  if (D == -3) result = Rational(1, 3);
  if (D == -4) result = Rational(1, 2);

  std::unique_lock<std::shared_mutex> lock(state.mutex);
  const auto [it, inserted] = state.values.emplace(D, result);
  if (inserted) append_line(resolved_path_locked(state), D, result);
  return it->second;
}

Rational hurwitz_class_number(long n) {
  if (n < 0) {
    throw std::invalid_argument("hurwitz_class_number: n must be nonnegative");
  }
  if (n == 0) return Rational(-1, 12);
  const long residue = n % 4;
  if (residue == 1 || residue == 2) return Rational(0);

  HurwitzCache& state = cache();
  {
    std::shared_lock<std::shared_mutex> lock(state.mutex);
    if (state.file_loaded) {
      if (auto it = state.values.find(n); it != state.values.end()) {
        return it->second;
      }
    }
  }
  {
    std::unique_lock<std::shared_mutex> lock(state.mutex);
    load_file_locked(state);
    if (auto it = state.values.find(n); it != state.values.end()) {
      return it->second;
    }
  }

  Rational total(0);
  for (long f = 1; f * f <= n; ++f) {
    if (n % (f * f) != 0) continue;
    const long m = n / (f * f);
    const long rm = m % 4;
    if (rm == 1 || rm == 2) continue;
    total += weighted_class_number(-m);
  }

  std::unique_lock<std::shared_mutex> lock(state.mutex);
  const auto [it, inserted] = state.values.emplace(n, total);
  if (inserted) append_line(resolved_path_locked(state), n, total);
  return it->second;
}

void set_class_number_cache_path(const std::string& path) {
  HurwitzCache& state = cache();
  std::unique_lock<std::shared_mutex> lock(state.mutex);
  state.explicit_path = path;
  state.path_overridden = true;
  state.file_loaded = false;
}

std::string class_number_cache_path() {
  HurwitzCache& state = cache();
  std::shared_lock<std::shared_mutex> lock(state.mutex);
  return resolved_path_locked(state);
}

void reset_class_number_cache() {
  HurwitzCache& state = cache();
  std::unique_lock<std::shared_mutex> lock(state.mutex);
  state.values.clear();
  state.file_loaded = false;
}

}  // namespace autfam
