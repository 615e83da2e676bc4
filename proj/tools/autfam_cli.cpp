// autfam: batch front door for the exact automorphic-family calculators.
// Subcommands wrap one library module each; `verify` runs the release
// criteria.  All numeric output is exact unless --decimal is given, and every
// artifact is byte-identical across runs and across --threads values.

#include <atomic>
#include <exception>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "autfam/acceptance.hpp"
#include "autfam/arith.hpp"
#include "autfam/class_numbers.hpp"
#include "autfam/eichler_selberg.hpp"
#include "autfam/families.hpp"
#include "autfam/finite_lie.hpp"
#include "autfam/local_reps.hpp"
#include "autfam/orbital.hpp"
#include "autfam/plancherel.hpp"
#include "autfam/sqrt_scaled.hpp"
#include "autfam/tree.hpp"

namespace {

using autfam::Rational;
using autfam::SqrtScaled;
using Json = nlohmann::ordered_json;

struct CommonOptions {
  std::string format;      // empty keeps the subcommand default
  std::string out_path;    // empty writes to stdout
  int decimal = -1;        // digits after the point; negative keeps exact
  long threads = 1;
  std::string cache_path;  // overrides AUTFAM_CACHE
};

void add_common_flags(CLI::App* cmd, CommonOptions* opt) {
  cmd->add_option("--format", opt->format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", opt->out_path, "write the artifact here instead of stdout");
  cmd->add_option("--decimal", opt->decimal,
                  "render values as truncated decimals with this many digits")
      ->check(CLI::Range(0, 40));
  cmd->add_option("--threads", opt->threads,
                  "parallelism degree; output is byte-identical for any value")
      ->check(CLI::Range(1, 256));
  cmd->add_option("--cache", opt->cache_path,
                  "class-number cache file (overrides AUTFAM_CACHE)");
}

std::string chosen_format(const CommonOptions& opt, const char* fallback) {
  return opt.format.empty() ? std::string(fallback) : opt.format;
}

void apply_cache(const CommonOptions& opt) {
  if (!opt.cache_path.empty()) autfam::set_class_number_cache_path(opt.cache_path);
}

void emit(const CommonOptions& opt, const std::string& text) {
  if (opt.out_path.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(opt.out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output path: " + opt.out_path);
  out << text;
  out.flush();
  if (!out) throw std::invalid_argument("short write to " + opt.out_path);
}

// ---- rendering -------------------------------------------------------------

std::string render_rational(const Rational& value, const CommonOptions& opt) {
  if (opt.decimal >= 0)
    return SqrtScaled(value).to_decimal_string(static_cast<unsigned>(opt.decimal));
  return autfam::to_fraction_string(value);
}

// "num/den" for rational values, "num/den*p^(k/2)" (k odd, num and den coprime
// to p) when a half-integral power of p remains.
std::string render_half_power(const SqrtScaled& value, long p,
                              const CommonOptions& opt) {
  if (opt.decimal >= 0)
    return value.to_decimal_string(static_cast<unsigned>(opt.decimal));
  if (value.is_rational()) return autfam::to_fraction_string(value.coef());
  if (value.radicand() != p) return value.to_string();
  autfam::Integer num = value.coef().get_num();
  autfam::Integer den = value.coef().get_den();
  long shift = 0;
  while (num != 0 && mpz_divisible_ui_p(num.get_mpz_t(), static_cast<unsigned long>(p))) {
    num /= p;
    ++shift;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p))) {
    den /= p;
    --shift;
  }
  Rational unit(num, den);
  unit.canonicalize();
  return autfam::to_fraction_string(unit) + "*" + std::to_string(p) + "^(" +
         std::to_string(2 * shift + 1) + "/2)";
}

// General symbolic value, "num/den*sqrt(r)"; used where the radicand is not a
// fixed prime (equidistribution rows scale by sqrt(n)).
std::string render_symbolic(const SqrtScaled& value, const CommonOptions& opt) {
  if (opt.decimal >= 0)
    return value.to_decimal_string(static_cast<unsigned>(opt.decimal));
  return value.to_string();
}

std::string render_float(long double value, int digits) {
  std::ostringstream out;
  out << std::setprecision(digits <= 0 ? 12 : digits) << value;
  return out.str();
}

std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    quoted += c;
    if (c == '"') quoted += '"';
  }
  quoted += '"';
  return quoted;
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string line;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += csv_field(fields[i]);
  }
  line += '\n';
  return line;
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

// ---- deterministic parallel sweep -------------------------------------------

// Applies cell to 0..count-1 on up to `threads` workers; results come back in
// index order, so the reduction is independent of the schedule.
template <typename T, typename F>
std::vector<T> parallel_map(long count, long threads, F&& cell) {
  std::vector<T> out(static_cast<size_t>(count));
  const long workers = std::min(threads, count);
  if (workers <= 1) {
    for (long i = 0; i < count; ++i) out[static_cast<size_t>(i)] = cell(i);
    return out;
  }
  std::atomic<long> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_guard;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (long w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (long i = next.fetch_add(1); i < count && !failed.load();
             i = next.fetch_add(1)) {
          out[static_cast<size_t>(i)] = cell(i);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_guard);
        if (!error) error = std::current_exception();
        failed.store(true);
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

// ---- argument helpers --------------------------------------------------------

Rational parse_rational(const std::string& text) {
  Rational value;
  if (value.set_str(text, 10) != 0)
    throw std::invalid_argument("not a rational number: '" + text + "'");
  if (value.get_den() == 0)
    throw std::invalid_argument("zero denominator in '" + text + "'");
  value.canonicalize();
  return value;
}

std::vector<Rational> parse_matrix_entries(const std::string& text) {
  std::vector<Rational> entries;
  std::string piece;
  std::istringstream in(text);
  while (std::getline(in, piece, ',')) entries.push_back(parse_rational(piece));
  if (entries.size() != 4)
    throw std::invalid_argument("--gamma needs four comma-separated entries a,b,c,d");
  return entries;
}

// ---- trace -------------------------------------------------------------------

struct TraceParams {
  long k = 2;
  long level = 1;
  long n = 1;
  long n_max = 0;  // 0 keeps the single-index mode
  bool newspace = false;
};

int run_trace(const TraceParams& p, const CommonOptions& opt) {
  apply_cache(opt);
  const char* side = p.newspace ? "new" : "full";
  auto one = [&](long n) {
    autfam::TraceQuery q;
    q.k = p.k;
    q.N = p.level;
    q.n = n;
    return (p.newspace ? autfam::trace_new(q) : autfam::trace_hecke(q)).value;
  };

  if (p.n_max <= 0) {
    const Rational value = one(p.n);
    const std::string format = chosen_format(opt, "plain");
    if (format == "csv") {
      emit(opt, csv_line({"k", "level", "subspace", "n", "trace"}) +
                    csv_line({std::to_string(p.k), std::to_string(p.level), side,
                              std::to_string(p.n), render_rational(value, opt)}));
    } else if (format == "json") {
      Json j;
      j["query"] = {{"command", "trace"}, {"k", p.k},        {"level", p.level},
                    {"n", p.n},           {"subspace", side}};
      j["result"] = {{"trace", render_rational(value, opt)}};
      emit(opt, json_text(j));
    } else {
      emit(opt, render_rational(value, opt) + "\n");
    }
    return 0;
  }

  std::vector<long> indices;
  for (long n = 1; n <= p.n_max; ++n)
    if (std::gcd(n, p.level) == 1) indices.push_back(n);
  const std::vector<Rational> values = parallel_map<Rational>(
      static_cast<long>(indices.size()), opt.threads,
      [&](long i) { return one(indices[static_cast<size_t>(i)]); });

  const std::string format = chosen_format(opt, "csv");
  if (format == "json") {
    Json rows = Json::array();
    for (size_t i = 0; i < indices.size(); ++i)
      rows.push_back({{"n", indices[i]}, {"trace", render_rational(values[i], opt)}});
    Json j;
    j["query"] = {{"command", "trace"}, {"k", p.k},        {"level", p.level},
                  {"n_max", p.n_max},   {"subspace", side}};
    j["result"] = {{"rows", rows}};
    emit(opt, json_text(j));
  } else {
    std::string text = csv_line({"n", "trace"});
    for (size_t i = 0; i < indices.size(); ++i)
      text += csv_line({std::to_string(indices[i]), render_rational(values[i], opt)});
    emit(opt, text);
  }
  return 0;
}

// ---- dims ----------------------------------------------------------------------

struct DimsParams {
  std::vector<long> k = {2};
  std::vector<long> level = {1};
};

int run_dims(const DimsParams& p, const CommonOptions& opt) {
  apply_cache(opt);
  struct Cell {
    long k = 0;
    long level = 0;
    long cusp = 0;
    long fresh = 0;
  };
  const long count = static_cast<long>(p.k.size() * p.level.size());
  const std::vector<Cell> cells = parallel_map<Cell>(count, opt.threads, [&](long i) {
    Cell cell;
    cell.k = p.k[static_cast<size_t>(i) / p.level.size()];
    cell.level = p.level[static_cast<size_t>(i) % p.level.size()];
    cell.cusp = autfam::dim_cusp(cell.k, cell.level);
    cell.fresh = autfam::dim_new(cell.k, cell.level);
    return cell;
  });

  // A single cell prints its newspace dimension bare; grids default to CSV.
  const std::string format = chosen_format(opt, count == 1 ? "plain" : "csv");
  if (format == "csv") {
    std::string text = csv_line({"k", "level", "dim_cusp", "dim_new"});
    for (const Cell& cell : cells) {
      text += csv_line({std::to_string(cell.k), std::to_string(cell.level),
                        std::to_string(cell.cusp), std::to_string(cell.fresh)});
    }
    emit(opt, text);
  } else if (format == "json") {
    Json rows = Json::array();
    for (const Cell& cell : cells) {
      rows.push_back({{"k", cell.k},
                      {"level", cell.level},
                      {"dim_cusp", cell.cusp},
                      {"dim_new", cell.fresh}});
    }
    Json j;
    j["query"] = {{"command", "dims"}, {"k", p.k}, {"level", p.level}};
    j["result"] = {{"rows", rows}};
    emit(opt, json_text(j));
  } else {
    std::string text;
    for (const Cell& cell : cells) text += std::to_string(cell.fresh) + "\n";
    emit(opt, text);
  }
  return 0;
}

// ---- family-count ----------------------------------------------------------------

struct FamilyCountParams {
  long k = 2;
  long q = 0;                   // conductor-exponent-3 family at q^3
  std::vector<long> steinberg;  // Steinberg family at squarefree q_S
};

int run_family_count(const FamilyCountParams& p, const CommonOptions& opt) {
  apply_cache(opt);
  if ((p.q > 0) == !p.steinberg.empty())
    throw std::invalid_argument("family-count needs exactly one of --q and --steinberg");

  const std::string format = chosen_format(opt, "json");
  if (p.q > 0) {
    const Rational pair = autfam::count_sc_pair(p.k, p.q);
    const long actual = autfam::count_sc_aggregate(p.k, p.q);
    if (format == "csv") {
      emit(opt, csv_line({"kind", "k", "q", "pair_multiplicity", "family_size"}) +
                    csv_line({"supercuspidal_cube", std::to_string(p.k),
                              std::to_string(p.q), render_rational(pair, opt),
                              std::to_string(actual)}));
    } else {
      Json j;
      j["query"] = {{"command", "family-count"}, {"k", p.k}, {"q", p.q}};
      j["result"] = {{"kind", "supercuspidal_cube"},
                     {"pair_multiplicity", render_rational(pair, opt)},
                     {"family_size", actual}};
      emit(opt, json_text(j));
    }
    return 0;
  }

  const Rational main = autfam::count_st_main(p.k, p.steinberg);
  const long actual = autfam::count_st_actual(p.k, p.steinberg);
  const Rational gap = autfam::steinberg_discrepancy(p.k, p.steinberg);
  const Rational tau = autfam::tau_prime_pgl2(p.steinberg);
  std::string primes;
  for (size_t i = 0; i < p.steinberg.size(); ++i) {
    if (i) primes += ' ';
    primes += std::to_string(p.steinberg[i]);
  }
  if (format == "csv") {
    emit(opt,
         csv_line({"kind", "k", "primes", "main_term", "actual", "discrepancy"}) +
             csv_line({"steinberg_squarefree", std::to_string(p.k), primes,
                       render_rational(main, opt), std::to_string(actual),
                       render_rational(gap, opt)}));
  } else {
    Json j;
    j["query"] = {{"command", "family-count"}, {"k", p.k}, {"steinberg", p.steinberg}};
    j["result"] = {{"kind", "steinberg_squarefree"},
                   {"main_term", render_rational(main, opt)},
                   {"actual", actual},
                   {"discrepancy", render_rational(gap, opt)},
                   {"tau_prime", render_rational(tau, opt)}};
    emit(opt, json_text(j));
  }
  return 0;
}

// ---- equidist -----------------------------------------------------------------

struct EquidistParams {
  long k = 2;
  long level = 5;
  long n_max = 100;
};

int run_equidist(const EquidistParams& p, const CommonOptions& opt) {
  apply_cache(opt);
  const autfam::EquidistReport report = autfam::equidist_report(p.k, p.level, p.n_max);
  const std::string format = chosen_format(opt, "csv");
  if (format == "json") {
    Json rows = Json::array();
    for (const autfam::EquidistRow& row : report.rows) {
      rows.push_back({{"n", row.n},
                      {"S_n", render_symbolic(row.value, opt)},
                      {"residual", render_rational(row.residual, opt)},
                      {"is_square", row.is_square_index}});
    }
    Json j;
    j["query"] = {{"command", "equidist"}, {"k", p.k}, {"level", p.level},
                  {"n_max", p.n_max}};
    j["result"] = {{"family_size", report.family_size},
                   {"residual_slope", render_rational(report.residual_slope, opt)},
                   {"rows", rows}};
    emit(opt, json_text(j));
  } else {
    std::string text = csv_line({"n", "S_n", "residual", "is_square"});
    for (const autfam::EquidistRow& row : report.rows) {
      text += csv_line({std::to_string(row.n), render_symbolic(row.value, opt),
                        render_rational(row.residual, opt),
                        row.is_square_index ? "true" : "false"});
    }
    emit(opt, text);
  }
  return 0;
}

// ---- orbital -----------------------------------------------------------------

struct OrbitalParams {
  long p = 3;
  std::string gamma;
  long s_max = 2;
};

const char* torus_name(autfam::TorusType t) {
  switch (t) {
    case autfam::TorusType::unramified: return "unramified";
    case autfam::TorusType::ramified: return "ramified";
    case autfam::TorusType::split: return "split";
    case autfam::TorusType::central: return "central";
  }
  return "unknown";
}

int run_orbital(const OrbitalParams& p, const CommonOptions& opt) {
  apply_cache(opt);
  const std::vector<Rational> e = parse_matrix_entries(p.gamma);
  const autfam::PadicMatrix gamma = autfam::make_pgl2(p.p, e[0], e[1], e[2], e[3]);
  const autfam::OrbitalProfile profile = autfam::decay_profile(gamma, p.s_max);

  for (const std::string& flag : profile.flags)
    std::cerr << "warning: " << flag << "\n";

  const std::string format = chosen_format(opt, "csv");
  if (format == "json") {
    Json rows = Json::array();
    for (const autfam::OrbitalRow& row : profile.rows) {
      rows.push_back({{"s", autfam::to_fraction_string(row.s)},
                      {"raw", render_rational(row.raw, opt)},
                      {"a_s", render_half_power(row.a, p.p, opt)},
                      {"mixed_raw", render_rational(row.raw_mixed, opt)},
                      {"mixed_a_s", render_half_power(row.a_mixed, p.p, opt)}});
    }
    Json j;
    j["query"] = {{"command", "orbital"}, {"p", p.p}, {"gamma", p.gamma},
                  {"s_max", p.s_max}};
    j["result"] = {{"torus", torus_name(profile.inv.torus)},
                   {"D_valuation", profile.inv.D_valuation},
                   {"md", autfam::to_fraction_string(profile.inv.md)},
                   {"sd", autfam::to_fraction_string(profile.inv.sd)},
                   {"torus_eps", profile.torus_eps},
                   {"rows", rows},
                   {"flags", profile.flags}};
    emit(opt, json_text(j));
  } else {
    std::string text = csv_line({"s", "raw", "a_s", "mixed_raw", "mixed_a_s"});
    for (const autfam::OrbitalRow& row : profile.rows) {
      text += csv_line({autfam::to_fraction_string(row.s),
                        render_rational(row.raw, opt),
                        render_half_power(row.a, p.p, opt),
                        render_rational(row.raw_mixed, opt),
                        render_half_power(row.a_mixed, p.p, opt)});
    }
    emit(opt, text);
  }
  return 0;
}

// ---- plancherel ----------------------------------------------------------------

struct PlancherelParams {
  long p = 2;
  long m_max = 6;
  long k = 0;      // with --level: compare family moments against the limit
  long level = 0;
};

int run_plancherel(const PlancherelParams& p, const CommonOptions& opt) {
  apply_cache(opt);
  const std::string format = chosen_format(opt, "csv");

  if ((p.k > 0) != (p.level > 0))
    throw std::invalid_argument("plancherel comparison needs both --k and --level");

  if (p.k > 0) {
    const autfam::MomentComparisonReport report =
        autfam::compare_family_moments(p.k, p.level, p.p, p.m_max);
    if (format == "json") {
      Json rows = Json::array();
      for (const autfam::MomentComparisonRow& row : report.rows) {
        rows.push_back({{"j", row.j},
                        {"empirical", render_half_power(row.empirical, p.p, opt)},
                        {"limit", render_half_power(row.limit, p.p, opt)},
                        {"discrepancy", render_half_power(row.discrepancy, p.p, opt)}});
      }
      Json j;
      j["query"] = {{"command", "plancherel"}, {"p", p.p}, {"m_max", p.m_max},
                    {"k", p.k},                {"level", p.level}};
      j["result"] = {{"rows", rows}};
      emit(opt, json_text(j));
    } else {
      std::string text = csv_line({"j", "empirical", "limit", "discrepancy"});
      for (const autfam::MomentComparisonRow& row : report.rows) {
        text += csv_line({std::to_string(row.j),
                          render_half_power(row.empirical, p.p, opt),
                          render_half_power(row.limit, p.p, opt),
                          render_half_power(row.discrepancy, p.p, opt)});
      }
      emit(opt, text);
    }
    return 0;
  }

  const long count = p.m_max + 1;
  const std::vector<Rational> exact = parallel_map<Rational>(
      count, opt.threads, [&](long j) { return autfam::plancherel_moment_exact(p.p, j); });
  const bool with_quadrature = opt.decimal >= 0;
  std::vector<long double> quad(static_cast<size_t>(count), 0.0L);
  if (with_quadrature) {
    const std::vector<long double> q = parallel_map<long double>(
        count, opt.threads, [&](long j) { return autfam::plancherel_moment(p.p, j); });
    quad = q;
  }

  if (format == "json") {
    Json rows = Json::array();
    for (long j = 0; j < count; ++j) {
      Json row = {{"j", j}, {"moment", autfam::to_fraction_string(exact[static_cast<size_t>(j)])}};
      if (with_quadrature) {
        const long double numeric = quad[static_cast<size_t>(j)];
        const long double residual =
            numeric - static_cast<long double>(exact[static_cast<size_t>(j)].get_d());
        row["quadrature"] = render_float(numeric, opt.decimal);
        row["residual"] = render_float(residual, 3);
      }
      rows.push_back(row);
    }
    Json j;
    j["query"] = {{"command", "plancherel"}, {"p", p.p}, {"m_max", p.m_max}};
    j["result"] = {{"rows", rows}};
    emit(opt, json_text(j));
  } else {
    std::vector<std::string> header = {"j", "moment"};
    if (with_quadrature) {
      header.push_back("quadrature");
      header.push_back("residual");
    }
    std::string text = csv_line(header);
    for (long j = 0; j < count; ++j) {
      std::vector<std::string> fields = {
          std::to_string(j), autfam::to_fraction_string(exact[static_cast<size_t>(j)])};
      if (with_quadrature) {
        const long double numeric = quad[static_cast<size_t>(j)];
        const long double residual =
            numeric - static_cast<long double>(exact[static_cast<size_t>(j)].get_d());
        fields.push_back(render_float(numeric, opt.decimal));
        fields.push_back(render_float(residual, 3));
      }
      text += csv_line(fields);
    }
    emit(opt, text);
  }
  return 0;
}

// ---- local-reps -----------------------------------------------------------------

struct LocalRepsParams {
  long q = 5;
};

const char* kind_name(autfam::RepKind kind) {
  switch (kind) {
    case autfam::RepKind::unramified_principal_series:
      return "unramified_principal_series";
    case autfam::RepKind::steinberg: return "steinberg";
    case autfam::RepKind::steinberg_unramified_twist:
      return "steinberg_unramified_twist";
    case autfam::RepKind::depth_zero_supercuspidal:
      return "depth_zero_supercuspidal";
    case autfam::RepKind::simple_supercuspidal: return "simple_supercuspidal";
  }
  return "unknown";
}

int run_local_reps(const LocalRepsParams& p, const CommonOptions& opt) {
  apply_cache(opt);
  const std::vector<autfam::LocalRepDescriptor> catalog = autfam::enumerate_types(p.q);
  const long pairs = autfam::simple_supercuspidal_pair_count(p.q);
  const std::string format = chosen_format(opt, "json");

  if (format == "csv") {
    std::string text = csv_line({"kind", "conductor_exponent", "depth",
                                 "formal_degree", "family_size", "point"});
    for (const autfam::LocalRepDescriptor& d : catalog) {
      text += csv_line(
          {kind_name(d.kind), std::to_string(d.conductor_exponent),
           render_rational(d.depth, opt),
           d.formal_degree ? render_rational(*d.formal_degree, opt) : "",
           std::to_string(d.family_size),
           d.point == autfam::BuildingPoint::vertex ? "vertex" : "barycenter"});
    }
    emit(opt, text);
  } else {
    Json rows = Json::array();
    for (const autfam::LocalRepDescriptor& d : catalog) {
      Json row = {{"kind", kind_name(d.kind)},
                  {"conductor_exponent", d.conductor_exponent},
                  {"depth", render_rational(d.depth, opt)},
                  {"formal_degree", nullptr},
                  {"family_size", d.family_size},
                  {"point", d.point == autfam::BuildingPoint::vertex ? "vertex"
                                                                     : "barycenter"}};
      if (d.formal_degree) row["formal_degree"] = render_rational(*d.formal_degree, opt);
      rows.push_back(row);
    }
    Json j;
    j["query"] = {{"command", "local-reps"}, {"q", p.q}};
    j["result"] = {{"simple_supercuspidal_pairs", pairs}, {"catalog", rows}};
    emit(opt, json_text(j));
  }
  return 0;
}

// ---- finite-lie -----------------------------------------------------------------

struct FiniteLieParams {
  long n = 2;
  long q = 3;
  bool exhaustive = false;
  long samples = 10000;
  std::string side = "both";
};

int run_finite_lie(const FiniteLieParams& p, const CommonOptions& opt) {
  apply_cache(opt);
  const bool want_lie = p.side != "group";
  const bool want_group = p.side != "lie";
  long lie = 0;
  long group = 0;
  if (want_lie) lie = autfam::count_lie_counterexamples(p.n, p.q, p.exhaustive, p.samples);
  if (want_group)
    group = autfam::count_group_counterexamples(p.n, p.q, p.exhaustive, p.samples);
  const long total = lie + group;

  const std::string format = chosen_format(opt, "plain");
  const char* mode = p.exhaustive ? "exhaustive" : "stratified";
  if (format == "csv") {
    std::string text = csv_line({"side", "n", "q", "mode", "counterexamples"});
    if (want_lie)
      text += csv_line({"lie", std::to_string(p.n), std::to_string(p.q), mode,
                        std::to_string(lie)});
    if (want_group)
      text += csv_line({"group", std::to_string(p.n), std::to_string(p.q), mode,
                        std::to_string(group)});
    emit(opt, text);
  } else if (format == "json") {
    Json result;
    if (want_lie) result["lie"] = lie;
    if (want_group) result["group"] = group;
    result["total"] = total;
    Json j;
    j["query"] = {{"command", "finite-lie"}, {"n", p.n},       {"q", p.q},
                  {"mode", mode},            {"side", p.side}};
    if (!p.exhaustive) j["query"]["samples"] = p.samples;
    j["result"] = result;
    emit(opt, json_text(j));
  } else {
    emit(opt, std::to_string(total) + "\n");
  }
  return 0;
}

// ---- verify --------------------------------------------------------------------

struct VerifyParams {
  std::string suite = "all";
};

int run_verify(const VerifyParams& p, const CommonOptions& opt) {
  apply_cache(opt);
  if (p.suite != "all")
    throw std::invalid_argument("unknown suite '" + p.suite + "' (expected: all)");

  std::ostringstream report;
  const int failures = autfam::run_acceptance_suite(report);

  const std::string format = chosen_format(opt, "plain");
  if (format == "json") {
    // Re-shape the stable one-line-per-criterion report.
    Json rows = Json::array();
    std::istringstream lines(report.str());
    std::string line;
    while (std::getline(lines, line)) {
      const bool passed = line.rfind("PASS ", 0) == 0;
      const size_t name_start = 8;  // "PASS NN " / "FAIL NN "
      const size_t colon = line.find(": ", name_start);
      rows.push_back({{"index", std::stoi(line.substr(5, 2))},
                      {"name", line.substr(name_start, colon - name_start)},
                      {"passed", passed},
                      {"detail", line.substr(colon + 2)}});
    }
    Json j;
    j["query"] = {{"command", "verify"}, {"suite", p.suite}};
    j["result"] = {{"criteria", rows}, {"failures", failures}};
    emit(opt, json_text(j));
  } else {
    emit(opt, report.str());
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "autfam: exact trace formulas, orbital integrals and family statistics "
      "for automorphic representations in rank one"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "autfam 1.0.0");

  CommonOptions common;
  TraceParams trace;
  DimsParams dims;
  FamilyCountParams family;
  EquidistParams equidist;
  OrbitalParams orbital;
  PlancherelParams plancherel;
  LocalRepsParams local_reps;
  FiniteLieParams finite_lie;
  VerifyParams verify;
  int exit_code = 0;

  CLI::App* cmd = app.add_subcommand("trace", "Hecke traces on cusp forms");
  cmd->add_option("--k", trace.k, "weight (even, >= 2)")->required();
  cmd->add_option("--level", trace.level, "level N of Gamma_0(N)");
  cmd->add_option("--n", trace.n, "Hecke index, coprime to the level");
  cmd->add_option("--nmax", trace.n_max, "sweep all indices 1..nmax coprime to the level");
  cmd->add_flag("--new", trace.newspace, "trace on the new subspace");
  add_common_flags(cmd, &common);
  cmd->callback([&] { exit_code = run_trace(trace, common); });

  cmd = app.add_subcommand("dims", "cusp-form dimensions (prints the newspace dimension)");
  cmd->add_option("--k", dims.k, "weight grid (even, >= 2)")->required()->delimiter(',');
  cmd->add_option("--level", dims.level, "level grid for Gamma_0(N)")
      ->required()
      ->delimiter(',');
  add_common_flags(cmd, &common);
  cmd->callback([&] { exit_code = run_dims(dims, common); });

  cmd = app.add_subcommand("family-count", "family sizes against their main terms");
  cmd->add_option("--k", family.k, "weight (even, >= 2)")->required();
  cmd->add_option("--q", family.q, "supercuspidal family at level q^3 (prime q >= 5)");
  cmd->add_option("--steinberg", family.steinberg,
                  "Steinberg family at the squarefree product of these primes")
      ->delimiter(',');
  add_common_flags(cmd, &common);
  cmd->callback([&] { exit_code = run_family_count(family, common); });

  cmd = app.add_subcommand("equidist", "Hecke eigenvalue statistics of a family");
  cmd->add_option("--k", equidist.k, "weight (even, >= 2)")->required();
  cmd->add_option("--level", equidist.level, "level q or q^3 for a prime q")->required();
  cmd->add_option("--nmax", equidist.n_max, "largest Hecke index");
  add_common_flags(cmd, &common);
  cmd->callback([&] { exit_code = run_equidist(equidist, common); });

  cmd = app.add_subcommand("orbital", "orbital-integral decay profile on the tree");
  cmd->add_option("--p", orbital.p, "residue characteristic (3, 5 or 7)")->required();
  cmd->add_option("--gamma", orbital.gamma,
                  "matrix entries a,b,c,d of a standard unramified torus element")
      ->required();
  cmd->add_option("--smax", orbital.s_max, "largest congruence level s");
  add_common_flags(cmd, &common);
  cmd->callback([&] { exit_code = run_orbital(orbital, common); });

  cmd = app.add_subcommand("plancherel",
                           "unramified Plancherel moments; with --k/--level, the "
                           "family comparison");
  cmd->add_option("--p", plancherel.p, "residue characteristic (prime)")->required();
  cmd->add_option("--mmax", plancherel.m_max, "largest moment exponent")
      ->check(CLI::Range(0, 8));
  cmd->add_option("--k", plancherel.k, "family weight for the comparison report");
  cmd->add_option("--level", plancherel.level, "family level for the comparison report");
  add_common_flags(cmd, &common);
  cmd->callback([&] { exit_code = run_plancherel(plancherel, common); });

  cmd = app.add_subcommand("local-reps", "catalog of low-conductor local representations");
  cmd->add_option("--q", local_reps.q, "residue cardinality (odd prime, q >= 5)")
      ->required();
  add_common_flags(cmd, &common);
  cmd->callback([&] { exit_code = run_local_reps(local_reps, common); });

  cmd = app.add_subcommand("finite-lie",
                           "centralizer-span counterexample scan over finite Lie algebras");
  cmd->add_option("--n", finite_lie.n, "rank parameter: matrices are n x n (2 or 3)")
      ->required();
  cmd->add_option("--q", finite_lie.q, "field size (odd prime, <= 7)")->required();
  cmd->add_flag("--exhaustive", finite_lie.exhaustive, "scan every element");
  cmd->add_option("--samples", finite_lie.samples, "sample count for the stratified scan")
      ->check(CLI::Range(1, 1000000));
  cmd->add_option("--side", finite_lie.side, "which scan to run")
      ->check(CLI::IsMember({"lie", "group", "both"}));
  add_common_flags(cmd, &common);
  cmd->callback([&] { exit_code = run_finite_lie(finite_lie, common); });

  cmd = app.add_subcommand("verify", "run the release criteria and report pass/fail");
  cmd->add_option("--suite", verify.suite, "criteria suite to run (all)");
  add_common_flags(cmd, &common);
  cmd->callback([&] { exit_code = run_verify(verify, common); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad flags are exit 2; help/version exit 0
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "assertion failure: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
