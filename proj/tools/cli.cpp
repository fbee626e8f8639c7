#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fmt/core.h>
#include <json.hpp>
#include <optional>

#include "radconc/lemmas.hpp"
#include "radconc/radii.hpp"
#include "radconc/verify.hpp"

namespace radconc::cli {

namespace {

using nlohmann::json;

std::string num(double x) { return fmt::format("{:.15g}", x); }

std::string join(const std::vector<double>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += num(xs[i]);
  }
  return out;
}

std::string opt_num(const std::optional<double>& x) { return x ? num(*x) : std::string{}; }

json opt_json(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

// NaN and infinities have no JSON spelling; they become null.
json finite_json(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

enum class Format { Table, Csv, Json };

Format parse_format(const std::string& text) {
  if (text == "table") return Format::Table;
  if (text == "csv") return Format::Csv;
  if (text == "json") return Format::Json;
  throw UsageError("unknown format '" + text + "' (expected table, csv or json)");
}

/// Flags shared by radius, sweep and verify.
struct QueryFlags {
  std::string klass;
  std::string mode;
  std::string variant = "as-proof";
  int n = 1;
  std::vector<double> alphas;
  double p = 0.0;
  double A = 0.0;
  double rho = 0.0;
  double tol = kDefaultRootTol;
  CLI::Option* p_opt = nullptr;
  CLI::Option* A_opt = nullptr;
  CLI::Option* rho_opt = nullptr;
  CLI::Option* alpha_opt = nullptr;

  void attach(CLI::App* app) {
    app->add_option("--class", klass, "Function class: s, sp or coa")->required();
    app->add_option("--mode", mode, "Radius kind: univalence, convexity or concavity")->required();
    app->add_option("--n", n, "Number of coefficient pairs (2n functions)")->capture_default_str();
    alpha_opt = app->add_option("--alpha", alphas,
                                "Comma-separated angles in radians, each in [0, pi); "
                                "defaults to n zeros")
                    ->delimiter(',');
    p_opt = app->add_option("--p", p, "Pole location for class sp, in (0, 1)");
    A_opt = app->add_option("--A", A, "Opening parameter for classes s and coa, in (1, 2]");
    rho_opt = app->add_option("--rho", rho,
                              "Univalence scale; defaults to the class value sin(pi/(4A)) "
                              "for coa and the e^{pi/4} quadratic root for sp");
    app->add_option("--variant", variant, "Formula variant: as-proof or as-stated")
        ->capture_default_str();
    app->add_option("--tol", tol, "Root bracketing tolerance, in (0, 1e-6]")->capture_default_str();
  }

  RadiusQuery query() const {
    RadiusQuery q;
    q.klass = parse_radius_class(klass);
    q.mode = parse_mode(mode);
    q.variant = parse_variant(variant);
    q.n = n;
    if (n < 1) throw DomainError("n must be a positive integer");
    q.alphas = alpha_opt->count() ? alphas : std::vector<double>(static_cast<std::size_t>(n), 0.0);
    if (p_opt->count()) q.params.p = p;
    if (A_opt->count()) q.params.A = A;
    if (rho_opt->count()) q.rho = rho;
    return q;
  }
};

/// rho actually used by a univalence query.
std::optional<double> effective_rho(const RadiusQuery& q) {
  if (q.mode != Mode::Univalence) return std::nullopt;
  return q.rho ? *q.rho : default_rho(q.klass, q.params);
}

json query_json(const RadiusQuery& q) {
  return {{"class", to_string(q.klass)},
          {"mode", to_string(q.mode)},
          {"variant", to_string(q.variant)},
          {"n", q.n},
          {"alphas", q.alphas},
          {"p", opt_json(q.params.p)},
          {"A", opt_json(q.params.A)},
          {"rho", opt_json(effective_rho(q))}};
}

const char* to_string(RadiusSource source) {
  return source == RadiusSource::ClosedForm ? "closed-form" : "polynomial";
}

json result_json(const RadiusResult& r) {
  json out = {{"radius", finite_json(r.radius)},
              {"status", to_string(r.status)},
              {"source", to_string(r.source)},
              {"bracket", {r.bracket.lo, r.bracket.hi}},
              {"iterations", r.iterations},
              {"polynomial", nullptr},
              {"crosscheck_radius", opt_json(r.crosscheck_radius)},
              {"crosscheck_disagrees", r.crosscheck_disagrees}};
  if (r.poly) out["polynomial"] = r.poly->coeffs();
  return out;
}

// ---------------------------------------------------------------- radius

constexpr const char* kRadiusColumns =
    "class,mode,variant,n,alphas,p,A,rho,radius,status,source,crosscheck,crosscheck_disagrees,"
    "bracket_lo,bracket_hi,coefficients";

void print_radius(const RadiusQuery& q, const RadiusResult& r, Format format, std::ostream& out) {
  const std::string coeffs = r.poly ? join(r.poly->coeffs(), ";") : std::string{};
  switch (format) {
    case Format::Csv:
      out << kRadiusColumns << '\n';
      out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", to_string(q.klass),
                         to_string(q.mode), to_string(q.variant), q.n, join(q.alphas, ";"),
                         opt_num(q.params.p), opt_num(q.params.A), opt_num(effective_rho(q)),
                         num(r.radius), to_string(r.status), to_string(r.source),
                         opt_num(r.crosscheck_radius), r.crosscheck_disagrees ? 1 : 0,
                         num(r.bracket.lo), num(r.bracket.hi), coeffs);
      break;
    case Format::Json:
      out << json{{"query", query_json(q)}, {"result", result_json(r)}}.dump(2) << '\n';
      break;
    case Format::Table: {
      auto row = [&](const char* key, const std::string& value) {
        if (!value.empty()) out << fmt::format("{:<22}{}\n", key, value);
      };
      row("class", to_string(q.klass));
      row("mode", to_string(q.mode));
      row("variant", to_string(q.variant));
      row("n", std::to_string(q.n));
      row("alphas", join(q.alphas, ", "));
      row("p", opt_num(q.params.p));
      row("A", opt_num(q.params.A));
      row("rho", opt_num(effective_rho(q)));
      row("radius", num(r.radius));
      row("status", to_string(r.status));
      row("source", to_string(r.source));
      row("bracket", fmt::format("({}, {})", num(r.bracket.lo), num(r.bracket.hi)));
      row("coefficients", r.poly ? join(r.poly->coeffs(), ", ") + "  (ascending powers)" : "");
      row("crosscheck", opt_num(r.crosscheck_radius));
      if (r.crosscheck_disagrees) row("warning", "cross-check root differs by more than 1e-6");
      break;
    }
  }
}

// ---------------------------------------------------------------- sweep

constexpr const char* kSweepColumns = "axis,value,radius,status,crosscheck,crosscheck_disagrees";

struct SweepRange {
  double start;
  double stop;
  int steps;
};

SweepRange parse_range(const std::string& text) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? first : text.find(':', first + 1);
  if (second == std::string::npos || text.find(':', second + 1) != std::string::npos)
    throw UsageError("--range must look like start:stop:steps");
  auto parse_double = [&](const std::string& part) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(part, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != part.size() || !std::isfinite(value))
      throw UsageError("--range bound '" + part + "' is not a number");
    return value;
  };
  SweepRange range;
  range.start = parse_double(text.substr(0, first));
  range.stop = parse_double(text.substr(first + 1, second - first - 1));
  const std::string steps = text.substr(second + 1);
  if (steps.empty() || !std::all_of(steps.begin(), steps.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw UsageError("--range step count must be a positive integer");
  range.steps = std::stoi(steps);
  if (range.steps < 2) throw DomainError("--range needs at least 2 steps");
  return range;
}

/// Returns a setter writing an axis value into a query.
std::function<void(RadiusQuery&, double)> axis_setter(const std::string& axis,
                                                      const RadiusQuery& base) {
  if (axis == "p") {
    if (base.klass != RadiusClass::Sp) throw UsageError("axis p needs --class sp");
    return [](RadiusQuery& q, double v) { q.params.p = v; };
  }
  if (axis == "A") {
    if (base.klass == RadiusClass::Sp) throw UsageError("axis A needs --class s or coa");
    return [](RadiusQuery& q, double v) { q.params.A = v; };
  }
  if (axis.rfind("alpha", 0) == 0 && axis.size() > 5 &&
      std::all_of(axis.begin() + 5, axis.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    const auto k = std::stoul(axis.substr(5));
    if (k < 1 || k > base.alphas.size())
      throw UsageError(fmt::format("axis {} is out of range: there are {} angles", axis,
                                   base.alphas.size()));
    return [k](RadiusQuery& q, double v) { q.alphas[k - 1] = v; };
  }
  throw UsageError("unknown axis '" + axis + "' (expected alpha<k>, p or A)");
}

void print_sweep(const std::string& axis, const std::vector<double>& values,
                 const std::vector<RadiusQuery>& queries, const std::vector<RadiusResult>& results,
                 Format format, std::ostream& out) {
  switch (format) {
    case Format::Csv:
      out << kSweepColumns << '\n';
      for (std::size_t i = 0; i < values.size(); ++i) {
        const auto& r = results[i];
        out << fmt::format("{},{},{},{},{},{}\n", axis, num(values[i]), num(r.radius),
                           to_string(r.status), opt_num(r.crosscheck_radius),
                           r.crosscheck_disagrees ? 1 : 0);
      }
      break;
    case Format::Json: {
      json rows = json::array();
      for (std::size_t i = 0; i < values.size(); ++i)
        rows.push_back({{"value", values[i]},
                        {"query", query_json(queries[i])},
                        {"result", result_json(results[i])}});
      out << json{{"axis", axis}, {"points", rows}}.dump(2) << '\n';
      break;
    }
    case Format::Table:
      out << fmt::format("{:<22}{:<22}{}\n", axis, "radius", "status");
      for (std::size_t i = 0; i < values.size(); ++i)
        out << fmt::format("{:<22}{:<22}{}\n", num(values[i]), num(results[i].radius),
                           to_string(results[i].status));
      break;
  }
}

// ---------------------------------------------------------------- verify

constexpr const char* kVerifyColumns =
    "class,mode,variant,n,alphas,p,A,radius,margin,min_re,worst_re,worst_im,worst_fixture,"
    "samples,passed,error";

void print_verify(const std::vector<VerifyReport>& reports, Format format, std::ostream& out) {
  switch (format) {
    case Format::Csv:
      out << kVerifyColumns << '\n';
      for (const auto& v : reports) {
        const auto& q = v.query;
        out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", to_string(q.klass),
                           to_string(q.mode), to_string(q.variant), q.n, join(q.alphas, ";"),
                           opt_num(q.params.p), opt_num(q.params.A), num(v.radius), num(v.margin),
                           num(v.min_re), num(v.worst_z.real()), num(v.worst_z.imag()),
                           v.worst_fixture, v.samples, v.passed ? 1 : 0,
                           v.error ? *v.error : std::string{});
      }
      break;
    case Format::Json: {
      json rows = json::array();
      for (const auto& v : reports)
        rows.push_back({{"query", query_json(v.query)},
                        {"result", result_json(v.result)},
                        {"radius", finite_json(v.radius)},
                        {"margin", v.margin},
                        {"min_re", finite_json(v.min_re)},
                        {"worst_z", {v.worst_z.real(), v.worst_z.imag()}},
                        {"worst_fixture", v.worst_fixture},
                        {"samples", v.samples},
                        {"passed", v.passed},
                        {"error", v.error ? json(*v.error) : json(nullptr)}});
      out << rows.dump(2) << '\n';
      break;
    }
    case Format::Table:
      for (const auto& v : reports) {
        const auto& q = v.query;
        out << fmt::format("{} {} n={} alphas=[{}]", to_string(q.klass), to_string(q.mode), q.n,
                           join(q.alphas, ", "));
        if (q.params.p) out << " p=" << num(*q.params.p);
        if (q.params.A) out << " A=" << num(*q.params.A);
        out << fmt::format("\n  radius {}  margin {}  samples {}\n", num(v.radius), num(v.margin),
                           v.samples);
        out << fmt::format("  min_re {} at z = {}{:+.15g}i ({})\n", num(v.min_re),
                           num(v.worst_z.real()), v.worst_z.imag(), v.worst_fixture);
        if (v.error) out << "  error: " << *v.error << '\n';
        out << (v.passed ? "  PASSED\n" : "  FAILED\n");
      }
      break;
  }
}

// ---------------------------------------------------------------- lemma

constexpr const char* kLemmaColumns = "check,trials,violations,max_excess";

struct LemmaCheck {
  const char* name;
  std::int64_t trials;
  CertReport (*run)(std::int64_t, std::uint64_t, Exec);
};

void print_lemma(const std::vector<std::pair<std::string, CertReport>>& rows, Format format,
                 std::ostream& out) {
  switch (format) {
    case Format::Csv:
      out << kLemmaColumns << '\n';
      for (const auto& [name, r] : rows)
        out << fmt::format("{},{},{},{}\n", name, r.trials, r.violations, num(r.max_excess));
      break;
    case Format::Json: {
      json arr = json::array();
      for (const auto& [name, r] : rows)
        arr.push_back({{"check", name},
                       {"trials", r.trials},
                       {"violations", r.violations},
                       {"max_excess", r.max_excess}});
      out << arr.dump(2) << '\n';
      break;
    }
    case Format::Table:
      for (const auto& [name, r] : rows)
        out << fmt::format("{:<24}trials: {:<10} violations: {:<6} max_excess: {}\n", name,
                           r.trials, r.violations, num(r.max_excess));
      break;
  }
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Domain:
    case ErrorKind::Usage:
    case ErrorKind::Precondition: return kExitUsage;
    case ErrorKind::Singularity:
    case ErrorKind::CriticalPoint: return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Radii of univalence, convexity and concavity for linear combinations of "
               "univalent functions, with numerical verification",
               "radconc"};
  app.require_subcommand(1);

  std::string format_text;

  // radius
  QueryFlags radius_flags;
  auto* radius_cmd = app.add_subcommand("radius", "Compute one radius");
  radius_flags.attach(radius_cmd);
  radius_cmd->add_option("--format", format_text, "Output: table, csv or json")
      ->default_val("table");
  radius_cmd->footer(std::string("CSV columns: ") + kRadiusColumns +
                     "\n  alphas and coefficients are ';'-separated, coefficients in ascending "
                     "powers of r; p, A, rho are empty when not applicable.");

  // sweep
  QueryFlags sweep_flags;
  std::string axis;
  std::string range_text;
  auto* sweep_cmd = app.add_subcommand("sweep", "Compute a radius along one parameter axis");
  sweep_flags.attach(sweep_cmd);
  sweep_cmd->add_option("--axis", axis, "Swept parameter: alpha<k> (1-based), p or A")->required();
  sweep_cmd->add_option("--range", range_text, "start:stop:steps, steps >= 2, endpoints included")
      ->required();
  sweep_cmd->add_option("--format", format_text, "Output: table, csv or json")->default_val("csv");
  sweep_cmd->footer(std::string("CSV columns: ") + kSweepColumns);

  // verify
  QueryFlags verify_flags;
  double margin = kDefaultMargin;
  int n_radii = 64;
  int n_angles = 256;
  int random_count = 0;
  std::uint64_t verify_seed = 1;
  bool serial = false;
  auto* verify_cmd = app.add_subcommand(
      "verify", "Check positivity inside margin * radius on the built-in fixtures");
  verify_flags.attach(verify_cmd);
  verify_cmd->add_option("--margin", margin, "Fraction of the radius sampled, in (0, 1)")
      ->capture_default_str();
  verify_cmd->add_option("--radii", n_radii, "Grid circles (>= 16)")->capture_default_str();
  verify_cmd->add_option("--angles", n_angles, "Grid angles per circle (>= 16)")
      ->capture_default_str();
  verify_cmd->add_option("--random", random_count,
                         "Verify this many random queries for --class/--mode instead of the "
                         "given one (n <= 3, alphas in [0, 0.9 pi), p in [0.2, 0.8], A in (1, 2])");
  verify_cmd->add_option("--seed", verify_seed, "Seed for --random")->capture_default_str();
  verify_cmd->add_flag("--serial", serial, "Use the serial reference kernel");
  verify_cmd->add_option("--format", format_text, "Output: table, csv or json")
      ->default_val("table");
  verify_cmd->footer(std::string("CSV columns: ") + kVerifyColumns +
                     "\n  passed is 1 or 0; exit status is 1 when any row fails.");

  // lemma
  std::int64_t trials = 100000;
  std::uint64_t lemma_seed = 1;
  std::string check = "all";
  auto* lemma_cmd = app.add_subcommand("lemma", "Randomized certification of the bounding inequalities");
  lemma_cmd->add_option("--trials", trials,
                        "Samples for sec-band; rotated-product-bound and disk-containment use "
                        "trials/10, gk-peak uses trials/100")
      ->capture_default_str();
  lemma_cmd->add_option("--seed", lemma_seed, "PRNG seed")->capture_default_str();
  lemma_cmd->add_option("--check", check,
                        "all, sec-band, rotated-product-bound, gk-peak or disk-containment")
      ->capture_default_str();
  lemma_cmd->add_option("--format", format_text, "Output: table, csv or json")
      ->default_val("table");
  lemma_cmd->footer(std::string("CSV columns: ") + kLemmaColumns +
                    "\n  exit status is 1 when any check reports a violation.");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const Format format = parse_format(format_text);

    if (radius_cmd->parsed()) {
      const RadiusQuery q = radius_flags.query();
      print_radius(q, radius(q, radius_flags.tol), format, out);
      return kExitOk;
    }

    if (sweep_cmd->parsed()) {
      const RadiusQuery base = sweep_flags.query();
      const SweepRange range = parse_range(range_text);
      const auto set = axis_setter(axis, base);
      std::vector<double> values;
      std::vector<RadiusQuery> queries;
      std::vector<RadiusResult> results;
      for (int i = 0; i < range.steps; ++i) {
        const double t = static_cast<double>(i) / (range.steps - 1);
        const double v = i == range.steps - 1 ? range.stop : range.start + t * (range.stop - range.start);
        RadiusQuery q = base;
        set(q, v);
        values.push_back(v);
        results.push_back(radius(q, sweep_flags.tol));
        queries.push_back(std::move(q));
      }
      print_sweep(axis, values, queries, results, format, out);
      return kExitOk;
    }

    if (verify_cmd->parsed()) {
      const Exec exec = serial ? Exec::Serial : Exec::Parallel;
      const RadiusQuery given = verify_flags.query();
      std::vector<RadiusQuery> queries;
      if (random_count > 0)
        queries = random_queries(given.klass, given.mode, random_count, verify_seed, given.variant);
      else
        queries.push_back(given);
      std::vector<VerifyReport> reports;
      bool all_passed = true;
      for (const auto& q : queries) {
        reports.push_back(verify_radius(q, default_fixture_set(q), margin, n_radii, n_angles, exec));
        all_passed = all_passed && reports.back().passed;
      }
      print_verify(reports, format, out);
      return all_passed ? kExitOk : kExitFailure;
    }

    if (lemma_cmd->parsed()) {
      if (trials < 0) throw DomainError("--trials must be non-negative");
      const std::vector<LemmaCheck> checks = {
          {"sec-band", trials, certify_sec_band},
          {"rotated-product-bound", trials / 10, certify_rotated_product},
          {"gk-peak", trials / 100, certify_gk_peak},
          {"disk-containment", trials / 10, certify_disk_containment},
      };
      std::vector<std::pair<std::string, CertReport>> rows;
      bool clean = true;
      for (const auto& c : checks) {
        if (check != "all" && check != c.name) continue;
        rows.emplace_back(c.name, c.run(c.trials, lemma_seed, Exec::Parallel));
        clean = clean && rows.back().second.violations == 0;
      }
      if (rows.empty()) throw UsageError("unknown check '" + check + "'");
      print_lemma(rows, format, out);
      return clean ? kExitOk : kExitFailure;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kExitUsage;
}

}  // namespace radconc::cli
