#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "grasstqft/cobordism.hpp"
#include "grasstqft/errors.hpp"
#include "grasstqft/json_io.hpp"
#include "grasstqft/suites.hpp"
#include "grasstqft/tqft.hpp"
#include "grasstqft/vi_engine.hpp"

using namespace grasstqft;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  int r = 1, k = 1, g = 0;
  std::int64_t d = 0;
  std::string backend = "exact";
  unsigned precision = 128;
  unsigned workers = 1;
  std::string format = "table";
  std::string cache_dir;

  bool is_float() const { return backend == "float"; }
  ExecOptions exec() const { return {workers}; }
};

/// Raised for flag combinations CLI11 cannot express; maps to exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string csv_field(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

class Clock {
 public:
  Clock() : start_(std::chrono::steady_clock::now()), tuples_(tuples_enumerated()) {}
  std::int64_t ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
  }
  std::uint64_t tuples() const { return tuples_enumerated() - tuples_; }

 private:
  std::chrono::steady_clock::time_point start_;
  std::uint64_t tuples_;
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--backend", cfg.backend, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  cmd->add_option("--precision", cfg.precision, "float mantissa bits (>= 64)")->check(CLI::Range(64u, 1u << 20));
  cmd->add_option("--workers", cfg.workers, "worker threads")->check(CLI::Range(1u, 1024u));
  cmd->add_option("--format", cfg.format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
  cmd->add_option("--cache-dir", cfg.cache_dir, "fusion table cache directory (default $GRASSTQFT_CACHE)");
}

void add_theory(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--r", cfg.r, "rank")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--k", cfg.k, "level")->required()->check(CLI::NonNegativeNumber);
}

json base_params(const RunConfig& cfg) { return {{"r", cfg.r}, {"k", cfg.k}}; }

/// Prints a scalar result in the requested format.
void emit_value(const RunConfig& cfg, json params, const std::string& value, const Clock& clock,
                json extra = json::object()) {
  if (cfg.format == "json") {
    json out = {{"params", std::move(params)},
                {"value", value},
                {"backend", cfg.backend},
                {"tuples_enumerated", clock.tuples()},
                {"wall_ms", clock.ms()}};
    if (cfg.is_float()) out["precision"] = cfg.precision;
    for (auto& [key, v] : extra.items()) out[key] = v;
    std::cout << out.dump() << "\n";
  } else if (cfg.format == "csv") {
    std::cout << "\"value\"\r\n" << csv_field(value) << "\r\n";
  } else {
    std::cout << value << "\n";
    for (auto& [key, v] : extra.items()) std::cout << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
}

/// Float results of integer-valued commands are reported rounded, with the raw approximation alongside.
std::string float_integer(const FloatApprox& a, json& extra) {
  extra["approx"] = a.value.to_string(40);
  return to_string(a.value.round());
}

Multipartition labels_in_box(const std::string& text, const RunConfig& cfg, const char* flag) {
  Multipartition m;
  try {
    m = parse_multipartition(text);
  } catch (const Error& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
  for (const auto& p : m) {
    if (!p.fits(cfg.r, cfg.k)) {
      throw UsageError(std::string(flag) + ": partition " + to_json(p).dump() + " does not fit the " +
                       std::to_string(cfg.r) + "x" + std::to_string(cfg.k) + " box");
    }
  }
  return m;
}

std::filesystem::path cache_dir(const RunConfig& cfg) {
  if (const char* env = std::getenv("GRASSTQFT_CACHE"); env && *env) return env;
  return cfg.cache_dir;
}

void require_exact(const RunConfig& cfg, const char* command) {
  if (cfg.is_float()) throw UsageError(std::string(command) + " supports only the exact backend");
}

std::string matrix_table(const RationalMatrix& m) {
  std::vector<std::string> cells;
  std::size_t width = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      cells.push_back(to_string(m.at(i, j)));
      width = std::max(width, cells.back().size());
    }
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto& c = cells[i * m.cols() + j];
      os << (j ? " " : "") << std::string(width - c.size(), ' ') << c;
    }
    os << "\n";
  }
  return os.str();
}

int run_verify(const RunConfig& cfg, const std::string& suite, const SuiteBounds& bounds, const Clock& clock) {
  const Report report = run_suite(suite, TheoryParams(cfg.r, cfg.k), bounds, cfg.exec());
  std::size_t failed = 0;
  for (const auto& e : report) {
    if (e.pass) continue;
    ++failed;
    std::cerr << "FAIL " << e.check << " [" << e.instance << "]: " << e.lhs << " != " << e.rhs << "\n";
  }
  if (cfg.format == "json") {
    json params = base_params(cfg);
    params["suite"] = suite;
    params["gmax"] = bounds.gmax;
    std::cout << json{{"params", params},
                      {"checks", report.size()},
                      {"failed", failed},
                      {"report", to_json(report)},
                      {"backend", cfg.backend},
                      {"tuples_enumerated", clock.tuples()},
                      {"wall_ms", clock.ms()}}
                     .dump()
              << "\n";
  } else if (cfg.format == "csv") {
    std::cout << "\"check\",\"instance\",\"status\",\"lhs\",\"rhs\"\r\n";
    for (const auto& e : report) {
      std::cout << csv_field(e.check) << "," << csv_field(e.instance) << "," << csv_field(e.pass ? "pass" : "fail")
                << "," << csv_field(e.lhs) << "," << csv_field(e.rhs) << "\r\n";
    }
  } else {
    std::cout << suite << ": " << report.size() - failed << "/" << report.size() << " checks passed\n";
  }
  return failed == 0 ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Verlinde numbers and the Grassmannian TQFT"};
  app.require_subcommand(1);
  RunConfig cfg;
  int exit_code = kExitOk;

  auto* verlinde = app.add_subcommand("verlinde", "closed Verlinde number V_g");
  add_theory(verlinde, cfg);
  verlinde->add_option("--g", cfg.g, "genus")->required()->check(CLI::NonNegativeNumber);
  add_common(verlinde, cfg);

  std::string in_text = "[]", out_text = "[]";
  bool explain = false;
  auto* element = app.add_subcommand("element", "matrix element F(g)_in^out");
  add_theory(element, cfg);
  element->add_option("--g", cfg.g, "genus")->required()->check(CLI::NonNegativeNumber);
  element->add_option("--in", in_text, "input labels, JSON array of partitions");
  element->add_option("--out", out_text, "output labels, JSON array of partitions");
  element->add_flag("--explain", explain, "report the selected degree");
  add_common(element, cfg);

  std::string table_out;
  auto* fusion = app.add_subcommand("fusion-table", "genus-0 metric and structure constants");
  add_theory(fusion, cfg);
  fusion->add_option("--out", table_out, "write the table JSON to this file");
  add_common(fusion, cfg);

  int vi_n = 1;
  std::string poly;
  auto* vi = app.add_subcommand("vi", "raw Quot scheme integral of a polynomial in the Chern roots");
  vi->add_option("--r", cfg.r, "rank of the subsheaf")->required()->check(CLI::PositiveNumber);
  vi->add_option("--n", vi_n, "rank of the trivial bundle")->required()->check(CLI::PositiveNumber);
  vi->add_option("--g", cfg.g, "genus")->required()->check(CLI::NonNegativeNumber);
  vi->add_option("--d", cfg.d, "degree")->required()->check(CLI::NonNegativeNumber);
  vi->add_option("--poly", poly, "integrand in x<i>, e<i>, a<i>, s[...]")->required();
  add_common(vi, cfg);

  std::string parts_text = "[]";
  std::int64_t top = -1;
  auto* open = app.add_subcommand("open", "open Quot intersection of a_parts a_r^t");
  add_theory(open, cfg);
  open->add_option("--g", cfg.g, "genus")->required()->check(CLI::NonNegativeNumber);
  open->add_option("--d", cfg.d, "degree")->required()->check(CLI::NonNegativeNumber);
  open->add_option("--parts", parts_text, "integrand labels, JSON array of partitions");
  open->add_option("--t", top, "power of a_r (default: solve the dimension equation)");
  add_common(open, cfg);

  auto* parabolic = app.add_subcommand("parabolic", "parabolic Verlinde number from the stack-side sum");
  add_theory(parabolic, cfg);
  parabolic->add_option("--g", cfg.g, "genus")->required()->check(CLI::NonNegativeNumber);
  parabolic->add_option("--d", cfg.d, "degree")->required()->check(CLI::NonNegativeNumber);
  parabolic->add_option("--parts", parts_text, "labels, JSON array of partitions");
  add_common(parabolic, cfg);

  std::string cobordism_text, cobordism_file;
  auto* eval = app.add_subcommand("eval", "matrix of a cobordism expression");
  add_theory(eval, cfg);
  auto* expr_opt = eval->add_option("--cobordism", cobordism_text, "expression, e.g. \"W(0;1->2) . W(0;2->1)\"");
  eval->add_option("--file", cobordism_file, "read the expression from a file")->excludes(expr_opt);
  add_common(eval, cfg);

  std::string suite;
  SuiteBounds bounds;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  add_theory(verify, cfg);
  verify->add_option("--suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--gmax", bounds.gmax, "largest genus")->check(CLI::Range(0, 8));
  verify->add_option("--max-weight", bounds.max_weight, "largest total label weight")->check(CLI::Range(0, 12));
  add_common(verify, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  const Clock clock;
  try {
    json params = base_params(cfg);
    if (verlinde->parsed()) {
      params["g"] = cfg.g;
      json extra = json::object();
      const std::string value = cfg.is_float()
                                    ? float_integer(verlinde_closed_float(cfg.g, cfg.r, cfg.k, cfg.precision, cfg.exec()), extra)
                                    : to_string(verlinde_closed(cfg.g, cfg.r, cfg.k, cfg.exec()));
      emit_value(cfg, params, value, clock, extra);
    } else if (element->parsed()) {
      const TheoryParams theory(cfg.r, cfg.k);
      const MatrixElementQuery q{cfg.g, labels_in_box(in_text, cfg, "--in"), labels_in_box(out_text, cfg, "--out"),
                                 theory};
      params["g"] = cfg.g;
      params["in"] = to_json(q.inputs);
      params["out"] = to_json(q.outputs);
      json extra = json::object();
      const auto trace = matrix_element_explain(q, cfg.exec());
      std::string value = to_string(trace.value);
      if (cfg.is_float() && trace.reason == "integral") value = float_integer(matrix_element_float(q, cfg.precision, cfg.exec()), extra);
      if (explain) {
        extra["d"] = trace.d ? json(*trace.d) : json(nullptr);
        extra["t"] = trace.t;
        extra["reason"] = trace.reason;
      }
      emit_value(cfg, params, value, clock, extra);
    } else if (fusion->parsed()) {
      require_exact(cfg, "fusion-table");
      const TheoryParams theory(cfg.r, cfg.k);
      const auto dir = cache_dir(cfg);
      bool rebuilt = true;
      const FusionTable table =
          dir.empty() ? FusionTable::build(theory, cfg.exec()) : cached_fusion_table(dir, theory, cfg.exec(), &rebuilt);
      if (!table_out.empty()) table.save(table_out);
      if (cfg.format == "csv") {
        std::cout << "\"a\",\"b\",\"c\",\"value\"\r\n";
        const auto& basis = table.basis();
        for (std::size_t a = 0; a < table.size(); ++a)
          for (std::size_t b = 0; b < table.size(); ++b)
            for (std::size_t c = 0; c < table.size(); ++c) {
              if (table.constant(a, b, c) == 0) continue;
              std::cout << csv_field(to_json(basis[a]).dump()) << "," << csv_field(to_json(basis[b]).dump()) << ","
                        << csv_field(to_json(basis[c]).dump()) << "," << csv_field(to_string(table.constant(a, b, c)))
                        << "\r\n";
            }
      } else if (cfg.format == "table" && !table_out.empty()) {
        std::cout << "wrote " << table_out << " (" << table.size() << " basis elements, sha256 " << table.content_hash()
                  << ")\n";
      } else {
        std::cout << table.to_json().dump(cfg.format == "table" ? 2 : -1) << "\n";
      }
      if (!dir.empty()) std::cerr << (rebuilt ? "cache rebuilt: " : "cache hit: ") << fusion_cache_path(dir, theory).string() << "\n";
    } else if (vi->parsed()) {
      SymPoly integrand;
      try {
        integrand = parse_poly(poly, cfg.r);
      } catch (const ParseError& e) {
        throw UsageError(std::string("--poly: ") + e.what());
      }
      const QuotIntegral q{cfg.g, cfg.d, cfg.r, vi_n, integrand};
      params = {{"r", cfg.r}, {"n", vi_n}, {"g", cfg.g}, {"d", cfg.d}, {"poly", poly}};
      if (cfg.is_float()) {
        emit_value(cfg, params, vi_integral_float(q, cfg.precision, cfg.exec()).value.to_string(40), clock);
      } else {
        emit_value(cfg, params, to_string(vi_integral(q, cfg.exec())), clock);
      }
    } else if (open->parsed()) {
      const Multipartition parts = labels_in_box(parts_text, cfg, "--parts");
      if (top < 0) {
        const std::int64_t rhs = static_cast<std::int64_t>(cfg.r + cfg.k) * cfg.d -
                                 static_cast<std::int64_t>(cfg.r) * cfg.k * (cfg.g - 1) - weight(parts);
        if (rhs < 0 || rhs % cfg.r != 0) throw DimensionMismatch("no nonnegative integral t solves the dimension equation");
        top = rhs / cfg.r;
      }
      params["g"] = cfg.g;
      params["d"] = cfg.d;
      params["parts"] = to_json(parts);
      params["t"] = top;
      const std::string value =
          cfg.is_float()
              ? open_intersection_float(cfg.g, cfg.r, cfg.k, cfg.d, parts, top, cfg.precision, cfg.exec()).value.to_string(40)
              : to_string(open_intersection(cfg.g, cfg.r, cfg.k, cfg.d, parts, top, cfg.exec()));
      emit_value(cfg, params, value, clock);
    } else if (parabolic->parsed()) {
      const Multipartition parts = labels_in_box(parts_text, cfg, "--parts");
      params["g"] = cfg.g;
      params["d"] = cfg.d;
      params["parts"] = to_json(parts);
      json extra = json::object();
      const std::string value =
          cfg.is_float()
              ? float_integer(parabolic_verlinde_float(cfg.g, cfg.r, cfg.k, cfg.d, parts, cfg.precision, cfg.exec()), extra)
              : to_string(parabolic_verlinde(cfg.g, cfg.r, cfg.k, cfg.d, parts, cfg.exec()));
      emit_value(cfg, params, value, clock, extra);
    } else if (eval->parsed()) {
      require_exact(cfg, "eval");
      if (!cobordism_file.empty()) {
        std::ifstream in(cobordism_file);
        if (!in) throw UsageError("cannot read " + cobordism_file);
        std::stringstream buf;
        buf << in.rdbuf();
        cobordism_text = buf.str();
      }
      if (cobordism_text.empty()) throw UsageError("eval needs --cobordism or --file");
      const CobordismPtr expr = parse_cobordism(cobordism_text);
      const auto [s, t] = boundary_type(*expr);
      const RationalMatrix m = evaluate_cobordism(*expr, TheoryParams(cfg.r, cfg.k), cfg.exec());
      if (cfg.format == "json") {
        params["cobordism"] = print_cobordism(*expr);
        params["inputs"] = s;
        params["outputs"] = t;
        std::cout << json{{"params", params},
                          {"value", m.to_json()},
                          {"basis", to_json(Multipartition(enumerate_basis(cfg.r, cfg.k)))},
                          {"backend", cfg.backend},
                          {"tuples_enumerated", clock.tuples()},
                          {"wall_ms", clock.ms()}}
                         .dump()
                  << "\n";
      } else if (cfg.format == "csv") {
        std::cout << m.to_csv();
      } else {
        std::cout << matrix_table(m);
      }
    } else if (verify->parsed()) {
      bounds.precision = cfg.precision;
      exit_code = run_verify(cfg, suite, bounds, clock);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitVerifyFailed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return exit_code;
}
