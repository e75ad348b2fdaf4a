#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gcx/classify.hpp"
#include "gcx/connection.hpp"
#include "gcx/density.hpp"
#include "gcx/error.hpp"
#include "gcx/geoverify.hpp"
#include "gcx/holonomy.hpp"
#include "gcx/parser.hpp"

using namespace gcx;
using nlohmann::json;

namespace {

constexpr const char* kSchemaVersion = "1";

struct GlobalOpts {
  std::uint64_t seed = 0;
  double tol = 1e-7;
  long trials = 10000;
  bool pretty = false;
  std::string csv_path;
};

json rational_json(const Rational& q) { return rational_to_string(q); }

json interval_json(const RootRecord& r) {
  return json{{"lo", rational_json(r.lo)},
              {"hi", rational_json(r.hi)},
              {"multiplicity", r.multiplicity}};
}

json certificate_json(const Certificate& c) {
  json j;
  j["kind"] = certificate_kind_name(c.kind);
  if (c.kind == CertificateKind::UnivariateOddRoot && c.root) {
    j["root"] = interval_json(*c.root);
    j["cofactor_positive"] = c.cofactor_positive;
  }
  if (c.kind == CertificateKind::MonomialEvenPower) {
    j["variable"] = c.variable_index + 1;
    j["degree"] = c.degree;
    j["coefficient"] = rational_json(c.coefficient);
  }
  if (c.kind == CertificateKind::Separable) {
    json blocks = json::array();
    for (const auto& b : c.blocks) blocks.push_back(certificate_json(b));
    j["blocks"] = blocks;
  }
  return j;
}

json witness_json(const Witness& w) {
  json j;
  j["kind"] = witness_kind_name(w.kind);
  if (!w.roots.empty()) {
    json roots = json::array();
    for (const auto& r : w.roots) roots.push_back(interval_json(r));
    j["roots"] = roots;
  }
  if (w.critical_point) {
    json p = json::array();
    for (const auto& c : *w.critical_point) p.push_back(rational_json(c));
    j["critical_point"] = p;
  }
  if (w.failing_block >= 0) j["failing_block"] = w.failing_block + 1;
  j["detail"] = w.detail;
  return j;
}

json verdict_json(const Verdict& v) {
  json j;
  j["outcome"] = outcome_name(v.outcome);
  if (v.certificate) j["certificate"] = certificate_json(*v.certificate);
  if (v.witness) j["witness"] = witness_json(*v.witness);
  if (!v.reason.empty()) j["reason"] = v.reason;
  return j;
}

json lc_report_json(const LCReport& rep) {
  json j;
  j["k_stable"] = rep.k_stable;
  j["dim"] = rep.dim;
  j["verdict"] = lc_verdict_name(rep.verdict);
  if (rep.signature)
    j["signature"] = json::array({rep.signature->first, rep.signature->second});
  if (rep.sample_metric) {
    json m = json::array();
    for (const auto& row : *rep.sample_metric) {
      json r = json::array();
      for (const auto& c : row) r.push_back(rational_json(c));
      m.push_back(r);
    }
    j["sample_metric"] = m;
  }
  j["notes"] = rep.notes;
  return j;
}

void emit(const json& result, const std::string& command, const json& input,
          const GlobalOpts& g, std::chrono::steady_clock::time_point start) {
  auto elapsed = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  json report;
  report["schema_version"] = kSchemaVersion;
  report["command"] = command;
  report["input"] = input;
  report["result"] = result;
  report["timing_ms"] = elapsed;
  report["seed"] = g.seed;
  std::cout << (g.pretty ? report.dump(2) : report.dump()) << "\n";
}

[[noreturn]] void die(int code, const std::string& kind, const std::string& message) {
  json err;
  err["error"] = kind;
  err["message"] = message;
  std::cerr << err.dump() << "\n";
  std::exit(code);
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::SyntaxError:
    case ErrorKind::UnknownVariable:
    case ErrorKind::NonPolynomial:
    case ErrorKind::BadInput:
      return 2;
    case ErrorKind::PoleAtPoint:
    case ErrorKind::PoleEncountered:
      return 5;
    case ErrorKind::CriticalPointDetected:
    case ErrorKind::HasCriticalPoint:
      return 4;
    default:
      return 3;
  }
}

std::vector<std::string> resolve_vars(const std::string& expr,
                                      const std::string& vars_flag) {
  if (!vars_flag.empty()) {
    std::vector<std::string> names;
    std::stringstream ss(vars_flag);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) names.push_back(item);
    }
    return names;
  }
  auto names = scan_variables(expr);
  if (names.empty()) names.push_back("x1");
  return names;
}

std::vector<double> parse_point_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

RatVec parse_point_rationals(const std::string& text) {
  RatVec out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(rational_from_string(item));
  return out;
}

Connection load_connection(const std::string& spec, const std::string& expr,
                           const std::vector<std::string>& names) {
  if (spec == "zero") {
    return Connection::zero(static_cast<int>(names.size()));
  }
  if (spec == "auto") {
    Polynomial f = parse_expression(expr, names);
    if (f.total_degree() <= 2 && !f.is_constant())
      return construct_quadratic_flat(to_quadratic_form(f)).in_input_coords;
    auto no_crit = has_no_critical_point(f);
    if (no_crit.has_value() && *no_crit) return construct_no_critical(f);
    throw Error(ErrorKind::CriticalPointDetected,
                "no connection constructor applies to this input");
  }
  std::ifstream in(spec);
  if (!in) throw Error(ErrorKind::BadInput, "cannot open connection file: " + spec);
  std::stringstream buf;
  buf << in.rdbuf();
  return Connection::from_json(buf.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"g-convexity decision toolkit"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--seed", g.seed, "random seed (default 0)");
  app.add_option("--tol", g.tol, "verification tolerance (default 1e-7)");
  app.add_option("--trials", g.trials, "Monte Carlo trials (default 10000)");
  app.add_flag("--pretty", g.pretty, "indent the JSON report");

  std::string cl_expr, cl_vars;
  auto* cmd_classify = app.add_subcommand("classify", "classify a polynomial");
  cmd_classify->add_option("expr", cl_expr, "polynomial expression")->required();
  cmd_classify->add_option("--vars", cl_vars, "comma-separated variable order");

  std::string cn_expr, cn_vars, cn_target = "zero";
  auto* cmd_connect = app.add_subcommand("connect", "construct a certificate connection");
  cmd_connect->add_option("expr", cn_expr, "polynomial expression")->required();
  cmd_connect->add_option("--vars", cn_vars, "comma-separated variable order");
  cmd_connect->add_option("--target", cn_target, "target Hessian (only: zero)");

  std::string ho_conn, ho_point = "0";
  auto* cmd_holonomy = app.add_subcommand("holonomy", "Levi-Civita check for a connection");
  cmd_holonomy->add_option("--conn", ho_conn, "connection JSON file")->required();
  cmd_holonomy->add_option("--point", ho_point, "evaluation point, comma-separated rationals")
      ->required();

  std::string de_family, de_sweep;
  int de_n = 1, de_d = 1;
  double de_r = 1.0;
  auto* cmd_density = app.add_subcommand("density", "density experiments");
  cmd_density->add_option("family", de_family,
                          "univariate|quadratic|monomial|separable|psdball")
      ->required();
  cmd_density->add_option("-n", de_n, "number of variables");
  cmd_density->add_option("-d", de_d, "degree");
  cmd_density->add_option("-r", de_r, "coefficient radius");
  cmd_density->add_option("--sweep", de_sweep, "d=a..b sweep over degrees");
  cmd_density->add_option("--csv", g.csv_path, "append CSV rows to this path");

  std::string ge_expr, ge_vars, ge_conn = "zero", ge_x0 = "0", ge_v0 = "1";
  double ge_T = 1.0;
  int ge_steps = 200;
  auto* cmd_geodesic =
      app.add_subcommand("geodesic", "integrate a geodesic and test convexity");
  cmd_geodesic->add_option("expr", ge_expr, "polynomial expression")->required();
  cmd_geodesic->add_option("--vars", ge_vars, "comma-separated variable order");
  cmd_geodesic->add_option("--conn", ge_conn, "zero | auto | connection JSON file");
  cmd_geodesic->add_option("--x0", ge_x0, "initial position, comma-separated");
  cmd_geodesic->add_option("--v0", ge_v0, "initial velocity, comma-separated");
  cmd_geodesic->add_option("-T", ge_T, "horizon");
  cmd_geodesic->add_option("--steps", ge_steps, "integration steps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    json err;
    err["error"] = "BadFlags";
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 2;
  }

  auto start = std::chrono::steady_clock::now();
  try {
    if (*cmd_classify) {
      auto names = resolve_vars(cl_expr, cl_vars);
      Polynomial f = parse_expression(cl_expr, names);
      Verdict v = classify(f);
      json input{{"expr", cl_expr}, {"vars", names}};
      emit(verdict_json(v), "classify", input, g, start);
      return 0;
    }
    if (*cmd_connect) {
      if (cn_target != "zero")
        throw Error(ErrorKind::BadInput, "only --target zero is supported");
      auto names = resolve_vars(cn_expr, cn_vars);
      Polynomial f = parse_expression(cn_expr, names);
      json input{{"expr", cn_expr}, {"vars", names}, {"target", "zero"}};
      Connection conn;
      std::string constructor;
      if (f.total_degree() <= 2 && !f.is_constant()) {
        conn = construct_quadratic_flat(to_quadratic_form(f)).in_input_coords;
        constructor = "quadratic_flat";
      } else {
        auto no_crit = has_no_critical_point(f);
        if (!(no_crit.has_value() && *no_crit))
          throw Error(ErrorKind::CriticalPointDetected,
                      "no constructor applies: critical points present or undecidable");
        conn = construct_no_critical(f);
        constructor = "no_critical_point";
      }
      HessianCheck check = verify_hessian_target(f, conn);
      json result;
      result["constructor"] = constructor;
      result["connection"] = json::parse(conn.to_json());
      result["verified"] = check.ok;
      result["verification"] = check.symbolic ? "symbolic" : "sampled";
      if (!check.symbolic) result["max_residual"] = check.max_residual;
      emit(result, "connect", input, g, start);
      return 0;
    }
    if (*cmd_holonomy) {
      Connection conn = load_connection(ho_conn, "", {});
      RatVec point = parse_point_rationals(ho_point);
      if (static_cast<int>(point.size()) != conn.dim())
        throw Error(ErrorKind::DimensionMismatch, "point dimension mismatch");
      LCReport rep = lc_check(conn, point, static_cast<unsigned>(g.seed));
      json input{{"conn", ho_conn}, {"point", ho_point}};
      emit(lc_report_json(rep), "holonomy", input, g, start);
      return 0;
    }
    if (*cmd_density) {
      std::vector<int> degrees{de_d};
      if (!de_sweep.empty()) {
        int a = 0, b = 0;
        if (std::sscanf(de_sweep.c_str(), "d=%d..%d", &a, &b) != 2 || a > b)
          throw Error(ErrorKind::BadInput, "--sweep wants d=a..b");
        degrees.clear();
        for (int d = a; d <= b; ++d) degrees.push_back(d);
      }
      json rows = json::array();
      std::vector<std::string> csv_rows;
      for (int d : degrees) {
        if (de_family == "monomial") {
          MonomialDensity md = monomial_density_exact(de_n, d);
          rows.push_back(json::parse(md.to_json()));
          continue;
        }
        DensityReport rep;
        if (de_family == "univariate")
          rep = sample_univariate(d, de_r, g.trials, g.seed);
        else if (de_family == "quadratic")
          rep = sample_quadratic(de_n, de_r, g.trials, g.seed);
        else if (de_family == "psdball")
          rep = psd_ball_fraction(de_n, g.trials, g.seed);
        else if (de_family == "separable")
          rep = sample_separable(de_n, d, de_r, g.trials, g.seed);
        else
          throw Error(ErrorKind::BadInput, "unknown family: " + de_family);
        rows.push_back(json::parse(rep.to_json()));
        csv_rows.push_back(rep.to_csv_row());
      }
      if (!g.csv_path.empty() && !csv_rows.empty()) {
        std::ofstream csv(g.csv_path, std::ios::app);
        if (!csv) throw Error(ErrorKind::BadInput, "cannot open CSV path");
        csv << DensityReport::csv_header() << "\n";
        for (const auto& row : csv_rows) csv << row << "\n";
      }
      json input{{"family", de_family}, {"n", de_n}, {"r", de_r}, {"trials", g.trials}};
      if (!de_sweep.empty())
        input["sweep"] = de_sweep;
      else
        input["d"] = de_d;
      emit(json{{"rows", rows}}, "density", input, g, start);
      return 0;
    }
    if (*cmd_geodesic) {
      auto names = resolve_vars(ge_expr, ge_vars);
      Polynomial f = parse_expression(ge_expr, names);
      Connection conn = load_connection(ge_conn, ge_expr, names);
      if (conn.dim() != f.nvars())
        throw Error(ErrorKind::DimensionMismatch, "connection/function dimension mismatch");
      auto x0 = parse_point_doubles(ge_x0);
      auto v0 = parse_point_doubles(ge_v0);
      GeodesicPath path = integrate_geodesic(conn, x0, v0, ge_T, ge_steps);
      ConvexityReport conv = convexity_along(f, path, g.tol);
      json result;
      result["convex"] = conv.convex;
      result["min_second_difference"] = conv.min_second_difference;
      json endpoint = json::array();
      for (double c : path.positions.back()) endpoint.push_back(c);
      result["endpoint"] = endpoint;
      result["steps"] = ge_steps;
      result["T"] = ge_T;
      json input{{"expr", ge_expr}, {"vars", names}, {"conn", ge_conn},
                 {"x0", ge_x0},     {"v0", ge_v0}};
      emit(result, "geodesic", input, g, start);
      return 0;
    }
  } catch (const Error& e) {
    die(exit_code_for(e), error_kind_name(e.kind()), e.what());
  } catch (const std::exception& e) {
    die(3, "Internal", e.what());
  }
  return 3;
}
