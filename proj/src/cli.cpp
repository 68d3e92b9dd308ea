// Copyright 2026 The ellipdecay Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ellipdecay/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>
#include <regex>
#include <sstream>

#include "ellipdecay/decaylab.hpp"
#include "ellipdecay/errors.hpp"
#include "ellipdecay/nccalc.hpp"
#include "ellipdecay/poly_text.hpp"
#include "ellipdecay/polyalg.hpp"
#include "ellipdecay/spectra.hpp"
#include "ellipdecay/weylconj.hpp"

namespace ellipdecay {

using ojson = nlohmann::ordered_json;

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eni") == std::string::npos) s += ".0";
  return s;
}

void emit_into(const ojson& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case ojson::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + ojson(k).dump() + ": ";
        emit_into(v, out, indent + 2);
      }
      out += "\n" + close + "}";
      return;
    }
    case ojson::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool scalars = std::none_of(j.begin(), j.end(), [](const ojson& e) { return e.is_structured(); });
      if (scalars) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          emit_into(j[i], out, indent);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        emit_into(j[i], out, indent + 2);
      }
      out += "\n" + close + "]";
      return;
    }
    case ojson::value_t::number_float: {
      double v = j.get<double>();
      out += std::isfinite(v) ? fmt_double(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

ojson cplx(std::complex<double> z) { return ojson::array({z.real(), z.imag()}); }

ojson opt_num(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

std::vector<double> parse_vector(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw ValidationError(std::string("malformed ") + what + " component '" + item + "'");
    }
  }
  if (out.empty()) throw ValidationError(std::string(what) + " is empty");
  return out;
}

int infer_dim(const std::string& text) {
  static const std::regex var(R"(x([0-9]+))");
  int d = 1;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), var); it != std::sregex_iterator(); ++it)
    d = std::max(d, std::stoi((*it)[1].str()));
  return d;
}

/// Options shared by every verb that takes a symbol.
struct SymbolInput {
  std::string radial;
  std::string poly;
  std::string poly_json;
  int dim = 0;
  std::string backend = "auto";

  void add_to(CLI::App* app, bool with_backend = true) {
    app->add_option("--radial", radial, "G0 in the variable z; Q(xi) = G0(|xi|^2)");
    app->add_option("--poly", poly, "generic polynomial in x1..xd (read as the symbol variables)");
    app->add_option("--poly-json", poly_json, "generic polynomial as a JSON file");
    app->add_option("--dim", dim, "dimension (default: 1 for radial, inferred for --poly)")->check(CLI::Range(1, 16));
    if (with_backend) app->add_option("--backend", backend, "auto|radial|generic")->check(CLI::IsMember({"auto", "radial", "generic"}));
  }

  int given() const { return !radial.empty() + !poly.empty() + !poly_json.empty(); }
  bool is_radial() const { return !radial.empty(); }
  bool use_radial() const { return is_radial() && backend != "generic"; }

  RadialForm radial_form() const { return RadialForm(parse_unipoly(radial), dim > 0 ? dim : 1); }

  ExactPoly generic() const {
    if (is_radial()) return radial_form().expand();
    if (!poly_json.empty()) {
      std::ifstream in(poly_json);
      if (!in) throw ValidationError("cannot read " + poly_json);
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed polynomial JSON: ") + e.what());
      }
      ExactPoly p = poly_from_json(j);
      if (dim > 0 && dim != p.dim()) throw ValidationError("--dim disagrees with the JSON dimension");
      return p;
    }
    return parse_poly(poly, dim > 0 ? dim : infer_dim(poly));
  }

  void validate() const {
    if (given() != 1) throw ValidationError("exactly one of --radial, --poly, --poly-json is required");
    if (backend == "radial" && !is_radial()) throw ValidationError("--backend radial needs --radial");
  }

  ojson describe() const {
    ojson j;
    if (is_radial()) {
      j["radial"] = format_unipoly(parse_unipoly(radial));
    } else {
      j["poly"] = format_poly(generic());
    }
    j["dim"] = is_radial() ? (dim > 0 ? dim : 1) : generic().dim();
    return j;
  }
};

struct SolverFlags {
  std::string config;
  std::optional<int> starts, max_iterations, feasibility_starts, threads;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol, sigma_min, sigma_max;

  void add_to(CLI::App* app) {
    app->add_option("--config", config, "solver configuration JSON file");
    app->add_option("--starts", starts)->check(CLI::PositiveNumber);
    app->add_option("--seed", seed);
    app->add_option("--tol", tol)->check(CLI::PositiveNumber);
    app->add_option("--max-iter", max_iterations)->check(CLI::PositiveNumber);
    app->add_option("--sigma-min", sigma_min)->check(CLI::PositiveNumber);
    app->add_option("--sigma-max", sigma_max)->check(CLI::PositiveNumber);
    app->add_option("--feasibility-starts", feasibility_starts)->check(CLI::PositiveNumber);
    app->add_option("--threads", threads)->check(CLI::NonNegativeNumber);
  }

  SolverConfig resolve() const {
    SolverConfig c;
    if (!config.empty()) {
      std::ifstream in(config);
      if (!in) throw ValidationError("cannot read " + config);
      nlohmann::json j;
      try {
        in >> j;
        for (const auto& [k, v] : j.items()) {
          if (k == "starts") c.starts = v.get<int>();
          else if (k == "seed") c.seed = v.get<std::uint64_t>();
          else if (k == "tol") c.tol = v.get<double>();
          else if (k == "max_iterations") c.max_iterations = v.get<int>();
          else if (k == "sigma_min") c.sigma_min = v.get<double>();
          else if (k == "sigma_max") c.sigma_max = v.get<double>();
          else if (k == "feasibility_starts") c.feasibility_starts = v.get<int>();
          else if (k == "threads") c.threads = v.get<int>();
          else throw ValidationError("unknown solver config key '" + k + "'");
        }
      } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed solver config: ") + e.what());
      }
    }
    if (starts) c.starts = *starts;
    if (seed) c.seed = *seed;
    if (tol) c.tol = *tol;
    if (max_iterations) c.max_iterations = *max_iterations;
    if (sigma_min) c.sigma_min = *sigma_min;
    if (sigma_max) c.sigma_max = *sigma_max;
    if (feasibility_starts) c.feasibility_starts = *feasibility_starts;
    if (threads) c.threads = *threads;
    if (!(c.sigma_min < c.sigma_max)) throw ValidationError("sigma_min must be below sigma_max");
    return c;
  }
};

// threads are left out: results do not depend on them
ojson solver_json(const SolverConfig& c) {
  return {{"starts", c.starts},
          {"seed", c.seed},
          {"tol", c.tol},
          {"max_iterations", c.max_iterations},
          {"sigma_min", c.sigma_min},
          {"sigma_max", c.sigma_max},
          {"feasibility_starts", c.feasibility_starts}};
}

ojson point_json(const ExceptionalPoint& p) {
  return {{"sigma", p.sigma}, {"omega", p.omega}, {"xi", p.xi}, {"residual", p.residual}};
}

ojson exceptional_json(const ExceptionalSet& s) {
  ojson j;
  ojson sig = ojson::array(), pts = ojson::array(), cont = ojson::array(), bd = ojson::array();
  for (const auto& p : s.discrete) {
    sig.push_back(p.sigma);
    pts.push_back(point_json(p));
  }
  for (const auto& c : s.continua)
    cont.push_back({{"sigma_lo", c.sigma_lo},
                    {"z0", cplx(c.z0)},
                    {"multiplicity", c.multiplicity},
                    {"lower_endpoint_included", c.lower_endpoint_included}});
  for (const auto& z : s.boundary) bd.push_back(cplx(z));
  j["discrete"] = sig;
  j["points"] = pts;
  j["continua"] = cont;
  j["boundary"] = bd;
  j["lambda"] = s.lambda;
  j["dim"] = s.dim;
  j["source"] = to_string(s.source);
  return j;
}

ojson ct_json(const CtBound& c) {
  return {{"value", c.value}, {"in_range", c.in_range}, {"lo", c.lo}, {"hi", c.hi}, {"method", c.method}};
}

ojson geometry_json(const SpectrumGeometry& g) {
  return {{"critical_values", g.critical_values},
          {"range_min", opt_num(g.range_min)},
          {"range_max", opt_num(g.range_max)},
          {"certified", g.certified}};
}

ojson stationary_json(const StationaryResult& r) {
  return {{"solvable", r.solvable},
          {"best_residual", r.best_residual},
          {"omega", r.omega},
          {"xi", r.xi},
          {"method", r.method},
          {"z0", r.z0 ? cplx(*r.z0) : ojson(nullptr)}};
}

ojson potential_json(const PotentialClass& p) {
  return {{"compact_support", p.compact_support},
          {"v1", p.v1},
          {"v2", p.compact_support ? ojson(nullptr) : ojson(p.v2)},
          {"little_o", p.little_o},
          {"delta", p.delta}};
}

ojson report_json(const TheoremReport& r) {
  ojson checks = ojson::array();
  for (const auto& c : r.applicable)
    checks.push_back({{"name", c.name}, {"applies", c.applies}, {"requirement", c.requirement}, {"note", c.note}});
  return {{"lambda", r.lambda},
          {"degree", r.degree},
          {"lambda_in_range", r.lambda_in_range},
          {"lambda_critical", r.lambda_critical},
          {"sigma_exc", exceptional_json(r.sigma_exc)},
          {"ct", ct_json(r.ct)},
          {"stationary_solvable", r.stationary_solvable},
          {"stationary_residual", r.stationary_residual},
          {"potential", potential_json(r.potential)},
          {"applicable", checks},
          {"refined_branch", r.refined_branch},
          {"heuristic", r.heuristic}};
}

ojson fit_json(const DecayFit& f) {
  return {{"sigma_hat", f.sigma_hat}, {"mode", to_string(f.mode)}, {"eps", f.eps},  {"window", {f.x_lo, f.x_hi}},
          {"rsq", f.rsq},             {"points", f.points},         {"oscillatory", f.oscillatory}};
}

void emit_text(const ojson& j, std::ostream& out, const std::string& prefix = "") {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) emit_text(v, out, prefix.empty() ? k : prefix + "." + k);
    return;
  }
  std::string s;
  emit_into(j, s, 0);
  std::replace(s.begin(), s.end(), '\n', ' ');
  out << prefix << ": " << s << "\n";
}

ExactPoly random_q(std::mt19937_64& rng, int d) {
  std::uniform_int_distribution<int> coef(-3, 3);
  ExactPoly q(d);
  for (const auto& a : multi_indices_up_to(d, 4))
    if (!a.is_zero() && rng() % 3 == 0) q.add_term(a, coef(rng));
  if (q.is_zero()) q.add_term(MultiIndex::unit(d, 0), 1);
  return q;
}

ojson comm_case(const ExactPoly& q, bool timing) {
  const int d = q.dim();
  auto t0 = std::chrono::steady_clock::now();
  NCExpr general = commutator_general(q, d);
  NCExpr brute = commutator_brute(q, d);
  NCExpr fe = commutator_F(q, d) + commutator_E(q, d);
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {{"Q", format_poly(q)},
          {"d", d},
          {"terms_general", general.terms().size()},
          {"terms_brute", brute.terms().size()},
          {"equal", general == brute},
          {"equal_F_plus_E", fe == brute},
          {"wall_time", timing ? ojson(dt) : ojson(nullptr)}};
}

}  // namespace

std::string emit_json(const ojson& j) {
  std::string s;
  emit_into(j, s, 0);
  return s;
}

int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exceptional decay rates of elliptic polynomial operators"};
  app.require_subcommand(1, 1);
  std::string format = "json";

  double lambda = 0, sigma = 0;
  SymbolInput sym;
  SolverFlags solver;

  auto* exc = app.add_subcommand("exc", "exceptional decay rates at an energy");
  sym.add_to(exc);
  solver.add_to(exc);
  exc->add_option("--lambda", lambda, "energy")->required();

  auto* ct = app.add_subcommand("ct", "Combes-Thomas lower bound");
  sym.add_to(ct);
  solver.add_to(ct);
  ct->add_option("--lambda", lambda)->required();

  auto* crit = app.add_subcommand("crit", "critical values and range");
  sym.add_to(crit);
  solver.add_to(crit);

  auto* stat = app.add_subcommand("stationary", "solvability of Q(zeta) = lambda, grad Q(zeta) = 0");
  sym.add_to(stat);
  solver.add_to(stat);
  stat->add_option("--lambda", lambda)->required();
  stat->add_option("--sigma", sigma)->required()->check(CLI::PositiveNumber);

  std::string omega_text, xi_text;
  bool flow_exc = false;
  auto* flow = app.add_subcommand("flow", "right-hand side of the (omega, xi) flow");
  sym.add_to(flow, false);
  solver.add_to(flow);
  auto* flow_sigma = flow->add_option("--sigma", sigma)->check(CLI::PositiveNumber);
  auto* flow_omega = flow->add_option("--omega", omega_text, "comma separated unit vector");
  auto* flow_xi = flow->add_option("--xi", xi_text, "comma separated");
  auto* flow_lambda = flow->add_option("--lambda", lambda, "evaluate at every exceptional witness instead");
  flow->add_flag("--at-witnesses", flow_exc, "with --lambda: use the witnesses of exc");

  bool all_monomials = false, timing = false;
  int max_degree = 4, random_count = 0;
  std::uint64_t comm_seed = 20240601;
  std::vector<int> dims{1, 2};
  auto* comm = app.add_subcommand("comm-check", "commutator formula against brute-force normal ordering");
  comm->add_option("--poly", sym.poly, "Q in x1..xd");
  comm->add_option("--dim", sym.dim)->check(CLI::Range(1, 4));
  comm->add_flag("--all-monomials", all_monomials, "every monomial up to --max-degree for each of --dims");
  comm->add_option("--max-degree", max_degree)->check(CLI::Range(1, 6));
  comm->add_option("--dims", dims)->delimiter(',')->check(CLI::Range(1, 4));
  comm->add_option("--random", random_count, "number of random Q per dimension")->check(CLI::NonNegativeNumber);
  comm->add_option("--seed", comm_seed);
  comm->add_flag("--timing", timing, "report wall_time (output no longer reproducible)");

  std::string f_text;
  bool weyl_check = false;
  auto* weyl = app.add_subcommand("weyl", "Weyl symbol of e^f Op^w(Q) e^-f");
  weyl->add_option("--q", sym.poly, "Q in x1..xd, read as xi1..xid")->required();
  weyl->add_option("--f", f_text, "f in x1..xd")->required();
  weyl->add_option("--dim", sym.dim)->check(CLI::Range(1, 8));
  weyl->add_flag("--check", weyl_check, "compare against the operator-ordering oracle");

  std::string g0_text, csv_path;
  LabConfig lab_cfg;
  double eps = 0;
  auto* lab = app.add_subcommand("lab", "1D decay lab: build V, solve, fit the decay rate");
  lab->add_option("--g0", g0_text, "G0 in z")->required();
  lab->add_option("--lambda", lambda)->required();
  lab->add_option("--root-index", lab_cfg.root_index)->check(CLI::NonNegativeNumber);
  lab->add_option("--R", lab_cfg.R, "cutoff radius (default: automatic)")->check(CLI::PositiveNumber);
  lab->add_option("--L", lab_cfg.L)->check(CLI::PositiveNumber);
  lab->add_option("--N", lab_cfg.N)->check(CLI::PositiveNumber);
  auto* lab_eps = lab->add_option("--eps", eps, "also fit against r_eps")->check(CLI::Range(0.0, 1.0));
  lab->add_option("--csv", csv_path, "write x,|phi|,V to this file");

  PotentialClass pc;
  std::string v1_text = "0";
  auto* report = app.add_subcommand("report", "which decay statements apply");
  sym.add_to(report);
  solver.add_to(report);
  report->add_option("--lambda", lambda)->required();
  report->add_flag("--compact", pc.compact_support, "V has compact support");
  report->add_option("--v1", v1_text, "decay exponents of d^alpha V1 by |alpha|, comma separated");
  report->add_option("--v2", pc.v2, "decay exponent of V2");
  report->add_flag("--little-o", pc.little_o);
  report->add_option("--delta", pc.delta)->check(CLI::PositiveNumber);

  for (auto* sub : app.get_subcommands({}))
    sub->add_option("--format", format, "json|text|csv")->check(CLI::IsMember({"json", "text", "csv"}));

  std::vector<std::string> args(argv.rbegin(), argv.rend());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return exit_ok;
    }
    err << "error: " << e.what() << "\n";
    auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return exit_validation;
  }
  CLI::App* cmd = app.get_subcommands().front();
  const std::string verb = cmd->get_name();

  try {
    if (format == "csv" && verb != "lab") throw ValidationError("--format csv is only available for lab");
    ojson doc;
    doc["verb"] = verb;
    if (verb == "exc" || verb == "ct" || verb == "crit" || verb == "stationary" || verb == "report") {
      sym.validate();
      doc["input"] = sym.describe();
      SolverConfig cfg = solver.resolve();
      const bool rad = sym.use_radial();
      if (verb != "crit") doc["lambda"] = lambda;
      doc["backend"] = rad ? "radial" : "generic";
      if (verb == "exc") {
        if (rad) {
          doc["result"] = exceptional_json(radial_exceptional(sym.radial_form(), lambda));
          doc["solver"] = nullptr;
        } else {
          ExactPoly q = sym.generic();
          ExceptionalSet s;
          s.discrete = generic_exceptional(q, lambda, cfg);
          s.lambda = lambda;
          s.dim = q.dim();
          s.source = ExceptionalSet::Source::generic_numeric;
          doc["result"] = exceptional_json(s);
          doc["solver"] = solver_json(cfg);
        }
      } else if (verb == "ct") {
        doc["result"] = ct_json(rad ? ct_bound(sym.radial_form(), lambda) : ct_bound(sym.generic(), lambda, cfg));
        doc["solver"] = rad ? ojson(nullptr) : solver_json(cfg);
      } else if (verb == "crit") {
        doc["result"] = geometry_json(rad ? spectrum_geometry(sym.radial_form()) : spectrum_geometry(sym.generic(), cfg));
        doc["solver"] = rad ? ojson(nullptr) : solver_json(cfg);
      } else if (verb == "stationary") {
        doc["sigma"] = sigma;
        doc["result"] = stationary_json(rad ? stationary_check(sym.radial_form(), lambda, sigma)
                                            : stationary_check(sym.generic(), lambda, sigma, cfg));
        doc["solver"] = rad ? ojson(nullptr) : solver_json(cfg);
      } else {
        pc.v1 = parse_vector(v1_text, "--v1");
        doc["result"] = report_json(rad ? theorem_report(sym.radial_form(), lambda, pc)
                                        : theorem_report(sym.generic(), lambda, pc, cfg));
        doc["solver"] = rad ? ojson(nullptr) : solver_json(cfg);
      }
    } else if (verb == "flow") {
      sym.validate();
      ExactPoly q = sym.generic();
      doc["input"] = sym.describe();
      if (flow_lambda->count() > 0 || flow_exc) {
        if (flow_lambda->count() == 0) throw ValidationError("--at-witnesses needs --lambda");
        if (flow_omega->count() + flow_xi->count() + flow_sigma->count() > 0)
          throw ValidationError("--lambda replaces --sigma/--omega/--xi");
        SolverConfig cfg = solver.resolve();
        std::vector<ExceptionalPoint> pts;
        if (sym.is_radial()) {
          pts = radial_exceptional(sym.radial_form(), lambda).discrete;
          doc["solver"] = nullptr;
        } else {
          pts = generic_exceptional(q, lambda, cfg);
          doc["solver"] = solver_json(cfg);
        }
        doc["lambda"] = lambda;
        ojson rows = ojson::array();
        for (const auto& p : pts) {
          FlowRhs f = flow_rhs(q, p.sigma, p.omega, p.xi);
          rows.push_back({{"sigma", p.sigma}, {"omega", p.omega}, {"xi", p.xi}, {"d_omega", f.d_omega}, {"d_xi", f.d_xi},
                          {"norm", f.norm()}});
        }
        doc["result"] = rows;
      } else {
        if (flow_sigma->count() == 0 || flow_omega->count() == 0 || flow_xi->count() == 0)
          throw ValidationError("flow needs --sigma, --omega and --xi (or --lambda)");
        auto omega = parse_vector(omega_text, "--omega");
        auto xi = parse_vector(xi_text, "--xi");
        if (static_cast<int>(omega.size()) != q.dim() || static_cast<int>(xi.size()) != q.dim())
          throw ValidationError("--omega and --xi must have one entry per dimension");
        FlowRhs f = flow_rhs(q, sigma, omega, xi);
        doc["sigma"] = sigma;
        doc["result"] = {{"omega", omega}, {"xi", xi}, {"d_omega", f.d_omega}, {"d_xi", f.d_xi}, {"norm", f.norm()}};
      }
    } else if (verb == "comm-check") {
      std::vector<ExactPoly> qs;
      if (!sym.poly.empty()) qs.push_back(parse_poly(sym.poly, sym.dim > 0 ? sym.dim : infer_dim(sym.poly)));
      if (all_monomials)
        for (int d : dims)
          for (const auto& a : multi_indices_up_to(d, max_degree))
            if (!a.is_zero()) qs.push_back(ExactPoly::monomial(a, 1));
      std::mt19937_64 rng(comm_seed);
      for (int d : dims)
        for (int k = 0; k < random_count; ++k) qs.push_back(random_q(rng, d));
      if (qs.empty()) throw ValidationError("comm-check needs --poly, --all-monomials or --random");
      ojson cases = ojson::array();
      bool all = true;
      for (const auto& q : qs) {
        cases.push_back(comm_case(q, timing));
        all = all && cases.back()["equal"].get<bool>() && cases.back()["equal_F_plus_E"].get<bool>();
      }
      doc["seed"] = comm_seed;
      doc["cases"] = cases;
      doc["all_equal"] = all;
    } else if (verb == "weyl") {
      const int d = sym.dim > 0 ? sym.dim : std::max(infer_dim(sym.poly), infer_dim(f_text));
      ExactPoly q = parse_poly(sym.poly, d), f = parse_poly(f_text, d);
      PhasePoly b = weyl_conjugate(q, f);
      doc["input"] = {{"q", format_poly(q, "xi")}, {"f", format_poly(f)}, {"dim", d}};
      doc["symbol"] = to_string(b);
      if (weyl_check) {
        PhasePoly o = conjugate_oracle(q, f);
        doc["check"] = {{"oracle", to_string(o)}, {"equal", o == b}};
      } else {
        doc["check"] = nullptr;
      }
    } else if (verb == "lab") {
      if (lab_eps->count() > 0) {
        if (!(eps > 0 && eps < 1)) throw ValidationError("--eps must lie in (0, 1)");
        lab_cfg.eps = eps;
      }
      UniPoly g0 = parse_unipoly(g0_text);
      LabResult r = run_lab(g0, lambda, lab_cfg);
      if (!csv_path.empty()) {
        std::ofstream f(csv_path);
        if (!f) throw ValidationError("cannot write " + csv_path);
        f << lab_csv(r);
      }
      if (format == "csv") {
        out << lab_csv(r);
        return exit_ok;
      }
      doc["input"] = {{"g0", format_unipoly(g0)}, {"root_index", lab_cfg.root_index}, {"L", lab_cfg.L}, {"N", lab_cfg.N},
                      {"R", lab_cfg.R > 0 ? ojson(lab_cfg.R) : ojson(nullptr)}, {"eps", lab_cfg.eps ? ojson(*lab_cfg.eps) : ojson(nullptr)}};
      doc["lambda"] = lambda;
      doc["result"] = {{"lambda_num", r.eigen.lambda_num},
                       {"residual", r.eigen.residual},
                       {"sigma_hat", r.sigma_hat},
                       {"sigma_predicted", r.sigma_predicted},
                       {"relative_error", r.relative_error},
                       {"z0", cplx(r.z0)},
                       {"R", r.R},
                       {"build_residual", r.build_residual},
                       {"V_max", r.V_max},
                       {"V_support", r.V_support},
                       {"iterations", r.eigen.iterations},
                       {"degenerate", r.eigen.degenerate},
                       {"fit_right", fit_json(r.fit_right)},
                       {"fit_left", fit_json(r.fit_left)},
                       {"fit_r_eps", r.fit_reps ? fit_json(*r.fit_reps) : ojson(nullptr)}};
    }
    if (doc.contains("result") && doc["result"].is_object()) {
      ojson flat;
      flat["verb"] = verb;
      for (const auto& [k, v] : doc["result"].items()) flat[k] = v;
      for (const auto& [k, v] : doc.items())
        if (k != "result" && !flat.contains(k)) flat[k] = v;
      doc = std::move(flat);
    } else if (doc.contains("result")) {
      doc["witnesses"] = doc["result"];
      doc.erase("result");
    }
    if (format == "text") {
      emit_text(doc, out);
    } else {
      out << emit_json(doc) << "\n";
    }
    return exit_ok;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    if (verb == "exc" || verb == "ct" || verb == "crit" || verb == "stationary" || verb == "report" || verb == "flow")
      if (sym.given() != 1) err << cmd->help();
    return exit_validation;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return exit_convergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_internal;
  }
}

}  // namespace ellipdecay
