/*
 * Copyright 2026 The symmint Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "symmint/error.hpp"
#include "symmint/oracle.hpp"
#include "symmint/parallel.hpp"
#include "symmint/siegel.hpp"
#include "symmint/spaces.hpp"
#include "symmint/spec_strings.hpp"
#include "symmint/verification.hpp"
#include "symmint/zbeta.hpp"

namespace symmint::cli {

namespace {

using json = nlohmann::json;

// Raised for inputs that parse syntactically but are invalid (exit 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  unsigned threads = default_thread_count();
  std::string out_path;
  std::string format = "json";
  double rel_tol = Tolerance{}.rel;
  double abs_tol = Tolerance{}.abs;
};

struct ZbetaArgs {
  int beta = 0;
  int n = 0;
  std::string measure;
  bool circle = false;
  bool stabilize = false;
  std::string precision = "standard";
  std::string epsilon = "sign";
};

struct OracleArgs {
  int beta = 0;
  int n = 0;
  std::string measure;
  std::string method = "tensor";
  std::size_t samples = 1'000'000;
  std::optional<std::uint64_t> seed;
  double rel_target = OracleOptions{}.rel_target;
};

struct VerifyArgs {
  std::string suite = "all";
  double tol = VerifyOptions{}.oracle_tol;
};

struct SpaceArgs {
  std::string family;
  int beta = 0;
  std::optional<int> n;
  std::optional<int> p;
  std::optional<int> q;
  std::string weight;
  std::optional<std::string> ratio;
  double chart_scale = 1.0;
};

struct SiegelArgs {
  int n = 0;
  double sigma = 0.0;
  bool kernel = false;
};

void add_common(CLI::App* sub, Common& c, bool table) {
  sub->add_option("--threads", c.threads, "Worker threads (default: SYMMINT_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--out", c.out_path, "Write the report to PATH instead of stdout");
  std::vector<std::string> formats{"json", "csv"};
  if (table) {
    formats.insert(formats.begin(), "table");
    c.format = "table";
  }
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember(formats));
}

void add_tolerances(CLI::App* sub, Common& c) {
  sub->add_option("--rel-tol", c.rel_tol, "Relative quadrature tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--abs-tol", c.abs_tol, "Absolute quadrature tolerance")->check(CLI::NonNegativeNumber);
}

Tolerance tolerance(const Common& c) {
  Tolerance t;
  t.rel = c.rel_tol;
  t.abs = c.abs_tol;
  return t;
}

Beta parse_beta(int b) {
  if (b != 1 && b != 2 && b != 4) throw UsageError("--beta must be 1, 2 or 4");
  return static_cast<Beta>(b);
}

Measure parse_measure_arg(const std::string& spec) {
  try {
    return parse_measure(spec);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

WeightSpec parse_weight_arg(const std::string& spec) {
  try {
    return parse_weight(spec);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json eval_json(const EvalResult& r) {
  return {{"value", r.value},
          {"err_estimate", r.err_estimate},
          {"imag_residual", optional_number(r.imag_residual)},
          {"method", r.method},
          {"matrix_dim", r.matrix_dim}};
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  std::string text;
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) text += ';';
      text += j[i].is_string() ? j[i].get<std::string>() : j[i].dump();
    }
  } else if (j.is_string()) {
    text = j.get<std::string>();
  } else if (!j.is_null()) {
    text = j.dump();
  }
  out.emplace_back(prefix, text);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string render(const json& j, const std::string& format) {
  if (format != "csv") return j.dump(2) + "\n";
  std::vector<std::pair<std::string, std::string>> cells;
  flatten(j, "", cells);
  std::string head;
  std::string row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) {
      head += ',';
      row += ',';
    }
    head += csv_field(cells[i].first);
    row += csv_field(cells[i].second);
  }
  return head + "\n" + row + "\n";
}

std::string render_verify(const std::vector<CheckResult>& results, const VerifyArgs& a,
                          const std::string& format) {
  if (format == "table") return format_table(results);
  std::size_t failed = 0;
  for (const auto& r : results) failed += r.pass ? 0 : 1;
  if (format == "json") {
    json checks = json::array();
    for (const auto& r : results)
      checks.push_back({{"suite", r.suite},
                        {"name", r.name},
                        {"status", r.pass ? "PASS" : "FAIL"},
                        {"value", r.value},
                        {"reference", r.reference},
                        {"error", r.error},
                        {"tolerance", r.tolerance},
                        {"note", r.note}});
    json j{{"suite", a.suite},
           {"tol", a.tol},
           {"checks", checks},
           {"passed", results.size() - failed},
           {"failed", failed}};
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "suite,name,status,value,reference,error,tolerance,note\n";
  for (const auto& r : results) {
    os << csv_field(r.suite) << ',' << csv_field(r.name) << ',' << (r.pass ? "PASS" : "FAIL") << ','
       << json(r.value).dump() << ',' << json(r.reference).dump() << ',' << json(r.error).dump() << ','
       << json(r.tolerance).dump() << ',' << csv_field(r.note) << '\n';
  }
  return os.str();
}

// Writes text to --out or the output stream.
bool emit(const std::string& text, const Common& c, std::ostream& out, std::ostream& err) {
  if (c.out_path.empty()) {
    out << text;
    return true;
  }
  std::ofstream f(c.out_path, std::ios::binary);
  if (!f) {
    err << "error: cannot open '" << c.out_path << "' for writing\n";
    return false;
  }
  f << text;
  return static_cast<bool>(f);
}

json error_json(const Error& e, const json& echo) {
  return {{"error", {{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}}},
          {"config_echo", echo}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"symmint: invariant integrals on symmetric spaces as determinants and Pfaffians",
               "symmint"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "symmint 0.1.0");

  Common common;
  ZbetaArgs za;
  OracleArgs oa;
  VerifyArgs va;
  SpaceArgs sa;
  SiegelArgs ga;

  auto* zb = app.add_subcommand("zbeta", "Evaluate z_beta(mu) as a determinant or Pfaffian");
  zb->add_option("--beta", za.beta, "1, 2 or 4")->required();
  zb->add_option("--n", za.n, "Number of points N")->required()->check(CLI::PositiveNumber);
  zb->add_option("--measure", za.measure, "Measure specification, e.g. uniform:a=0,b=1")->required();
  zb->add_flag("--circle", za.circle, "Require a measure on the unit circle");
  zb->add_flag("--stabilize", za.stabilize, "Use the stabilized monic basis (real line)");
  zb->add_option("--precision", za.precision, "Linear algebra precision")
      ->check(CLI::IsMember({"standard", "extended"}));
  zb->add_option("--epsilon", za.epsilon, "Kernel of the beta = 1 form")
      ->check(CLI::IsMember({"sign", "half-sign", "unit-step"}));
  add_common(zb, common, false);
  add_tolerances(zb, common);

  auto* orc = app.add_subcommand("oracle", "Brute-force z_beta(mu) for small N");
  orc->add_option("--beta", oa.beta, "1, 2 or 4")->required();
  orc->add_option("--n", oa.n, "Number of points N")->required()->check(CLI::PositiveNumber);
  orc->add_option("--measure", oa.measure, "Measure specification")->required();
  orc->add_option("--method", oa.method, "tensor or mc")->check(CLI::IsMember({"tensor", "mc"}));
  orc->add_option("--samples", oa.samples, "Monte Carlo sample count")->check(CLI::PositiveNumber);
  orc->add_option("--seed", oa.seed, "Monte Carlo seed (required with --method mc)");
  orc->add_option("--rel-target", oa.rel_target, "Tensor refinement stopping gap")
      ->check(CLI::PositiveNumber);
  add_common(orc, common, false);
  add_tolerances(orc, common);

  auto* ver = app.add_subcommand("verify", "Run the self-verification suites");
  ver->add_option("--suite", va.suite, "identities, spaces, siegel or all")
      ->check(CLI::IsMember(suite_names()));
  ver->add_option("--tol", va.tol, "Relative tolerance of the oracle comparisons")
      ->check(CLI::PositiveNumber);
  add_common(ver, common, true);

  auto* sp = app.add_subcommand("space", "Invariant integral over a symmetric space, up to C~");
  sp->add_option("--space", sa.family,
                 "cone, cone_dual, grassmann, grassmann_dual or classical_domain")
      ->required();
  sp->add_option("--beta", sa.beta, "1, 2 or 4")->required();
  sp->add_option("--n", sa.n, "N for cone and domain families")->check(CLI::PositiveNumber);
  sp->add_option("--p", sa.p, "p for Grassmann families")->check(CLI::PositiveNumber);
  sp->add_option("--q", sa.q, "q for Grassmann families")->check(CLI::PositiveNumber);
  sp->add_option("--weight", sa.weight, "Weight specification, e.g. gauss:sigma=1")->required();
  sp->add_option("--ratio", sa.ratio, "Denominator weight; prints z(w)/z(ratio)");
  sp->add_option("--chart-scale", sa.chart_scale, "Length scale of the boost chart")
      ->check(CLI::PositiveNumber);
  add_common(sp, common, false);
  add_tolerances(sp, common);

  auto* sg = app.add_subcommand("siegel", "Gaussian on the Siegel disk: moments, Z, kernel");
  sg->add_option("--n", ga.n, "Matrix size N")->required()->check(CLI::PositiveNumber);
  sg->add_option("--sigma", ga.sigma, "Dispersion sigma")->required()->check(CLI::PositiveNumber);
  sg->add_flag("--kernel", ga.kernel, "Add Christoffel-Darboux kernel diagnostics");
  add_common(sg, common, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  json echo{{"subcommand", active->get_name()}, {"threads", common.threads}};
  std::function<int()> action;

  try {
    if (active == zb) {
      const Beta beta = parse_beta(za.beta);
      const Measure mu = parse_measure_arg(za.measure);
      if (za.circle && !mu.on_circle()) throw UsageError("--circle given but the measure is on the real line");
      EvalOptions eo;
      eo.tol = tolerance(common);
      eo.threads = common.threads;
      eo.precision = za.precision == "extended" ? Precision::extended : Precision::standard;
      eo.epsilon = za.epsilon == "half-sign"   ? EpsilonConvention::half_sign
                   : za.epsilon == "unit-step" ? EpsilonConvention::unit_step
                                               : EpsilonConvention::sign;
      echo.update({{"beta", za.beta}, {"n", za.n}, {"measure", za.measure}, {"measure_label", mu.label()},
                   {"circle", mu.on_circle()}, {"stabilize", za.stabilize}, {"precision", za.precision},
                   {"epsilon", za.epsilon}, {"rel_tol", common.rel_tol}, {"abs_tol", common.abs_tol}});
      action = [&, beta, mu, eo] {
        json j = eval_json(zbeta(ZRequest{mu, beta, za.n, za.stabilize}, eo));
        j["config_echo"] = echo;
        return emit(render(j, common.format), common, out, err) ? kExitOk : kExitFailure;
      };
    } else if (active == orc) {
      const Beta beta = parse_beta(oa.beta);
      const Measure mu = parse_measure_arg(oa.measure);
      const bool mc = oa.method == "mc";
      if (mc && !oa.seed) throw UsageError("--seed is required with --method mc");
      OracleRequest req{mu, beta, oa.n,
                        mc ? OracleMethod::monte_carlo : OracleMethod::tensor_quadrature,
                        MonteCarloOptions{oa.samples, oa.seed.value_or(0)}};
      OracleOptions oo;
      oo.tol = tolerance(common);
      oo.threads = common.threads;
      oo.rel_target = oa.rel_target;
      echo.update({{"beta", oa.beta}, {"n", oa.n}, {"measure", oa.measure}, {"measure_label", mu.label()},
                   {"method", oa.method}, {"rel_tol", common.rel_tol}, {"abs_tol", common.abs_tol}});
      if (mc) echo.update({{"samples", oa.samples}, {"seed", *oa.seed}});
      else echo["rel_target"] = oa.rel_target;
      action = [&, req, oo, mc] {
        const Estimate<double> e = zbeta_bruteforce(req, oo);
        json j{{"value", e.value},
               {"err_estimate", e.abs_error},
               {"imag_residual", nullptr},
               {"method", mc ? "monte_carlo" : "tensor_quadrature"},
               {"matrix_dim", nullptr},
               {"config_echo", echo}};
        return emit(render(j, common.format), common, out, err) ? kExitOk : kExitFailure;
      };
    } else if (active == ver) {
      action = [&] {
        VerifyOptions vo;
        vo.oracle_tol = va.tol;
        vo.threads = common.threads;
        const std::vector<CheckResult> results = run_suite(va.suite, vo);
        if (!emit(render_verify(results, va, common.format), common, out, err)) return kExitFailure;
        return all_passed(results) ? kExitOk : kExitFailure;
      };
    } else if (active == sp) {
      SpaceSpec space;
      try {
        space.family = space_family_from_string(sa.family);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
      space.beta = parse_beta(sa.beta);
      const bool grass = space.family == SpaceFamily::grassmann || space.family == SpaceFamily::grassmann_dual;
      if (grass) {
        if (!sa.p || !sa.q || sa.n) throw UsageError("Grassmann families take --p and --q (not --n)");
        space.p = *sa.p;
        space.q = *sa.q;
        if (space.p > space.q) throw UsageError("--p must not exceed --q");
      } else {
        if (!sa.n || sa.p || sa.q) throw UsageError("this family takes --n (not --p/--q)");
        space.n = *sa.n;
      }
      const WeightSpec w = parse_weight_arg(sa.weight);
      std::optional<WeightSpec> den;
      if (sa.ratio) den = parse_weight_arg(*sa.ratio);
      EvalOptions eo;
      eo.tol = tolerance(common);
      eo.threads = common.threads;
      ReduceOptions ro;
      ro.tol = eo.tol;
      ro.chart_scale = sa.chart_scale;
      echo.update({{"space", to_string(space.family)}, {"beta", sa.beta}, {"weight", sa.weight},
                   {"chart_scale", sa.chart_scale}, {"rel_tol", common.rel_tol}, {"abs_tol", common.abs_tol}});
      if (grass) echo.update({{"p", space.p}, {"q", space.q}});
      else echo["n"] = space.n;
      if (den) echo["ratio"] = *sa.ratio;
      action = [&, space, w, den, eo, ro] {
        json j;
        if (den) {
          const Estimate<double> r = expectation_ratio(space, w, *den, eo, ro);
          j = {{"value", r.value}, {"err_estimate", r.abs_error}, {"imag_residual", nullptr},
               {"method", "ratio"}, {"matrix_dim", zbeta_matrix_dim(space.beta, space.points())},
               {"points", space.points()}, {"constant_excluded", false}};
        } else {
          const InvariantResult r = integrate_invariant(space, w, eo, ro);
          j = eval_json(r.z);
          j["points"] = r.points;
          j["measure"] = r.measure;
          j["constant_excluded"] = r.constant_excluded;
        }
        json roots = json::array();
        for (const auto& m : root_multiplicities(space)) roots.push_back({{"root", m.root}, {"multiplicity", m.multiplicity}});
        j["root_multiplicities"] = roots;
        j["config_echo"] = echo;
        return emit(render(j, common.format), common, out, err) ? kExitOk : kExitFailure;
      };
    } else if (active == sg) {
      echo.update({{"n", ga.n}, {"sigma", ga.sigma}, {"kernel", ga.kernel}});
      action = [&] {
        const SiegelZ z = siegel_Z(ga.n, ga.sigma);
        json j{{"value", z.value},
               {"err_estimate", z.err_estimate},
               {"imag_residual", nullptr},
               {"method", "hankel-det"},
               {"matrix_dim", ga.n},
               {"moments", z.moments},
               {"constant_excluded", true}};
        if (ga.kernel) {
          const CDKernel k = cd_kernel(siegel_measure(ga.sigma), ga.n);
          j["kernel"] = {{"degree", k.degree()},
                         {"trace", kernel_trace(k).value},
                         {"frobenius", kernel_frobenius(k)},
                         {"recurrence_a", k.recurrence_a()},
                         {"recurrence_b", k.recurrence_b()},
                         {"ortho_coeffs", k.ortho_coeffs()}};
        }
        j["config_echo"] = echo;
        return emit(render(j, common.format), common, out, err) ? kExitOk : kExitFailure;
      };
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << active->help();
    return kExitUsage;
  }

  try {
    return action();
  } catch (const Error& e) {
    emit(render(error_json(e, echo), common.format), common, out, err);
    return kExitFailure;
  }
}

}  // namespace symmint::cli
