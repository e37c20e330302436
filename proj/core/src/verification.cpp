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

#include "symmint/verification.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <utility>

#include "symmint/error.hpp"
#include "symmint/linalg.hpp"
#include "symmint/oracle.hpp"
#include "symmint/siegel.hpp"
#include "symmint/spaces.hpp"
#include "symmint/zbeta.hpp"

namespace symmint {

namespace {

constexpr double kPi = std::numbers::pi;

class Recorder {
 public:
  Recorder(std::string suite, std::vector<CheckResult>& out) : suite_(std::move(suite)), out_(out) {}

  // Runs body; a thrown Error becomes a failed check carrying its message.
  void run(const std::string& name, const std::function<void(CheckResult&)>& body) {
    CheckResult r;
    r.suite = suite_;
    r.name = name;
    try {
      body(r);
    } catch (const Error& e) {
      r.pass = false;
      r.note = std::string(error_code_name(e.code())) + ": " + e.what();
    } catch (const std::exception& e) {
      r.pass = false;
      r.note = e.what();
    }
    out_.push_back(std::move(r));
  }

  void relative(const std::string& name, const std::function<std::pair<double, double>()>& f,
                double tol) {
    run(name, [&](CheckResult& r) {
      const auto [v, ref] = f();
      fill_relative(r, v, ref, tol);
    });
  }

  void truth(const std::string& name, const std::function<bool()>& f) {
    run(name, [&](CheckResult& r) {
      r.pass = f();
      r.value = r.pass ? 1.0 : 0.0;
      r.reference = 1.0;
    });
  }

  void raises(const std::string& name, ErrorCode code, const std::function<void()>& f) {
    run(name, [&](CheckResult& r) {
      r.reference = 1.0;
      try {
        f();
        r.note = "no error raised";
      } catch (const Error& e) {
        r.pass = e.code() == code;
        r.value = r.pass ? 1.0 : 0.0;
        if (!r.pass) r.note = std::string("raised ") + std::string(error_code_name(e.code()));
      }
    });
  }

  static void fill_relative(CheckResult& r, double v, double ref, double tol) {
    r.value = v;
    r.reference = ref;
    r.tolerance = tol;
    const double scale = std::abs(ref) > 0.0 ? std::abs(ref) : 1.0;
    r.error = std::abs(v - ref) / scale;
    r.pass = std::isfinite(v) && r.error <= tol;
  }

 private:
  std::string suite_;
  std::vector<CheckResult>& out_;
};

std::string tag(const std::string& label, int beta, int n) {
  return label + " beta=" + std::to_string(beta) + " N=" + std::to_string(n);
}

EvalOptions eval_opts(const VerifyOptions& o) {
  EvalOptions e;
  e.threads = o.threads;
  return e;
}

OracleOptions oracle_opts(const VerifyOptions& o) {
  OracleOptions e;
  e.threads = o.threads;
  return e;
}

double eval(const Measure& mu, int beta, int n, const VerifyOptions& o, bool stabilize = false) {
  return zbeta(ZRequest{mu, beta_from_int(beta), n, stabilize}, eval_opts(o)).value;
}

// |z - oracle| <= max(tol |oracle|, 3 oracle_err).
void oracle_check(Recorder& rec, const std::string& name, const Measure& mu, int beta, int n,
                  const VerifyOptions& o) {
  rec.run(name, [&](CheckResult& r) {
    const EvalResult z = zbeta(ZRequest{mu, beta_from_int(beta), n, false}, eval_opts(o));
    const Estimate<double> ref =
        zbeta_bruteforce(OracleRequest{mu, beta_from_int(beta), n}, oracle_opts(o));
    r.value = z.value;
    r.reference = ref.value;
    r.error = std::abs(z.value - ref.value) / std::abs(ref.value);
    r.tolerance = std::max(o.oracle_tol, 3.0 * ref.abs_error / std::abs(ref.value));
    r.pass = r.error <= r.tolerance;
    if (z.imag_residual && *z.imag_residual > kImagResidualTolerance * std::max(1.0, std::abs(z.value))) {
      r.pass = false;
      r.note = "imag_residual too large";
    }
  });
}

std::vector<Measure> line_measures() {
  return {measures::uniform(0.0, 1.0), measures::exponential(1.0),
          measures::lebesgue(0.0, 1.0).times_power(1.0)};
}

std::vector<Measure> circle_measures() {
  return {measures::circle_uniform(), measures::circle_cosine(0.5)};
}

int max_n(int beta) { return beta == 4 ? 3 : 4; }

void identities(std::vector<CheckResult>& out, const VerifyOptions& o) {
  Recorder rec("identities", out);

  for (const Measure& mu : line_measures())
    for (int beta : {1, 2, 4})
      for (int n = 1; n <= max_n(beta); ++n)
        oracle_check(rec, "oracle " + tag(mu.label(), beta, n), mu, beta, n, o);
  for (const Measure& mu : circle_measures())
    for (int beta : {1, 2, 4})
      for (int n = 1; n <= 3; ++n) oracle_check(rec, "oracle " + tag(mu.label(), beta, n), mu, beta, n, o);

  const Measure u01 = measures::uniform(0.0, 1.0);
  const Measure cu = measures::circle_uniform();
  const double tol = 1e-8;
  rec.relative("golden z1 uniform(0,1) N=2", [&] { return std::pair(eval(u01, 1, 2, o), 1.0 / 6.0); }, tol);
  rec.relative("golden z2 uniform(0,1) N=2", [&] { return std::pair(eval(u01, 2, 2, o), 1.0 / 12.0); }, tol);
  rec.relative("golden z4 uniform(0,1) N=2", [&] { return std::pair(eval(u01, 4, 2, o), 1.0 / 30.0); }, tol);
  rec.relative("golden z2 uniform(0,1) N=3", [&] { return std::pair(eval(u01, 2, 3, o), 1.0 / 2160.0); }, tol);
  for (int n = 1; n <= 5; ++n)
    rec.relative("golden z2 circle-uniform N=" + std::to_string(n),
                 [&] { return std::pair(eval(cu, 2, n, o), 1.0); }, tol);
  rec.relative("golden z1 circle-uniform N=2", [&] { return std::pair(eval(cu, 1, 2, o), 2.0 / kPi); }, tol);
  rec.relative("golden z4 circle-uniform N=2", [&] { return std::pair(eval(cu, 4, 2, o), 3.0); }, tol);

  std::vector<Measure> all = line_measures();
  for (const Measure& m : circle_measures()) all.push_back(m);
  for (const Measure& mu : all)
    for (int beta : {1, 2, 4})
      for (int n = 1; n <= 3; ++n) {
        const std::string t = tag(mu.label(), beta, n);
        for (double c : {0.5, 2.0})
          rec.relative("homogeneity c=" + format_number(c) + " " + t, [&] {
            return std::pair(eval(mu.scaled(c), beta, n, o), std::pow(c, n) * eval(mu, beta, n, o));
          }, 1e-9);
        rec.truth("positivity " + t, [&] { return eval(mu, beta, n, o) > 0.0; });
        if (mu.on_circle()) continue;
        rec.relative("translation s=0.5 " + t, [&] {
          return std::pair(eval(mu.shifted(0.5), beta, n, o), eval(mu, beta, n, o));
        }, 1e-8);
        rec.relative("scaling s=2 " + t, [&] {
          const double f = std::pow(2.0, 0.5 * beta * n * (n - 1));
          return std::pair(eval(mu.dilated(2.0), beta, n, o), f * eval(mu, beta, n, o));
        }, 1e-8);
        rec.relative("stabilized basis " + t, [&] {
          return std::pair(eval(mu, beta, n, o, true), eval(mu, beta, n, o));
        }, 1e-8);
      }

  rec.truth("stabilized basis uniform(0,1) n=2 gives u - 1/2", [&] {
    const StabilizedBasis sb = stabilized_basis(u01, 2);
    return std::abs(sb.coefficients[1][0] + 0.5) < 1e-12 && sb.coefficients[1][1] == 1.0;
  });
  rec.raises("stabilized basis of a numerically one-point measure", ErrorCode::degenerate_measure,
             [&] { stabilized_basis(measures::uniform(1.0, 1.0 + 1e-14), 2); });

  std::mt19937_64 rng(20260417);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t dim = 2 + 2 * static_cast<std::size_t>(trial % 6);
    RealMatrix a(dim, SymmetryTag::skew);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = i + 1; j < dim; ++j) a.set_skew(i, j, unit(rng));
    rec.relative("pfaffian squared equals det, dim " + std::to_string(dim) + " #" + std::to_string(trial),
                 [&] {
                   const double p = pfaffian(a);
                   return std::pair(p * p, det(a));
                 },
                 1e-10);
  }
}

void spaces(std::vector<CheckResult>& out, const VerifyOptions& o) {
  Recorder rec("spaces", out);
  const EvalOptions eo = eval_opts(o);
  const OracleOptions oo = oracle_opts(o);

  const auto cov = [&](const SpaceSpec& s, const WeightSpec& w) {
    rec.relative("change of variables " + s.describe() + " w=" + w.label, [&] {
      const double z = integrate_invariant(s, w, eo).z.value;
      return std::pair(z, original_chart_integral(s, w, oo).value);
    }, o.oracle_tol);
  };
  for (int beta : {1, 2, 4})
    for (int p = 1; p <= 2; ++p)
      for (int q = p; q <= p + 1; ++q)
        cov(SpaceSpec{SpaceFamily::grassmann, beta_from_int(beta), 1, p, q}, weights::gaussian(1.0));
  for (int beta : {1, 2, 4})
    for (int p = 1; p <= 2; ++p)
      for (int q = p; q <= 3; ++q) {
        cov(SpaceSpec{SpaceFamily::grassmann_dual, beta_from_int(beta), 1, p, q}, weights::one());
        cov(SpaceSpec{SpaceFamily::grassmann_dual, beta_from_int(beta), 1, p, q},
            weights::exponential(1.0));
      }
  for (int beta : {1, 2, 4})
    for (int n = 1; n <= 2; ++n)
      cov(SpaceSpec{SpaceFamily::classical_domain, beta_from_int(beta), n, 1, 1},
          weights::gaussian(0.5));
  cov(SpaceSpec{SpaceFamily::classical_domain, Beta::two, 2, 1, 1}, weights::gaussian(1.0));

  for (int beta : {1, 2, 4})
    for (int p = 1; p <= 3; ++p)
      for (int q = p; q <= 3; ++q) {
        const SpaceSpec s{SpaceFamily::grassmann_dual, beta_from_int(beta), 1, p, q};
        rec.truth("finite mass " + s.describe(), [&] {
          const Estimate<double> m = total_mass(reduce(s, weights::one()).mu);
          return std::isfinite(m.value) && m.value > 0.0;
        });
      }

  for (int beta : {1, 2, 4})
    for (int n = 1; n <= 3; ++n) {
      const SpaceSpec s{SpaceFamily::cone, beta_from_int(beta), n, 1, 1};
      const double nb = 0.5 * beta * (n - 1) + 1.0;
      oracle_check(rec, "cone gamma weight " + s.describe(),
                   reduce(s, weights::gamma(nb, 1.0)).mu, beta, n, o);
      rec.relative("cone gamma weight equals exp(1) " + s.describe(), [&] {
        return std::pair(integrate_invariant(s, weights::gamma(nb, 1.0), eo).z.value,
                         eval(measures::exponential(1.0), beta, n, o));
      }, 1e-9);
    }
  rec.relative("cone beta=2 N=3 weight exponent -3", [&] {
    ReduceOptions ro;
    ro.check_mass = false;
    const Measure mu = reduce(SpaceSpec{SpaceFamily::cone, Beta::two, 3, 1, 1}, weights::one(), ro).mu;
    return std::pair(mu.log_weight(2.0), -3.0 * std::log(2.0));
  }, 1e-14);
  rec.raises("cone beta=2 N=3 with w=1 is not integrable", ErrorCode::non_integrable_weight, [&] {
    reduce(SpaceSpec{SpaceFamily::cone, Beta::two, 3, 1, 1}, weights::one());
  });

  for (int n = 1; n <= 5; ++n)
    rec.relative("cone_dual beta=2 w=1 N=" + std::to_string(n), [&] {
      return std::pair(integrate_invariant(SpaceSpec{SpaceFamily::cone_dual, Beta::two, n, 1, 1},
                                           weights::one(), eo)
                           .z.value,
                       1.0);
    }, 1e-8);

  rec.relative("classical_domain beta=2 N=1 w=exp(-lambda^2)", [&] {
    WeightSpec w{[](double x) { return -x * x; }, "exp(-x^2)", WeightChart::native};
    const double z =
        integrate_invariant(SpaceSpec{SpaceFamily::classical_domain, Beta::two, 1, 1, 1}, w, eo).z.value;
    Tolerance t;
    t.rel = 1e-12;
    double direct = integrate_interval([](double u) {
      const double a = std::acosh(u);
      return std::exp(-0.25 * a * a);
    }, 1.0, 2.0, t).value;
    for (double lo = 2.0; lo < 1e12; lo *= 2.0)
      direct += integrate_interval([](double u) {
        const double a = std::acosh(u);
        return std::exp(-0.25 * a * a);
      }, lo, 2.0 * lo, t).value;
    return std::pair(z, direct);
  }, 1e-8);

  rec.relative("grassmann beta=2 p=q=1 sech^4 by tau quadrature", [&] {
    const SpaceSpec s{SpaceFamily::grassmann, Beta::two, 1, 1, 1};
    const double z = integrate_invariant(s, weights::sech(4.0), eo).z.value;
    // int_0^inf sech^4(tau) sinh(2 tau) d tau = 1
    return std::pair(z, 1.0);
  }, 1e-9);

  rec.relative("ratio of equal weights", [&] {
    const SpaceSpec s{SpaceFamily::grassmann_dual, Beta::two, 1, 2, 3};
    return std::pair(expectation_ratio(s, weights::exponential(1.0), weights::exponential(1.0), eo).value,
                     1.0);
  }, 1e-14);
  rec.relative("ratio cone_dual beta=2 N=3 w=1", [&] {
    const SpaceSpec s{SpaceFamily::cone_dual, Beta::two, 3, 1, 1};
    return std::pair(expectation_ratio(s, weights::one(), weights::one(), eo).value, 1.0);
  }, 1e-14);
  rec.relative("ratio classical_domain beta=2 N=2 gauss 1 over 2 equals Z ratio", [&] {
    const SpaceSpec s{SpaceFamily::classical_domain, Beta::two, 2, 1, 1};
    const double r = expectation_ratio(s, weights::gaussian(1.0), weights::gaussian(2.0), eo).value;
    return std::pair(r, siegel_Z(2, 1.0).value / siegel_Z(2, 2.0).value);
  }, 1e-8);
  rec.raises("ratio with a vanishing denominator", ErrorCode::division_by_zero_mass, [&] {
    const SpaceSpec s{SpaceFamily::grassmann_dual, Beta::two, 1, 1, 1};
    WeightSpec zero{[](double) { return -1e6; }, "zero", WeightChart::native};
    expectation_ratio(s, weights::one(), zero, eo);
  });
}

void siegel(std::vector<CheckResult>& out, const VerifyOptions& o) {
  Recorder rec("siegel", out);
  const EvalOptions eo = eval_opts(o);

  for (double sigma : {0.25, 1.0}) {
    const std::string ts = "sigma=" + format_number(sigma);
    for (int j = 0; j <= 6; ++j) {
      rec.relative("moment chart consistency j=" + std::to_string(j) + " " + ts, [&] {
        return std::pair(siegel_moment(j, sigma).value, siegel_moment_u(j, sigma).value);
      }, 1e-9);
      rec.truth("moment monotone j=" + std::to_string(j) + " " + ts, [&] {
        const double a = siegel_moment(j, sigma).value;
        return a > 0.0 && siegel_moment(j + 1, sigma).value > a;
      });
    }
    rec.relative("Z N=1 equals m0 " + ts, [&] {
      return std::pair(siegel_Z(1, sigma).value, siegel_moment(0, sigma).value);
    }, 1e-14);
    rec.relative("Z N=2 equals m0 m2 - m1^2 " + ts, [&] {
      const double m0 = siegel_moment(0, sigma).value;
      const double m1 = siegel_moment(1, sigma).value;
      const double m2 = siegel_moment(2, sigma).value;
      return std::pair(siegel_Z(2, sigma).value, m0 * m2 - m1 * m1);
    }, 1e-10);
    rec.relative("Z N=2 against lambda-space oracle " + ts, [&] {
      OracleOptions oo = oracle_opts(o);
      return std::pair(siegel_Z(2, sigma).value, siegel_Z_oracle(2, sigma, oo).value);
    }, o.oracle_tol);
    rec.relative("Z N=3 equals zbeta of the reduced measure " + ts, [&] {
      return std::pair(siegel_Z(3, sigma).value, eval(siegel_measure(sigma), 2, 3, o));
    }, 1e-8);
  }
  for (int j = 0; j <= 6; ++j)
    rec.relative("small sigma limit m" + std::to_string(j) + "/m0 sigma=0.001", [&] {
      return std::pair(siegel_moment(j, 1e-3).value / siegel_moment(0, 1e-3).value, 1.0);
    }, 1e-2);
  rec.raises("sigma outside the supported range", ErrorCode::no_convergence, [] { siegel_moment(0, 1e-4); });

  for (int n = 1; n <= 3; ++n) {
    rec.truth("Z increasing in sigma N=" + std::to_string(n), [&] {
      double prev = 0.0;
      for (double s : {0.25, 0.5, 1.0, 2.0}) {
        const double z = siegel_Z(n, s).value;
        if (!(z > prev)) return false;
        prev = z;
      }
      return true;
    });
  }

  const double ks = 0.25;
  const Measure mu = siegel_measure(ks);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pick(1.0, 2.5);
  for (int n : {1, 2, 3, 5}) {
    const std::string tn = "N=" + std::to_string(n) + " sigma=0.25";
    rec.relative("kernel trace " + tn, [&] {
      return std::pair(kernel_trace(cd_kernel(mu, n)).value, static_cast<double>(n));
    }, 1e-8);
    rec.relative("kernel Frobenius " + tn, [&] {
      return std::pair(kernel_frobenius(cd_kernel(mu, n)), static_cast<double>(n));
    }, 1e-7);
    for (int t = 0; t < 3; ++t) {
      const double u = pick(rng);
      const double v = pick(rng);
      rec.run("kernel reproducing " + tn + " #" + std::to_string(t), [&](CheckResult& r) {
        const CDKernel k = cd_kernel(mu, n);
        const double ref = k(u, v);
        const double got = kernel_reproduce(k, u, v).value;
        const double scale = std::sqrt(k(u, u) * k(v, v));
        r.value = got;
        r.reference = ref;
        r.tolerance = 1e-7;
        r.error = std::abs(got - ref) / scale;
        r.pass = r.error <= r.tolerance;
      });
    }
  }
  rec.relative("kernel N=1 equals 1/m0", [&] {
    return std::pair(cd_kernel(mu, 1)(1.3, 2.1), 1.0 / siegel_moment(0, ks).value);
  }, 1e-10);
  for (int t = 0; t < 3; ++t) {
    std::vector<double> pts{pick(rng), pick(rng), pick(rng)};
    rec.relative("kernel determinant reproduces V^2 N=3 #" + std::to_string(t), [&] {
      const CDKernel k = cd_kernel(mu, 3);
      const double z2 = zbeta(ZRequest{mu, Beta::two, 3, false}, eo).value;
      double v2 = 1.0;
      for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) v2 *= (pts[i] - pts[j]) * (pts[i] - pts[j]);
      // det K = N! * density = V^2 / z_2 with respect to mu^N
      return std::pair(kernel_determinant(k, pts) * z2, v2);
    }, 1e-6);
  }
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10e", x);
  return buf;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"identities", "spaces", "siegel", "all"};
  return names;
}

std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& opts) {
  std::vector<CheckResult> out;
  const bool all = suite == "all";
  bool known = all;
  if (all || suite == "identities") {
    known = true;
    identities(out, opts);
  }
  if (all || suite == "spaces") {
    known = true;
    spaces(out, opts);
  }
  if (all || suite == "siegel") {
    known = true;
    siegel(out, opts);
  }
  if (!known) throw Error(ErrorCode::invalid_argument, "unknown suite '" + suite + "'");
  return out;
}

std::string format_table(const std::vector<CheckResult>& results) {
  std::size_t width = 5;
  for (const auto& r : results) width = std::max(width, r.name.size());
  std::ostringstream os;
  char line[512];
  std::snprintf(line, sizeof line, "%-10s  %-*s  %-6s  %-17s  %-17s  %-17s  %-17s\n", "suite",
                static_cast<int>(width), "check", "status", "value", "reference", "error",
                "tolerance");
  os << line;
  std::size_t failed = 0;
  for (const auto& r : results) {
    if (!r.pass) ++failed;
    std::snprintf(line, sizeof line, "%-10s  %-*s  %-6s  %-17s  %-17s  %-17s  %-17s", r.suite.c_str(),
                  static_cast<int>(width), r.name.c_str(), r.pass ? "PASS" : "FAIL",
                  fmt(r.value).c_str(), fmt(r.reference).c_str(), fmt(r.error).c_str(),
                  fmt(r.tolerance).c_str());
    os << line;
    if (!r.note.empty()) os << "  " << r.note;
    os << '\n';
  }
  os << results.size() - failed << " passed, " << failed << " failed\n";
  return os.str();
}

bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace symmint
