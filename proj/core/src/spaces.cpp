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

#include "symmint/spaces.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "symmint/error.hpp"

namespace symmint {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// log sinh(x) for x > 0 without overflow.
double log_sinh(double x) {
  if (x > 20.0) return x - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * x));
  return std::log(std::sinh(x));
}

// u = cosh(2 t), t > 0.
Chart boost_chart(double scale) {
  Chart c;
  c.name = "boost";
  c.coordinate = Domain::half_line(0.0);
  c.to_point = [](double t) { return std::cosh(2.0 * t); };
  c.from_point = [](double u) { return 0.5 * std::acosh(u); };
  c.log_jacobian = [](double t) { return std::numbers::ln2 + log_sinh(2.0 * t); };
  c.scale = scale;
  return c;
}

// u = -cos(2 s) with s = pi/2 - theta, so the chart is increasing.
Chart angle_chart() {
  Chart c;
  c.name = "angle";
  c.coordinate = Domain::interval(0.0, 0.5 * kPi);
  c.to_point = [](double s) { return -std::cos(2.0 * s); };
  c.from_point = [](double u) { return 0.5 * std::acos(-u); };
  c.log_jacobian = [](double s) { return std::numbers::ln2 + std::log(std::sin(2.0 * s)); };
  return c;
}

WeightChart native_chart(SpaceFamily f) {
  switch (f) {
    case SpaceFamily::cone: return WeightChart::eigenvalue;
    case SpaceFamily::cone_dual: return WeightChart::circle;
    case SpaceFamily::grassmann: return WeightChart::boost;
    case SpaceFamily::grassmann_dual: return WeightChart::angle;
    case SpaceFamily::classical_domain: return WeightChart::boost;
  }
  return WeightChart::eigenvalue;
}

WeightChart resolve_chart(const SpaceSpec& space, const WeightSpec& w) {
  const WeightChart native = native_chart(space.family);
  const WeightChart chart = w.chart == WeightChart::native ? native : w.chart;
  const bool ok = chart == native ||
                  (chart == WeightChart::eigenvalue && space.family != SpaceFamily::cone_dual);
  if (!ok) throw Error(ErrorCode::invalid_argument, "weight chart does not match the space family");
  if (!w.log_w) throw Error(ErrorCode::invalid_argument, "weight function is empty");
  return chart;
}

// Multiplies by x^k in log form, skipping k == 0 so that x == 0 stays harmless.
double add_power(double k, double log_x) { return k == 0.0 ? 0.0 : k * log_x; }

std::string weight_label(const WeightSpec& w) { return w.label.empty() ? "w" : w.label; }

}  // namespace

SpaceFamily space_family_from_string(const std::string& name) {
  if (name == "cone") return SpaceFamily::cone;
  if (name == "cone_dual" || name == "cone-dual") return SpaceFamily::cone_dual;
  if (name == "grassmann") return SpaceFamily::grassmann;
  if (name == "grassmann_dual" || name == "grassmann-dual") return SpaceFamily::grassmann_dual;
  if (name == "classical_domain" || name == "classical-domain" || name == "domain")
    return SpaceFamily::classical_domain;
  throw Error(ErrorCode::invalid_argument, "unknown space family '" + name + "'");
}

std::string to_string(SpaceFamily family) {
  switch (family) {
    case SpaceFamily::cone: return "cone";
    case SpaceFamily::cone_dual: return "cone_dual";
    case SpaceFamily::grassmann: return "grassmann";
    case SpaceFamily::grassmann_dual: return "grassmann_dual";
    case SpaceFamily::classical_domain: return "classical_domain";
  }
  return "unknown";
}

void SpaceSpec::validate() const {
  (void)beta_from_int(to_int(beta));
  const bool grass = family == SpaceFamily::grassmann || family == SpaceFamily::grassmann_dual;
  if (grass) {
    if (p < 1 || q < 1) throw Error(ErrorCode::invalid_argument, "p and q must be >= 1");
    if (p > q) throw Error(ErrorCode::invalid_argument, "Grassmann families require p <= q");
  } else if (n < 1) {
    throw Error(ErrorCode::invalid_argument, "N must be >= 1");
  }
}

int SpaceSpec::points() const {
  const bool grass = family == SpaceFamily::grassmann || family == SpaceFamily::grassmann_dual;
  return grass ? p : n;
}

std::string SpaceSpec::describe() const {
  std::ostringstream os;
  os << to_string(family) << "(beta=" << to_int(beta);
  if (family == SpaceFamily::grassmann || family == SpaceFamily::grassmann_dual)
    os << ",p=" << p << ",q=" << q;
  else
    os << ",N=" << n;
  os << ")";
  return os.str();
}

namespace weights {

WeightSpec one() {
  return {[](double) { return 0.0; }, "one", WeightChart::native};
}

WeightSpec exponential(double rate) {
  return {[rate](double x) { return -rate * x; }, "exp(" + format_number(rate) + ")",
          WeightChart::native};
}

WeightSpec gaussian(double sigma) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::invalid_argument, "gaussian weight: sigma must be > 0");
  const double c = 0.5 / (sigma * sigma);
  return {[c](double x) { return -c * x * x; }, "gauss(" + format_number(sigma) + ")",
          WeightChart::native};
}

WeightSpec sech(double power) {
  return {[power](double x) {
            const double a = std::abs(x);
            // log sech a = -a - log((1 + e^{-2a}) / 2)
            return -power * (a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2);
          },
          "sech^" + format_number(power), WeightChart::native};
}

WeightSpec gamma(double shape, double rate) {
  return {[shape, rate](double x) {
            if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
            return add_power(shape, std::log(x)) - rate * x;
          },
          "gamma(" + format_number(shape) + "," + format_number(rate) + ")", WeightChart::native};
}

WeightSpec trig(double a) {
  if (!(std::abs(a) < 1.0)) throw Error(ErrorCode::invalid_argument, "trig weight: |a| must be < 1");
  return {[a](double x) { return std::log1p(a * std::cos(x)); }, "trig(" + format_number(a) + ")",
          WeightChart::native};
}

WeightSpec power(double k) {
  return {[k](double x) {
            if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
            return add_power(k, std::log(x));
          },
          "pow(" + format_number(k) + ")", WeightChart::native};
}

}  // namespace weights

namespace {

// An integrable density g on [lo, hi] has d * g -> 0 at distance d from an
// endpoint (up to slowly varying factors). Quadrature never samples the
// endpoint, so a non-decaying d * g would otherwise give a finite answer.
// Distances halve until the chart overflows or rounds onto the
// endpoint; the deepest sample is compared with the one eight times further out.
bool endpoint_diverges(const Measure& mu) {
  const Parametrization p = mu.parametrization();
  if (p.periodic) return false;
  const double width = p.hi - p.lo;
  for (const double side : {-1.0, 1.0}) {
    const double end = side > 0 ? p.hi : p.lo;
    std::vector<double> v;
    for (double d = 0.25 * width; d >= 1e-12 * width; d *= 0.5) {
      const double x = std::log(d) + p.log_density(end - side * d);
      if (std::isnan(x) || x == kInf) break;
      v.push_back(x);
    }
    if (v.size() < 2) continue;
    const double outer = v[v.size() < 4 ? 0 : v.size() - 4];
    const double inner = v.back();
    if (inner == -kInf) continue;
    if (inner >= outer + std::log(0.95)) return true;
  }
  return false;
}

}  // namespace

Reduction reduce(const SpaceSpec& space, const WeightSpec& w, const ReduceOptions& opts) {
  space.validate();
  const WeightChart chart = resolve_chart(space, w);
  const auto lw = w.log_w;
  const double beta = to_int(space.beta);
  const std::string tag = space.describe() + ";w=" + weight_label(w);
  const bool in_u = chart == WeightChart::eigenvalue;

  Reduction out{measures::lebesgue(0.0, 1.0), space.points()};
  switch (space.family) {
    case SpaceFamily::cone: {
      const double nb = 0.5 * beta * (space.n - 1) + 1.0;
      out.mu = Measure(Domain::half_line(0.0),
                       [lw, nb](double u) { return lw(u) - nb * std::log(u); }, tag);
      break;
    }
    case SpaceFamily::cone_dual: {
      const double log_two_pi = std::log(2.0 * kPi);
      out.mu = Measure(Domain::unit_circle(),
                       [lw, log_two_pi](double x) { return lw(x) - log_two_pi; }, tag);
      break;
    }
    case SpaceFamily::grassmann: {
      const double a = 0.5 * beta * (space.q - space.p);
      const double b = 0.5 * beta - 1.0;
      out.mu = Measure(Domain::half_line(1.0),
                       [lw, a, b, in_u](double u) {
                         const double wv = in_u ? lw(u) : lw(0.5 * std::acosh(u));
                         return wv + add_power(a, std::log(0.5 * (u - 1.0))) +
                                add_power(b, std::log(u - 1.0) + std::log(u + 1.0)) - std::numbers::ln2;
                       },
                       tag)
                   .with_chart(boost_chart(opts.chart_scale));
      break;
    }
    case SpaceFamily::grassmann_dual: {
      const double a = 0.5 * beta * (space.q - space.p);
      const double b = 0.5 * beta - 1.0;
      out.mu = Measure(Domain::interval(-1.0, 1.0),
                       [lw, a, b, in_u](double u) {
                         const double wv = in_u ? lw(u) : lw(0.5 * std::acos(u));
                         return wv + add_power(a, std::log(0.5 * (1.0 - u))) +
                                add_power(b, std::log(1.0 - u) + std::log1p(u)) - std::numbers::ln2;
                       },
                       tag)
                   .with_chart(angle_chart());
      break;
    }
    case SpaceFamily::classical_domain: {
      out.mu = Measure(Domain::half_line(1.0),
                       [lw, in_u](double u) { return in_u ? lw(u) : lw(0.5 * std::acosh(u)); },
                       tag)
                   .with_chart(boost_chart(opts.chart_scale));
      break;
    }
  }

  if (opts.check_mass) {
    Estimate<double> mass;
    try {
      mass = total_mass(out.mu, opts.tol);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::no_convergence) throw;
      throw Error(ErrorCode::non_integrable_weight,
                  "reduce: total mass of " + tag + " does not converge");
    }
    if (!std::isfinite(mass.value) || endpoint_diverges(out.mu))
      throw Error(ErrorCode::non_integrable_weight, "reduce: total mass of " + tag + " is infinite");
  }
  return out;
}

InvariantResult integrate_invariant(const SpaceSpec& space, const WeightSpec& w,
                                    const EvalOptions& opts, const ReduceOptions& reduce_opts) {
  const Reduction r = reduce(space, w, reduce_opts);
  InvariantResult out;
  out.z = zbeta(ZRequest{r.mu, space.beta, r.n, false}, opts);
  out.points = r.n;
  out.measure = r.mu.label();
  return out;
}

Estimate<double> expectation_ratio(const SpaceSpec& space, const WeightSpec& w_num,
                                   const WeightSpec& w_den, const EvalOptions& opts,
                                   const ReduceOptions& reduce_opts) {
  const EvalResult den = integrate_invariant(space, w_den, opts, reduce_opts).z;
  if (!(den.value > 0.0) || !std::isfinite(den.value))
    throw Error(ErrorCode::division_by_zero_mass,
                "expectation_ratio: denominator z_beta is not positive");
  const EvalResult num = integrate_invariant(space, w_num, opts, reduce_opts).z;
  const double r = num.value / den.value;
  double err = std::abs(r) * den.err_estimate / den.value;
  if (num.value != 0.0) err += std::abs(r) * num.err_estimate / std::abs(num.value);
  else err += num.err_estimate / den.value;
  return {r, err};
}

double chart_constant(const SpaceSpec& space) {
  return space.family == SpaceFamily::classical_domain ? std::ldexp(1.0, space.n) : 1.0;
}

Estimate<double> original_chart_integral(const SpaceSpec& space, const WeightSpec& w,
                                         const OracleOptions& opts, double chart_scale) {
  space.validate();
  if (!(chart_scale > 0.0)) throw Error(ErrorCode::invalid_argument, "chart scale must be positive");
  const WeightChart chart = resolve_chart(space, w);
  const auto lw = w.log_w;
  const bool in_u = chart == WeightChart::eigenvalue;
  const int beta = to_int(space.beta);
  const double a = static_cast<double>(beta) * (space.q - space.p);
  const double b = beta - 1.0;
  const double sc = chart_scale;

  ChamberIntegrand ci;
  switch (space.family) {
    case SpaceFamily::cone:
    case SpaceFamily::cone_dual:
      throw Error(ErrorCode::invalid_argument,
                  "original_chart_integral: cone families are already in eigenvalue form");
    case SpaceFamily::grassmann:
      ci.lo = 0.0;
      ci.hi = 1.0;
      ci.point = [sc](double s) { return std::cosh(2.0 * sc * s / (1.0 - s)); };
      ci.log_density = [lw, in_u, a, b, sc](double s) {
        const double tau = sc * s / (1.0 - s);
        const double wv = in_u ? lw(std::cosh(2.0 * tau)) : lw(tau);
        return wv + add_power(a, log_sinh(tau)) + add_power(b, log_sinh(2.0 * tau)) +
               std::log(sc) - 2.0 * std::log1p(-s);
      };
      break;
    case SpaceFamily::grassmann_dual:
      ci.lo = 0.0;
      ci.hi = 0.5 * kPi;
      ci.point = [](double th) { return std::cos(2.0 * th); };
      ci.log_density = [lw, in_u, a, b](double th) {
        const double wv = in_u ? lw(std::cos(2.0 * th)) : lw(th);
        return wv + add_power(a, std::log(std::sin(th))) + add_power(b, std::log(std::sin(2.0 * th)));
      };
      break;
    case SpaceFamily::classical_domain:
      ci.lo = 0.0;
      ci.hi = 1.0;
      ci.point = [sc](double s) { return std::cosh(2.0 * sc * s / (1.0 - s)); };
      ci.log_density = [lw, in_u, sc](double s) {
        const double lam = sc * s / (1.0 - s);
        const double wv = in_u ? lw(std::cosh(2.0 * lam)) : lw(lam);
        return wv + log_sinh(2.0 * lam) + std::log(sc) - 2.0 * std::log1p(-s);
      };
      break;
  }
  Estimate<double> e = chamber_integral(ci, space.points(), beta, opts);
  const double kappa = chart_constant(space);
  return {kappa * e.value, kappa * e.abs_error};
}

std::vector<RootMultiplicity> root_multiplicities(const SpaceSpec& space) {
  space.validate();
  const double beta = to_int(space.beta);
  switch (space.family) {
    case SpaceFamily::cone: return {{"a_i - a_j", beta}};
    case SpaceFamily::cone_dual: return {{"theta_i - theta_j", beta}};
    case SpaceFamily::grassmann:
      return {{"tau_j", beta * (space.q - space.p)}, {"2 tau_j", beta - 1.0},
              {"tau_i +- tau_j", beta}};
    case SpaceFamily::grassmann_dual:
      return {{"theta_j", beta * (space.q - space.p)}, {"2 theta_j", beta - 1.0},
              {"theta_i +- theta_j", beta}};
    case SpaceFamily::classical_domain:
      return {{"2 lambda_j", 1.0}, {"lambda_i +- lambda_j", beta}};
  }
  return {};
}

}  // namespace symmint
