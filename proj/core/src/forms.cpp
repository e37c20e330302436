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

#include "symmint/forms.hpp"

#include <cmath>
#include <limits>
#include <cstdio>
#include <functional>
#include <map>

#include "symmint/error.hpp"

namespace symmint {

namespace {

// h(u) * exp(half_ld), summed term by term in log space. Used only where
// h(u)^2 overflows while the density underflows; elsewhere pow is more accurate.
double scaled_value(const BasisFunction& h, double u, double half_ld) {
  const double log_u = std::log(std::abs(u));
  double sum = 0.0;
  for (const auto& t : h.terms()) {
    const double e = t.exponent.value();
    if (t.exponent.twice == 0 || u == 0.0) {
      sum += t.coefficient * std::pow(u, e) * std::exp(half_ld);
      continue;
    }
    if (u < 0.0 && !t.exponent.is_integer()) return std::numeric_limits<double>::quiet_NaN();
    const bool negative = u < 0.0 && (t.exponent.twice / 2) % 2 != 0;
    const double v = std::exp(e * log_u + half_ld);
    sum += t.coefficient * (negative ? -v : v);
  }
  return sum;
}

bool products_periodic(const BasisFunction& h, const BasisFunction& g) {
  for (const auto& a : h.terms())
    for (const auto& b : g.terms())
      if (!(a.exponent + b.exponent).is_integer()) return false;
  return true;
}

template <typename T>
Estimate<Complex> promote(const Estimate<T>& e) {
  return {Complex(e.value), e.abs_error};
}

// Double integral int int h(s) K(G(s)) mu(ds) with G the running integral of g,
// all in the integration parameter s.
template <typename T>
Estimate<Complex> skew_pairing(const std::function<T(double)>& h, const std::function<T(double)>& g,
                               const Parametrization& p, const FormOptions& opts) {
  auto weighted = [&p](const std::function<T(double)>& f) {
    return std::function<T(double)>([f, &p](double s) {
      const double x = p.point(s);
      if (!std::isfinite(x)) return T{};
      const double d = std::exp(p.log_density(s));
      if (d == 0.0) return T{};
      return T(f(x) * d);
    });
  };
  const auto gw = weighted(g);
  const auto hw = weighted(h);
  const auto panels = adaptive_panels(gw, p.lo, p.hi, opts.tol);
  const CumulativeIntegral<T> running(gw, p, panels, opts.tol.order);
  const T total = running.total();

  const EpsilonConvention eps = opts.epsilon;
  auto kernel = [&](double s) -> T {
    const T below = running.at_parameter(s);
    switch (eps) {
      case EpsilonConvention::sign: return total - 2.0 * below;
      case EpsilonConvention::half_sign: return 0.5 * (total - 2.0 * below);
      case EpsilonConvention::unit_step: return below;
    }
    return T{};
  };
  auto outer = [&](double s) -> T {
    const T hv = hw(s);
    if (hv == T{}) return T{};
    return hv * kernel(s);
  };
  const auto result = integrate_interval(outer, p.lo, p.hi, opts.tol);
  const auto hnorm = integrate_interval([&](double s) { return std::abs(hw(s)); }, p.lo, p.hi,
                                        opts.tol);
  return {Complex(result.value), result.abs_error + 2.0 * running.abs_error() * hnorm.value};
}

}  // namespace

BasisFunction BasisFunction::monomial(HalfInteger exponent, double coefficient) {
  BasisFunction f;
  f.terms_.push_back({exponent, coefficient});
  return f;
}

BasisFunction BasisFunction::monomial(int k, double coefficient) {
  return monomial(HalfInteger::integer(k), coefficient);
}

BasisFunction BasisFunction::polynomial(std::span<const double> coefficients) {
  BasisFunction f;
  for (std::size_t k = 0; k < coefficients.size(); ++k)
    if (coefficients[k] != 0.0)
      f.terms_.push_back({HalfInteger::integer(static_cast<int>(k)), coefficients[k]});
  return f;
}

double BasisFunction::value_line(double u) const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    const double p = t.exponent.twice == 0 ? 1.0 : std::pow(u, t.exponent.value());
    sum += t.coefficient * p;
  }
  return sum;
}

double BasisFunction::derivative_line(double u) const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    if (t.exponent.twice == 0) continue;
    const double e = t.exponent.value();
    sum += t.coefficient * e * (t.exponent.twice == 2 ? 1.0 : std::pow(u, e - 1.0));
  }
  return sum;
}

Complex BasisFunction::value_circle(double x) const {
  Complex sum{};
  for (const auto& t : terms_) {
    const double a = t.exponent.value() * x;
    sum += Complex(t.coefficient * std::cos(a), t.coefficient * std::sin(a));
  }
  return sum;
}

Complex BasisFunction::derivative_circle(double x) const {
  Complex sum{};
  for (const auto& t : terms_) {
    const double e = t.exponent.value();
    if (e == 0.0) continue;
    const double a = (e - 1.0) * x;
    sum += Complex(t.coefficient * e * std::cos(a), t.coefficient * e * std::sin(a));
  }
  return sum;
}

BasisFunction BasisFunction::operator+(const BasisFunction& other) const {
  BasisFunction out = *this;
  for (const auto& t : other.terms_) {
    bool merged = false;
    for (auto& s : out.terms_) {
      if (s.exponent == t.exponent) {
        s.coefficient += t.coefficient;
        merged = true;
        break;
      }
    }
    if (!merged) out.terms_.push_back(t);
  }
  return out;
}

BasisFunction BasisFunction::operator*(double scale) const {
  BasisFunction out = *this;
  for (auto& t : out.terms_) t.coefficient *= scale;
  return out;
}

std::string BasisFunction::describe() const {
  if (terms_.empty()) return "0";
  std::string out;
  char buf[64];
  for (const auto& t : terms_) {
    if (!out.empty()) out += " + ";
    if (t.exponent.is_integer())
      std::snprintf(buf, sizeof buf, "%.6g*u^%d", t.coefficient, t.exponent.twice / 2);
    else
      std::snprintf(buf, sizeof buf, "%.6g*u^(%d/2)", t.coefficient, t.exponent.twice);
    out += buf;
  }
  return out;
}

Estimate<Complex> moment(const Measure& mu, HalfInteger j, const Tolerance& tol) {
  if (mu.on_circle()) {
    const double e = j.value();
    auto f = [e](double x) { return Complex(std::cos(e * x), std::sin(e * x)); };
    return integrate(f, mu, tol, j.is_integer());
  }

  // Line moments are accumulated as sign * exp(j log|u| + log density) so that
  // large u against a vanishing weight never forms inf * 0.
  const Parametrization p = mu.parametrization();
  const double e = j.value();
  const bool integer = j.is_integer();
  const bool odd = integer && ((j.twice / 2) % 2 != 0);
  auto f = [&p, e, integer, odd](double s) -> double {
    const double u = p.point(s);
    if (!std::isfinite(u)) return 0.0;
    const double ld = p.log_density(s);
    if (e == 0.0) return std::exp(ld);
    if (u == 0.0) return e > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    if (u < 0.0 && !integer) return std::numeric_limits<double>::quiet_NaN();
    const double v = std::exp(e * std::log(std::abs(u)) + ld);
    return (u < 0.0 && odd) ? -v : v;
  };
  return promote(integrate_interval(f, p.lo, p.hi, tol));
}

Estimate<Complex> moment(const Measure& mu, int j, const Tolerance& tol) {
  return moment(mu, HalfInteger::integer(j), tol);
}

Estimate<Complex> form1(const BasisFunction& h, const BasisFunction& g, const Measure& mu,
                        const FormOptions& opts) {
  const Parametrization p = mu.parametrization();
  if (mu.on_circle()) {
    std::function<Complex(double)> hf = [&h](double x) { return h.value_circle(x); };
    std::function<Complex(double)> gf = [&g](double x) { return g.value_circle(x); };
    return skew_pairing<Complex>(hf, gf, p, opts);
  }
  std::function<double(double)> hf = [&h](double u) { return h.value_line(u); };
  std::function<double(double)> gf = [&g](double u) { return g.value_line(u); };
  return skew_pairing<double>(hf, gf, p, opts);
}

Estimate<Complex> form2(const BasisFunction& h, const BasisFunction& g, const Measure& mu,
                        const FormOptions& opts) {
  if (mu.on_circle()) {
    auto f = [&](double x) { return h.value_circle(x) * g.value_circle(x); };
    return integrate(f, mu, opts.tol, products_periodic(h, g));
  }
  const Parametrization p = mu.parametrization();
  auto f = [&](double s) {
    const double u = p.point(s);
    const double half_ld = 0.5 * p.log_density(s);
    if (!std::isfinite(u) || half_ld == -std::numeric_limits<double>::infinity()) return 0.0;
    const double direct = h.value_line(u) * g.value_line(u) * std::exp(2.0 * half_ld);
    if (std::isfinite(direct)) return direct;
    return scaled_value(h, u, half_ld) * scaled_value(g, u, half_ld);
  };
  return promote(integrate_interval(f, p.lo, p.hi, opts.tol));
}

Estimate<Complex> form4(const BasisFunction& h, const BasisFunction& g, const Measure& mu,
                        const FormOptions& opts) {
  std::map<int, Estimate<Complex>> moments;
  Estimate<Complex> out;
  for (const auto& a : h.terms()) {
    for (const auto& b : g.terms()) {
      const double factor = (b.exponent.value() - a.exponent.value()) * a.coefficient * b.coefficient;
      if (factor == 0.0) continue;
      const HalfInteger j = a.exponent + b.exponent - HalfInteger::integer(1);
      auto it = moments.find(j.twice);
      if (it == moments.end()) it = moments.emplace(j.twice, moment(mu, j, opts.tol)).first;
      out.value += factor * it->second.value;
      out.abs_error += std::abs(factor) * it->second.abs_error;
    }
  }
  return out;
}

Estimate<Complex> form4_quadrature(const BasisFunction& h, const BasisFunction& g,
                                   const Measure& mu, const FormOptions& opts) {
  if (mu.on_circle()) {
    auto f = [&](double x) {
      return h.value_circle(x) * g.derivative_circle(x) - g.value_circle(x) * h.derivative_circle(x);
    };
    return integrate(f, mu, opts.tol, products_periodic(h, g));
  }
  auto f = [&](double u) {
    return h.value_line(u) * g.derivative_line(u) - g.value_line(u) * h.derivative_line(u);
  };
  return promote(integrate(f, mu, opts.tol));
}

}  // namespace symmint
