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

#include "symmint/measure.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <utility>

#include "symmint/error.hpp"

namespace symmint {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;


void require_line(const Domain& d, const char* what) {
  if (d.is_circle())
    throw Error(ErrorCode::invalid_argument, std::string(what) + ": not defined on the circle");
}

}  // namespace

Domain Domain::interval(double a, double b) {
  if (!(std::isfinite(a) && std::isfinite(b) && a < b))
    throw Error(ErrorCode::invalid_argument, "interval requires finite a < b");
  return {Kind::finite_interval, a, b};
}

Domain Domain::half_line(double a) {
  if (!std::isfinite(a))
    throw Error(ErrorCode::invalid_argument, "half_line requires a finite lower end");
  return {Kind::semi_infinite, a, std::numeric_limits<double>::infinity()};
}

Domain Domain::unit_circle() { return {Kind::circle, 0.0, kTwoPi}; }

bool Domain::contains(double point) const noexcept {
  switch (kind) {
    case Kind::finite_interval: return point > lower && point < upper;
    case Kind::semi_infinite: return point > lower;
    case Kind::circle: return point >= 0.0 && point < kTwoPi;
  }
  return false;
}

Measure::Measure(Domain domain, LogWeight log_weight, std::string label, bool normalized)
    : domain_(domain),
      log_weight_(std::make_shared<const LogWeight>(std::move(log_weight))),
      label_(std::move(label)),
      normalized_(normalized) {}

double Measure::weight(double point) const { return std::exp(log_weight(point)); }

Parametrization Measure::parametrization() const {
  Parametrization p;
  const auto lw = log_weight_;

  if (domain_.is_circle()) {
    p.lo = 0.0;
    p.hi = kTwoPi;
    p.periodic = true;
    p.point = [](double s) { return s; };
    p.log_density = [lw](double s) { return (*lw)(s); };
    p.parameter = [](double x) {
      double r = std::fmod(x, kTwoPi);
      return r < 0.0 ? r + kTwoPi : r;
    };
    return p;
  }

  if (!chart_) {
    const double a = domain_.lower;
    if (domain_.kind == Domain::Kind::finite_interval) {
      p.lo = a;
      p.hi = domain_.upper;
      p.point = [](double s) { return s; };
      p.log_density = [lw](double s) { return (*lw)(s); };
      p.parameter = [](double u) { return u; };
    } else {
      p.lo = 0.0;
      p.hi = 1.0;
      p.point = [a](double s) { return a + s / (1.0 - s); };
      p.log_density = [lw, a](double s) {
        return (*lw)(a + s / (1.0 - s)) - 2.0 * std::log1p(-s);
      };
      p.parameter = [a](double u) {
        const double x = u - a;
        return x / (1.0 + x);
      };
    }
    return p;
  }

  const Chart c = *chart_;
  if (c.coordinate.kind == Domain::Kind::finite_interval) {
    p.lo = c.coordinate.lower;
    p.hi = c.coordinate.upper;
    p.point = c.to_point;
    p.log_density = [lw, c](double t) { return (*lw)(c.to_point(t)) + c.log_jacobian(t); };
    p.parameter = c.from_point;
  } else {
    const double t0 = c.coordinate.lower;
    const double scale = c.scale;
    p.lo = 0.0;
    p.hi = 1.0;
    p.point = [c, t0, scale](double s) { return c.to_point(t0 + scale * s / (1.0 - s)); };
    p.log_density = [lw, c, t0, scale](double s) {
      const double t = t0 + scale * s / (1.0 - s);
      return (*lw)(c.to_point(t)) + c.log_jacobian(t) + std::log(scale) - 2.0 * std::log1p(-s);
    };
    p.parameter = [c, t0, scale](double u) {
      const double x = (c.from_point(u) - t0) / scale;
      return x / (1.0 + x);
    };
  }
  return p;
}

Measure Measure::with_chart(Chart chart) const {
  require_line(domain_, "with_chart");
  if (chart.coordinate.is_circle())
    throw Error(ErrorCode::invalid_argument, "chart coordinate must be an interval");
  if (!(chart.scale > 0.0)) throw Error(ErrorCode::invalid_argument, "chart scale must be positive");
  Measure out = *this;
  out.chart_ = std::move(chart);
  return out;
}

Measure Measure::with_label(std::string label) const {
  Measure out = *this;
  out.label_ = std::move(label);
  return out;
}

Measure Measure::scaled(double c) const {
  if (!(c > 0.0) || !std::isfinite(c))
    throw Error(ErrorCode::invalid_argument, "scaled: factor must be positive");
  const auto lw = log_weight_;
  const double logc = std::log(c);
  Measure out(domain_, [lw, logc](double u) { return (*lw)(u) + logc; },
              format_number(c) + "*" + label_, normalized_ && c == 1.0);
  out.chart_ = chart_;
  return out;
}

Measure Measure::shifted(double s) const {
  require_line(domain_, "shifted");
  Domain d = domain_;
  d.lower += s;
  if (d.kind == Domain::Kind::finite_interval) d.upper += s;
  const auto lw = log_weight_;
  Measure out(d, [lw, s](double u) { return (*lw)(u - s); },
              label_ + "+shift(" + format_number(s) + ")", normalized_);
  if (chart_) {
    Chart c = *chart_;
    auto to = c.to_point;
    auto from = c.from_point;
    c.to_point = [to, s](double t) { return to(t) + s; };
    c.from_point = [from, s](double u) { return from(u - s); };
    out.chart_ = std::move(c);
  }
  return out;
}

Measure Measure::dilated(double s) const {
  require_line(domain_, "dilated");
  if (!(s > 0.0) || !std::isfinite(s))
    throw Error(ErrorCode::invalid_argument, "dilated: factor must be positive");
  Domain d = domain_;
  d.lower *= s;
  if (d.kind == Domain::Kind::finite_interval) d.upper *= s;
  const auto lw = log_weight_;
  const double logs = std::log(s);
  Measure out(d, [lw, s, logs](double u) { return (*lw)(u / s) - logs; },
              label_ + "+dilate(" + format_number(s) + ")", normalized_);
  if (chart_) {
    Chart c = *chart_;
    auto to = c.to_point;
    auto from = c.from_point;
    auto jac = c.log_jacobian;
    c.to_point = [to, s](double t) { return s * to(t); };
    c.from_point = [from, s](double u) { return from(u / s); };
    c.log_jacobian = [jac, logs](double t) { return jac(t) + logs; };
    out.chart_ = std::move(c);
  }
  return out;
}

Measure Measure::times_power(double k) const {
  require_line(domain_, "times_power");
  if (domain_.lower < 0.0)
    throw Error(ErrorCode::invalid_argument, "times_power: domain must lie in [0, inf)");
  const auto lw = log_weight_;
  Measure out(domain_, [lw, k](double u) { return (*lw)(u) + k * std::log(u); },
              label_ + "+pow(" + format_number(k) + ")", false);
  out.chart_ = chart_;
  return out;
}

Measure Measure::times(LogWeight extra, const std::string& what) const {
  const auto lw = log_weight_;
  Measure out(domain_, [lw, extra = std::move(extra)](double u) { return (*lw)(u) + extra(u); },
              label_ + "*" + what, false);
  out.chart_ = chart_;
  return out;
}

std::string format_number(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

namespace measures {

Measure uniform(double a, double b) {
  const Domain d = Domain::interval(a, b);
  const double lw = -std::log(b - a);
  return Measure(d, [lw](double) { return lw; },
                 "uniform(a=" + format_number(a) + ",b=" + format_number(b) + ")", true);
}

Measure lebesgue(double a, double b) {
  const Domain d = Domain::interval(a, b);
  return Measure(d, [](double) { return 0.0; },
                 "lebesgue(a=" + format_number(a) + ",b=" + format_number(b) + ")", b - a == 1.0);
}

Measure exponential(double rate, double a) {
  if (!(rate > 0.0)) throw Error(ErrorCode::invalid_argument, "exponential: rate must be positive");
  return Measure(Domain::half_line(a), [rate, a](double u) { return -rate * (u - a); },
                 "exp(rate=" + format_number(rate) + ",a=" + format_number(a) + ")", rate == 1.0);
}

Measure laguerre(double alpha) {
  if (!(alpha > -1.0)) throw Error(ErrorCode::invalid_argument, "laguerre: alpha must exceed -1");
  return Measure(Domain::half_line(0.0),
                 [alpha](double u) { return (alpha == 0.0 ? 0.0 : alpha * std::log(u)) - u; },
                 "laguerre(alpha=" + format_number(alpha) + ")", alpha == 0.0);
}

Measure jacobi(double alpha, double beta) {
  if (!(alpha > -1.0 && beta > -1.0))
    throw Error(ErrorCode::invalid_argument, "jacobi: exponents must exceed -1");
  // u = -cos(theta): the Jacobian sin(theta) tames the endpoint singularities.
  Chart c;
  c.name = "jacobi-angle";
  c.coordinate = Domain::interval(0.0, std::numbers::pi);
  c.to_point = [](double t) { return -std::cos(t); };
  c.from_point = [](double u) { return std::acos(-u); };
  c.log_jacobian = [](double t) { return std::log(std::sin(t)); };
  return Measure(Domain::interval(-1.0, 1.0),
                 [alpha, beta](double u) {
                   return (alpha == 0.0 ? 0.0 : alpha * std::log1p(-u)) +
                          (beta == 0.0 ? 0.0 : beta * std::log1p(u));
                 },
                 "jacobi(alpha=" + format_number(alpha) + ",beta=" + format_number(beta) + ")", false)
      .with_chart(std::move(c));
}

Measure circle_uniform() {
  const double lw = -std::log(kTwoPi);
  return Measure(Domain::unit_circle(), [lw](double) { return lw; }, "circle-uniform", true);
}

Measure circle_cosine(double a) {
  if (!(std::abs(a) < 1.0))
    throw Error(ErrorCode::invalid_argument, "circle_cosine: |a| must be below 1");
  const double lw = -std::log(kTwoPi);
  return Measure(Domain::unit_circle(),
                 [a, lw](double x) { return std::log1p(a * std::cos(x)) + lw; },
                 "circle-cos(a=" + format_number(a) + ")", true);
}

}  // namespace measures

}  // namespace symmint
