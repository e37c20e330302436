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

#pragma once

/**
 * @file quadrature.hpp
 * @brief Weighted 1-D integration on intervals, half-lines and the circle.
 *
 * Finite parameter ranges use globally adaptive Gauss-Legendre panels: each
 * panel is scored by the gap between its one-panel and two-half-panel sums
 * and the worst panel is bisected until the summed gap meets the tolerance.
 * Semi-infinite ranges reach this engine through the compactifying map in
 * Measure::parametrization(). Periodic integrands on the circle use the
 * equispaced trapezoidal rule with node doubling.
 *
 * Integrands may be real or complex; the value type is deduced.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <type_traits>
#include <utility>
#include <vector>

#include "symmint/error.hpp"
#include "symmint/measure.hpp"

namespace symmint {

struct Tolerance {
  double rel = 1e-9;
  double abs = 1e-12;
  std::size_t max_panels = 4096;
  int order = 20;           ///< Gauss-Legendre points per panel
  std::size_t initial_panels = 8;
};

template <typename T>
struct Estimate {
  T value{};
  double abs_error = 0.0;
};

/// Gauss-Legendre nodes and weights on [-1, 1].
class GaussLegendre {
 public:
  explicit GaussLegendre(int order);

  int order() const noexcept { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  template <typename F>
  auto apply(F&& f, double a, double b) const {
    using T = std::decay_t<decltype(f(a))>;
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    T sum{};
    for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(mid + half * nodes_[i]);
    return T(half * sum);
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Shared immutable rule of the given order (thread-safe cache).
const GaussLegendre& gauss_legendre(int order);

/// A finite panel produced by the adaptive engine.
template <typename T>
struct Panel {
  double lo = 0.0;
  double hi = 0.0;
  T value{};
  double error = 0.0;
};

namespace detail {

template <typename T>
bool finite_value(const T& v) {
  if constexpr (std::is_floating_point_v<T>) {
    return std::isfinite(v);
  } else {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  }
}

template <typename T>
struct WorkPanel {
  double lo, hi;
  T whole, left, right;
  double error;
  double magnitude;  ///< rule estimate of int |f| over the panel
};

}  // namespace detail

/// Globally adaptive Gauss-Legendre integration over [lo, hi]. Returns the
/// final partition sorted by position. Throws Error(no_convergence) if the
/// panel budget is exhausted or the integrand is not finite.
///
/// The stopping test is error <= max(abs, rel * |I|, 64 eps * int |f|); the
/// last term is the roundoff floor for integrals that cancel to zero.
template <typename F>
auto adaptive_panels(F&& f, double lo, double hi, const Tolerance& tol) {
  using T = std::decay_t<decltype(f(lo))>;
  const GaussLegendre& rule = gauss_legendre(tol.order);
  using Work = detail::WorkPanel<T>;
  constexpr double kRoundoff = 64.0 * std::numeric_limits<double>::epsilon();

  auto gauss = [&](double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    T sum{};
    double mag = 0.0;
    const auto& x = rule.nodes();
    const auto& w = rule.weights();
    for (std::size_t i = 0; i < x.size(); ++i) {
      const T y = f(mid + half * x[i]);
      sum += w[i] * y;
      mag += w[i] * std::abs(y);
    }
    return std::pair<T, double>(T(half * sum), half * mag);
  };

  auto evaluate = [&](double a, double b, const T& whole) {
    const double mid = 0.5 * (a + b);
    const auto [left, lmag] = gauss(a, mid);
    const auto [right, rmag] = gauss(mid, b);
    if (!detail::finite_value(left) || !detail::finite_value(right))
      throw Error(ErrorCode::no_convergence, "quadrature: integrand is not finite");
    return Work{a, b, whole, left, right, std::abs(whole - (left + right)), lmag + rmag};
  };

  auto cmp = [](const Work& x, const Work& y) { return x.error < y.error; };
  std::priority_queue<Work, std::vector<Work>, decltype(cmp)> heap(cmp);
  std::vector<Work> settled;

  const std::size_t start = std::max<std::size_t>(1, tol.initial_panels);
  const double step = (hi - lo) / static_cast<double>(start);
  for (std::size_t i = 0; i < start; ++i) {
    const double a = lo + step * static_cast<double>(i);
    const double b = (i + 1 == start) ? hi : lo + step * static_cast<double>(i + 1);
    heap.push(evaluate(a, b, gauss(a, b).first));
  }

  struct Totals {
    T value{};
    double error = 0.0;
    double magnitude = 0.0;
  };
  auto totals = [&]() {
    Totals t;
    auto copy = heap;
    while (!copy.empty()) {
      t.value += copy.top().left + copy.top().right;
      t.error += copy.top().error;
      t.magnitude += copy.top().magnitude;
      copy.pop();
    }
    for (const auto& s : settled) {
      t.value += s.left + s.right;
      t.error += s.error;
      t.magnitude += s.magnitude;
    }
    return t;
  };
  auto converged = [&](const Totals& t) {
    return t.error <= std::max({tol.abs, tol.rel * std::abs(t.value), kRoundoff * t.magnitude});
  };

  // Running sums decide when to stop; they are refreshed periodically and the
  // returned partition is re-summed by the caller.
  std::size_t count = start;
  Totals run = totals();
  while (!heap.empty() && !converged(run)) {
    Work worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const double width = worst.hi - worst.lo;
    if (!(width > 1e3 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(mid)))) {
      settled.push_back(worst);
      continue;
    }
    if (count + 1 > tol.max_panels)
      throw Error(ErrorCode::no_convergence, "quadrature: panel budget exhausted");
    Work a = evaluate(worst.lo, mid, worst.left);
    Work b = evaluate(mid, worst.hi, worst.right);
    run.value += (a.left + a.right + b.left + b.right) - (worst.left + worst.right);
    run.error += a.error + b.error - worst.error;
    run.magnitude += a.magnitude + b.magnitude - worst.magnitude;
    heap.push(a);
    heap.push(b);
    ++count;
    if (count % 256 == 0) run = totals();
  }
  if (!converged(totals()))
    throw Error(ErrorCode::no_convergence, "quadrature: tolerance not reached at resolution limit");

  std::vector<Panel<T>> panels;
  panels.reserve(count);
  while (!heap.empty()) {
    const Work& w = heap.top();
    panels.push_back({w.lo, w.hi, w.left + w.right, w.error});
    heap.pop();
  }
  for (const auto& w : settled) panels.push_back({w.lo, w.hi, w.left + w.right, w.error});
  std::sort(panels.begin(), panels.end(),
            [](const Panel<T>& x, const Panel<T>& y) { return x.lo < y.lo; });
  return panels;
}

template <typename T>
Estimate<T> sum_panels(const std::vector<Panel<T>>& panels) {
  Estimate<T> out;
  for (const auto& p : panels) {
    out.value += p.value;
    out.abs_error += p.error;
  }
  return out;
}

/// Adaptive integral of f over the finite interval [lo, hi].
template <typename F>
auto integrate_interval(F&& f, double lo, double hi, const Tolerance& tol = {}) {
  return sum_panels(adaptive_panels(std::forward<F>(f), lo, hi, tol));
}

/// Trapezoidal rule on [0, 2 pi) with node doubling, for periodic f.
/// Converged once two successive doublings agree within tolerance.
template <typename F>
auto integrate_periodic(F&& f, const Tolerance& tol = {}) {
  using T = std::decay_t<decltype(f(0.0))>;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  constexpr double kRoundoff = 64.0 * std::numeric_limits<double>::epsilon();
  auto trapezoid = [&](std::size_t m) {
    T sum{};
    double mag = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const T y = f(two_pi * static_cast<double>(i) / static_cast<double>(m));
      sum += y;
      mag += std::abs(y);
    }
    const double h = two_pi / static_cast<double>(m);
    return std::pair<T, double>(T(sum * h), mag * h);
  };
  std::size_t m = 32;
  T prev = trapezoid(m).first;
  int agreements = 0;
  const std::size_t max_nodes = std::size_t{1} << 20;
  while (m < max_nodes) {
    m *= 2;
    const auto [next, mag] = trapezoid(m);
    if (!detail::finite_value(next))
      throw Error(ErrorCode::no_convergence, "quadrature: integrand is not finite");
    const double gap = std::abs(next - prev);
    prev = next;
    if (gap <= std::max({tol.abs, tol.rel * std::abs(next), kRoundoff * mag})) {
      if (++agreements == 2) return Estimate<T>{next, gap};
    } else {
      agreements = 0;
    }
  }
  throw Error(ErrorCode::no_convergence, "quadrature: periodic rule did not converge");
}

/// f(point) * d(mu)/ds as a function of the parameter s, with 0 wherever the
/// density underflows or the point escapes to infinity.
template <typename F>
auto weighted_integrand(F f, const Parametrization& p) {
  return [f = std::move(f), p](double s) {
    using T = std::decay_t<decltype(f(0.0))>;
    const double x = p.point(s);
    if (!std::isfinite(x)) return T{};
    const double d = std::exp(p.log_density(s));
    if (d == 0.0) return T{};
    return T(f(x) * d);
  };
}

/// Integral of f against mu; f takes the domain coordinate (the angle on the
/// circle). On the circle f is assumed periodic; pass periodic = false for
/// functions of the angle chart that are not (e.g. half-integer powers).
template <typename F>
auto integrate(F f, const Measure& mu, const Tolerance& tol = {}, bool periodic = true) {
  const Parametrization p = mu.parametrization();
  auto g = weighted_integrand(std::move(f), p);
  if (p.periodic && periodic) return integrate_periodic(g, tol);
  return integrate_interval(g, p.lo, p.hi, tol);
}

/// Running integral G(x) = int_{y <= x} g(y) mu(dy). Built once from an
/// adaptive partition; each evaluation is a prefix sum plus one Gauss rule on
/// the partial panel.
template <typename T>
class CumulativeIntegral {
 public:
  CumulativeIntegral(std::function<T(double)> integrand_in_parameter, Parametrization param,
                     const std::vector<Panel<T>>& panels, int order)
      : integrand_(std::move(integrand_in_parameter)),
        param_(std::move(param)),
        rule_(&gauss_legendre(order)) {
    edges_.reserve(panels.size() + 1);
    prefix_.reserve(panels.size() + 1);
    T running{};
    for (const auto& p : panels) {
      edges_.push_back(p.lo);
      prefix_.push_back(running);
      running += p.value;
      error_ += p.error;
    }
    edges_.push_back(panels.empty() ? param_.hi : panels.back().hi);
    prefix_.push_back(running);
    total_ = running;
  }

  /// G in terms of the integration parameter s.
  T at_parameter(double s) const {
    if (s <= edges_.front()) return T{};
    if (s >= edges_.back()) return total_;
    const auto it = std::upper_bound(edges_.begin(), edges_.end(), s);
    const std::size_t k = static_cast<std::size_t>(it - edges_.begin()) - 1;
    return prefix_[k] + rule_->apply(integrand_, edges_[k], s);
  }

  /// G at a point of the domain (angle on the circle).
  T operator()(double point) const { return at_parameter(param_.parameter(point)); }

  T total() const noexcept { return total_; }
  double abs_error() const noexcept { return error_; }
  const Parametrization& parametrization() const noexcept { return param_; }

 private:
  std::function<T(double)> integrand_;
  Parametrization param_;
  const GaussLegendre* rule_;
  std::vector<double> edges_;
  std::vector<T> prefix_;
  T total_{};
  double error_ = 0.0;
};

/// G(x) = int_{y <= x} g(y) mu(dy). On the circle this works in the angle
/// chart [0, 2 pi), where G(2 pi) is the full integral.
template <typename F>
auto cumulative(F g, const Measure& mu, const Tolerance& tol = {}) {
  const Parametrization p = mu.parametrization();
  auto h = weighted_integrand(std::move(g), p);
  using T = std::decay_t<decltype(h(0.0))>;
  std::function<T(double)> integrand = h;
  const auto panels = adaptive_panels(integrand, p.lo, p.hi, tol);
  return CumulativeIntegral<T>(integrand, p, panels, tol.order);
}

/// Total mass of mu.
Estimate<double> total_mass(const Measure& mu, const Tolerance& tol = {});

}  // namespace symmint
