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

#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace symmint {

/// Support of a one-dimensional measure.
struct Domain {
  enum class Kind { finite_interval, semi_infinite, circle };

  Kind kind = Kind::finite_interval;
  double lower = 0.0;
  double upper = 1.0;

  /// (a, b) with a < b.
  static Domain interval(double a, double b);
  /// (a, +inf) with a finite.
  static Domain half_line(double a);
  /// The unit circle, charted by the angle x in [0, 2*pi).
  static Domain unit_circle();

  bool is_circle() const noexcept { return kind == Kind::circle; }
  bool contains(double point) const noexcept;
};

/// Increasing reparametrization point = to_point(t) of the integration
/// coordinate t. Used when the weight is smooth in some other variable
/// (boost, angle) but singular or slowly decaying in the eigenvalue u.
struct Chart {
  std::string name;
  Domain coordinate;  ///< finite or semi-infinite range of t
  std::function<double(double)> to_point;
  std::function<double(double)> from_point;
  std::function<double(double)> log_jacobian;  ///< log d(point)/dt
  /// Length scale for the semi-infinite map t = lower + scale * s / (1 - s).
  double scale = 1.0;
};

/// The measure as a density on a finite parameter interval [lo, hi].
/// Semi-infinite ranges are compactified, charts are folded in. On the circle
/// the parameter is the angle and the integrand is periodic.
struct Parametrization {
  double lo = 0.0;
  double hi = 1.0;
  bool periodic = false;
  std::function<double(double)> point;        ///< s -> domain coordinate
  std::function<double(double)> log_density;  ///< log of d(mu)/ds
  std::function<double(double)> parameter;    ///< domain coordinate -> s
};

/// Positive measure mu(du) = exp(log_weight(u)) du on a Domain. On the circle
/// the coordinate is the angle x and the density is taken against dx, so the
/// uniform probability measure has log_weight = -log(2 pi).
///
/// Measures are immutable values; the transforms below return new measures.
class Measure {
 public:
  using LogWeight = std::function<double(double)>;

  Measure(Domain domain, LogWeight log_weight, std::string label, bool normalized = false);

  const Domain& domain() const noexcept { return domain_; }
  bool on_circle() const noexcept { return domain_.is_circle(); }
  const std::string& label() const noexcept { return label_; }
  /// Informational only; the identities are homogeneous in mu.
  bool normalized() const noexcept { return normalized_; }
  const std::optional<Chart>& chart() const noexcept { return chart_; }

  double log_weight(double point) const { return (*log_weight_)(point); }
  double weight(double point) const;

  Parametrization parametrization() const;

  Measure with_chart(Chart chart) const;
  Measure with_label(std::string label) const;
  /// c * mu, c > 0.
  Measure scaled(double c) const;
  /// Push-forward by u -> u + s (real line only).
  Measure shifted(double s) const;
  /// Push-forward by u -> s * u, s > 0 (real line only).
  Measure dilated(double s) const;
  /// Multiplies the weight by u^k (real line only).
  Measure times_power(double k) const;
  /// Multiplies the weight by exp(extra(u)).
  Measure times(LogWeight extra, const std::string& what) const;

 private:
  Domain domain_;
  std::shared_ptr<const LogWeight> log_weight_;
  std::optional<Chart> chart_;
  std::string label_;
  bool normalized_ = false;
};

/// Shortest decimal form that round-trips, used in labels.
std::string format_number(double x);

namespace measures {

/// Probability measure du / (b - a) on (a, b).
Measure uniform(double a, double b);
/// Lebesgue measure du on (a, b).
Measure lebesgue(double a, double b);
/// exp(-rate * (u - a)) du on (a, inf).
Measure exponential(double rate, double a = 0.0);
/// u^alpha exp(-u) du on (0, inf).
Measure laguerre(double alpha);
/// (1 - u)^alpha (1 + u)^beta du on (-1, 1).
Measure jacobi(double alpha, double beta);
/// dx / (2 pi) on the circle.
Measure circle_uniform();
/// (1 + a cos x) dx / (2 pi) on the circle, |a| < 1.
Measure circle_cosine(double a);

}  // namespace measures

}  // namespace symmint
