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
 * @file spaces.hpp
 * @brief Symmetric-space catalog: reduces a K-invariant integral of a tensor
 * power f = prod w(a_j) to z_beta(mu) for a one-dimensional measure mu.
 *
 *   cone              (0, inf)   w(u) u^{-N_beta} du,  N_beta = (beta/2)(N - 1) + 1
 *   cone_dual         circle     w(x) dx / (2 pi)
 *   grassmann         (1, inf)   u = cosh 2 tau, p points
 *   grassmann_dual    (-1, 1)    u = cos 2 theta, p points
 *   classical_domain  (1, inf)   u = cosh 2 lambda, w(acosh(u) / 2) du
 *
 * The Grassmann densities with the Jacobians folded in are
 *   w(tau(u))   ((u - 1)/2)^{beta(q-p)/2} (u^2 - 1)^{beta/2 - 1} / 2
 *   w(theta(u)) ((1 - u)/2)^{beta(q-p)/2} (1 - u^2)^{beta/2 - 1} / 2
 * from sinh^2 tau = (u - 1)/2, sinh 2 tau = sqrt(u^2 - 1), du = 2 sinh 2 tau d tau
 * and the circular analogues. original_chart_integral() integrates the
 * unreduced densities directly so these Jacobians can be checked.
 */

#include <functional>
#include <string>
#include <vector>

#include "symmint/measure.hpp"
#include "symmint/oracle.hpp"
#include "symmint/quadrature.hpp"
#include "symmint/zbeta.hpp"

namespace symmint {

enum class SpaceFamily { cone, cone_dual, grassmann, grassmann_dual, classical_domain };

/// Throws Error(invalid_argument) for an unknown name.
SpaceFamily space_family_from_string(const std::string& name);
std::string to_string(SpaceFamily family);

struct SpaceSpec {
  SpaceFamily family = SpaceFamily::cone;
  Beta beta = Beta::two;
  int n = 1;  ///< cone and domain families
  int p = 1;  ///< Grassmann families, p <= q
  int q = 1;

  /// Throws Error(invalid_argument) on a violated invariant.
  void validate() const;
  /// Number of points of the reduced integral (N, or p for Grassmann families).
  int points() const;
  std::string describe() const;
};

/// Coordinate consumed by a weight.
enum class WeightChart {
  native,      ///< the family's own coordinate (u, circle angle, tau, theta or lambda)
  eigenvalue,  ///< u itself, any real-line family
  boost,       ///< tau or lambda
  angle,       ///< theta
  circle,      ///< angle of e^{i x}
};

/// Positive single-variable weight w, held as log w.
struct WeightSpec {
  std::function<double(double)> log_w;
  std::string label;
  WeightChart chart = WeightChart::native;
};

namespace weights {

WeightSpec one();
/// exp(-rate x).
WeightSpec exponential(double rate);
/// exp(-x^2 / (2 sigma^2)).
WeightSpec gaussian(double sigma);
/// sech(x)^power.
WeightSpec sech(double power);
/// x^shape exp(-rate x), x > 0.
WeightSpec gamma(double shape, double rate);
/// 1 + a cos x, |a| < 1.
WeightSpec trig(double a);
/// x^k, x > 0.
WeightSpec power(double k);

}  // namespace weights

struct ReduceOptions {
  Tolerance tol{};
  bool check_mass = true;  ///< verify that the reduced measure has finite mass
  double chart_scale = 1.0;  ///< length scale of the semi-infinite boost chart
};

struct Reduction {
  Measure mu;
  int n = 1;
};

/// Throws Error(non_integrable_weight) if check_mass is set and the total mass
/// of mu cannot be computed.
Reduction reduce(const SpaceSpec& space, const WeightSpec& w, const ReduceOptions& opts = {});

/// The integral of f over the space divided by the family constant C~.
struct InvariantResult {
  EvalResult z;
  int points = 1;
  std::string measure;
  bool constant_excluded = true;
};

InvariantResult integrate_invariant(const SpaceSpec& space, const WeightSpec& w,
                                    const EvalOptions& opts = {},
                                    const ReduceOptions& reduce_opts = {});

/// z_beta(mu_num) / z_beta(mu_den), with the propagated error. Throws
/// Error(division_by_zero_mass) when the denominator is not positive.
Estimate<double> expectation_ratio(const SpaceSpec& space, const WeightSpec& w_num,
                                   const WeightSpec& w_den, const EvalOptions& opts = {},
                                   const ReduceOptions& reduce_opts = {});

/// kappa with z_beta(reduced mu) = kappa * (half-range original-chart integral):
/// 1 for the Grassmann families, 2^N for classical domains (du = 2 sinh 2 lambda d lambda).
double chart_constant(const SpaceSpec& space);

/// (1/N!) times the integral of the unreduced density over tau > 0,
/// theta in (0, pi/2) or lambda > 0, by the oracle's chamber quadrature and
/// multiplied by chart_constant(). Integrating over the full symmetric ranges
/// instead multiplies the unscaled integral by 2^N. Throws
/// Error(invalid_argument) for the cone families, which have no other chart.
Estimate<double> original_chart_integral(const SpaceSpec& space, const WeightSpec& w,
                                         const OracleOptions& opts = {},
                                         double chart_scale = 1.0);

struct RootMultiplicity {
  std::string root;
  double multiplicity = 0.0;
};

/// Restricted roots and their multiplicities implied by the reduced density.
std::vector<RootMultiplicity> root_multiplicities(const SpaceSpec& space);

}  // namespace symmint
