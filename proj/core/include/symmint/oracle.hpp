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
 * @file oracle.hpp
 * @brief Brute-force z_beta(mu) straight from the multiple integral, for small N.
 *
 * |V|^beta is not smooth where two points meet, so the tensor method does not
 * integrate over the whole cube. It uses the symmetry of the integrand instead:
 * (1/N!) int_{I^N} = int over the ordered chamber s_1 < ... < s_N. The chamber
 * is mapped onto [0,1]^N by the collapsed coordinates
 *   s_N = lo + (hi - lo) r_N,   s_k = lo + (s_{k+1} - lo) r_k,
 * and integrated with a tensor product of composite Gauss-Legendre rules,
 * doubling the panel count until two resolutions agree.
 *
 * The Monte Carlo method samples mu by inverse transform from a cached
 * cumulative table. Batches have fixed size and per-batch seeds and are
 * merged in index order, so a given seed reproduces the estimate for any
 * thread count.
 */

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "symmint/measure.hpp"
#include "symmint/quadrature.hpp"
#include "symmint/zbeta.hpp"

namespace symmint {

enum class OracleMethod { tensor_quadrature, monte_carlo };

struct MonteCarloOptions {
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 0;
};

struct OracleRequest {
  Measure mu;
  Beta beta = Beta::two;
  int n = 1;
  OracleMethod method = OracleMethod::tensor_quadrature;
  MonteCarloOptions monte_carlo{};
};

struct OracleOptions {
  Tolerance tol{};                  ///< for the 1-D cumulative/mass integrals
  double rel_target = 1e-8;         ///< tensor: stop when resolutions agree to this
  std::size_t max_evaluations = 300'000'000;
  int gauss_order = 16;             ///< tensor: initial points per axis
  unsigned threads = 1;
};

/// Integrand of a chamber integral in a parameter s in [lo, hi]:
///   int_{s_1 < .. < s_N} prod_k exp(log_density(s_k)) prod_{i<j} |x_i - x_j|^beta ds
/// with x = point(s); on the circle |x_i - x_j| is the chord 2|sin((x_i - x_j)/2)|.
struct ChamberIntegrand {
  double lo = 0.0;
  double hi = 1.0;
  std::function<double(double)> point;
  std::function<double(double)> log_density;
  bool circle = false;
};

/// Tensor-product chamber integral; abs_error is the gap between the last two
/// resolutions. Throws Error(budget_exceeded) when the grid would exceed
/// max_evaluations before the resolutions agree.
Estimate<double> chamber_integral(const ChamberIntegrand& integrand, int n, int beta,
                                  const OracleOptions& opts = {});

/// Inverse-transform sampler over a 2048-interval cumulative table with
/// monotone (Fritsch-Carlson) cubic interpolation of the inverse.
class InverseCdfSampler {
 public:
  static constexpr std::size_t kTableIntervals = 2048;

  /// Throws Error(non_samplable) if the cumulative cannot be inverted.
  explicit InverseCdfSampler(const Measure& mu, const Tolerance& tol = {});

  /// Point of the domain for a uniform variate in [0, 1).
  double sample(double uniform01) const;
  double total_mass() const noexcept { return mass_; }

 private:
  Parametrization param_;
  std::vector<double> cdf_;     // increasing
  std::vector<double> params_;  // matching parameter values
  std::vector<double> slopes_;  // d(param)/d(cdf) at the knots
  double mass_ = 0.0;
};

/// N = 1 gives the total mass; tensor quadrature requires N <= 4 (beta <= 2)
/// or N <= 3 (beta = 4).
Estimate<double> zbeta_bruteforce(const OracleRequest& req, const OracleOptions& opts = {});

}  // namespace symmint
