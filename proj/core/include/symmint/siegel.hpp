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
 * @file siegel.hpp
 * @brief Gaussian distribution on the Siegel disk in the eigenvalue chart.
 *
 * With u = cosh 2 lambda the radial part of exp(-d^2 / (2 sigma^2)) becomes the
 * measure mu_sigma(du) = exp(-acosh(u)^2 / (8 sigma^2)) du on (1, inf), and
 *   m_j(sigma) = int_1^inf exp(-acosh(u)^2 / (8 sigma^2)) u^j du
 *              = int_0^inf exp(-lambda^2 / (2 sigma^2)) cosh(2 lambda)^j 2 sinh(2 lambda) d lambda,
 *   Z(sigma)   = det { m_{k+l}(sigma) }            (up to the constant C~_2).
 * The points u_j form a determinantal process with the Christoffel-Darboux
 * kernel K_N(u, v) = sum_{k<N} phi_k(u) phi_k(v) of mu_sigma.
 */

#include <vector>

#include "symmint/measure.hpp"
#include "symmint/oracle.hpp"
#include "symmint/quadrature.hpp"

namespace symmint {

/// Range of sigma in which the moments are supported.
inline constexpr double kSigmaMin = 1e-3;
inline constexpr double kSigmaMax = 10.0;

/// mu_sigma, charted by lambda with length scale sigma.
Measure siegel_measure(double sigma);

/// Quadrature settings for moments: tighter than the default so that
/// the two independent routes agree to ~1e-12.
Tolerance siegel_tolerance();

/// m_j(sigma) by quadrature of the lambda-chart integrand. Throws Error(no_convergence) for sigma
/// outside [kSigmaMin, kSigmaMax] or when the moment overflows a double.
Estimate<double> siegel_moment(int j, double sigma, const Tolerance& tol = siegel_tolerance());

/// m_j(sigma) by direct integration in u over the dyadic panels [2^k, 2^{k+1}]
/// (after [1, 2]). Independent of the chart machinery; used as a cross-check.
Estimate<double> siegel_moment_u(int j, double sigma, const Tolerance& tol = siegel_tolerance());

struct SiegelZ {
  std::vector<double> moments;  ///< m_0 .. m_{2N-2}
  double value = 0.0;           ///< det of the Hankel matrix, C~_2 excluded
  double err_estimate = 0.0;
};

SiegelZ siegel_Z(int n, double sigma, const Tolerance& tol = siegel_tolerance());

/// Z(sigma) from the lambda-space N-fold integral
///   2^N / N! int_{lambda > 0} prod exp(-lambda_j^2 / (2 sigma^2)) sinh(2 lambda_j)
///                             prod_{i<j} |cosh 2 lambda_i - cosh 2 lambda_j|^2 d lambda.
Estimate<double> siegel_Z_oracle(int n, double sigma, const OracleOptions& opts = {});

/// Christoffel-Darboux kernel of a real-line measure.
class CDKernel {
 public:
  CDKernel(Measure mu, std::vector<std::vector<double>> ortho_coeffs,
           std::vector<double> recurrence_a, std::vector<double> recurrence_b);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()); }
  const Measure& measure() const noexcept { return mu_; }
  /// coefficients of phi_k in the monomial basis, lowest degree first.
  const std::vector<std::vector<double>>& ortho_coeffs() const noexcept { return coeffs_; }
  /// Monic recurrence p_{k+1} = (u - a_k) p_k - b_k p_{k-1}, with b_0 = m_0.
  const std::vector<double>& recurrence_a() const noexcept { return a_; }
  const std::vector<double>& recurrence_b() const noexcept { return b_; }

  double phi(int k, double u) const;
  double operator()(double u, double v) const;

 private:
  Measure mu_;
  std::vector<std::vector<double>> coeffs_;
  std::vector<double> a_;
  std::vector<double> b_;
};

/// Orthonormal polynomials from the stabilized monic basis. Throws
/// Error(degenerate_measure) if mu has fewer than n support points.
CDKernel cd_kernel(const Measure& mu, int n, const Tolerance& tol = {});

/// int K_N(u, u) mu(du); equals N.
Estimate<double> kernel_trace(const CDKernel& k, const Tolerance& tol = {});
/// int int K_N(u, v)^2 mu(du) mu(dv) = sum_{k,l} (phi_k, phi_l)^2; equals N.
double kernel_frobenius(const CDKernel& k, const Tolerance& tol = {});
/// int K_N(u, s) K_N(s, v) mu(ds); equals K_N(u, v).
Estimate<double> kernel_reproduce(const CDKernel& k, double u, double v, const Tolerance& tol = {});
/// det { K_N(u_i, u_j) }.
double kernel_determinant(const CDKernel& k, const std::vector<double>& points);

}  // namespace symmint
