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
 * @file zbeta.hpp
 * @brief z_beta(mu) = (1/N!) int |V(u_1..u_N)|^beta mu(du_1)..mu(du_N) as a
 * single determinant or Pfaffian of moment-type matrices.
 *
 * Real line (basis b_k = u^k, or the stabilized monic basis p_k):
 *   beta = 1, N even : pf { (b_k, b_l)_1 }                     N x N
 *   beta = 1, N odd  : pf [ (b_k, b_l)_1   (1, b_k)_2 ]         (N+1) x (N+1)
 *                         [ -(b_l, 1)_2       0      ]
 *   beta = 2         : det { (b_k, b_l)_2 } = det { m_{k+l} }   N x N
 *   beta = 4         : pf { (b_k, b_l)_4 } = pf { (l-k) m_{k+l-1} }  2N x 2N
 *
 * Circle, with g_k = u^{k-(N-1)/2} and h_k = u^{k-(N-1)}:
 *   beta = 1 : (-i)^{N(N-1)/2} pf { (g_k, g_l)_1 } (bordered for odd N)
 *   beta = 2 : det { (u^k, u^{-l})_2 } = det { c_{k-l} }
 *   beta = 4 : pf { (h_k, h_l)_4 }, 2N x 2N
 */

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "symmint/forms.hpp"
#include "symmint/linalg.hpp"
#include "symmint/measure.hpp"

namespace symmint {

enum class Beta : int { one = 1, two = 2, four = 4 };

/// Throws Error(invalid_argument) unless b is 1, 2 or 4.
Beta beta_from_int(int b);
constexpr int to_int(Beta b) { return static_cast<int>(b); }

enum class Precision {
  standard,  ///< double
  extended,  ///< long double in the determinant / Pfaffian phase
};

struct EvalOptions {
  Tolerance tol{};
  EpsilonConvention epsilon = EpsilonConvention::sign;
  Precision precision = Precision::standard;
  unsigned threads = 1;  ///< matrix entries are computed in parallel
};

struct ZRequest {
  Measure mu;
  Beta beta = Beta::two;
  int n = 1;
  bool stabilize = false;  ///< replace u^k by monic near-orthogonal p_k (real line)
};

struct EvalResult {
  double value = 0.0;
  std::optional<double> imag_residual;  ///< |Im| before discarding (circle only)
  std::size_t matrix_dim = 0;
  std::string method;
  double err_estimate = 0.0;
};

/// Threshold of the circle invariant imag_residual <= 1e-8 * max(1, |value|).
inline constexpr double kImagResidualTolerance = 1e-8;

/// Monic polynomials p_k(u) = u^k + ..., k < n, orthogonalized under (mu,2).
/// coefficients[k][i] multiplies u^i; coefficients[k][k] == 1 so the change
/// of basis is unit lower-triangular.
struct StabilizedBasis {
  std::vector<std::vector<double>> coefficients;
  std::vector<double> squared_norms;  ///< (p_k, p_k)_2

  std::size_t size() const noexcept { return coefficients.size(); }
  BasisFunction function(std::size_t k) const;
};

/// Gram-Schmidt on u * p_{k-1} with one re-orthogonalization pass, inner
/// products by quadrature. Throws Error(degenerate_measure) when a new
/// polynomial loses its norm (measure supported on fewer than n points).
StabilizedBasis stabilized_basis(const Measure& mu, int n, const Tolerance& tol = {});

/// Assembled matrix together with per-entry error estimates.
template <typename T>
struct ZMatrix {
  SquareMatrix<T> matrix;
  SquareMatrix<double> entry_errors;
  bool pfaffian = false;
  std::string method;
};

ZMatrix<double> build_line_matrix(const ZRequest& req, const EvalOptions& opts = {});
ZMatrix<Complex> build_circle_matrix(const ZRequest& req, const EvalOptions& opts = {});

EvalResult zbeta_line(const ZRequest& req, const EvalOptions& opts = {});
/// Throws Error(imag_residual_too_large) if the discarded imaginary part
/// exceeds kImagResidualTolerance * max(1, |value|).
EvalResult zbeta_circle(const ZRequest& req, const EvalOptions& opts = {});
/// Dispatches on the measure's domain.
EvalResult zbeta(const ZRequest& req, const EvalOptions& opts = {});

/// Dimension of the matrix used for (beta, N).
std::size_t zbeta_matrix_dim(Beta beta, int n);

}  // namespace symmint
