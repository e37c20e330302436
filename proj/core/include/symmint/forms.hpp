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
 * @file forms.hpp
 * @brief Moments and the three bilinear forms (mu,1), (mu,2), (mu,4).
 *
 * On the real line the forms act on functions of u. On the circle they act on
 * functions of u = e^{ix}, evaluated in the angle chart x in [0, 2 pi); that
 * chart also fixes the branch of half-integer powers u^{k - (N-1)/2}.
 *
 *   (h,g)_1 = int int h(u) eps(u, v) g(v) mu(du) mu(dv)
 *   (h,g)_2 = int h(u) g(u) mu(du)            (no conjugation)
 *   (h,g)_4 = int (h g' - g h')(u) mu(du)     (' = d/du, also on the circle)
 *
 * The default kernel is eps(u, v) = sgn(v - u): it is the one that makes the
 * (mu,1) matrix skew and reproduces the brute-force integrals. The half-sign
 * and unit-step kernels are kept selectable for comparison.
 */

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "symmint/measure.hpp"
#include "symmint/quadrature.hpp"

namespace symmint {

using Complex = std::complex<double>;

/// An exponent in (1/2)Z, stored as twice its value.
struct HalfInteger {
  int twice = 0;

  static constexpr HalfInteger integer(int k) { return {2 * k}; }
  constexpr double value() const { return 0.5 * twice; }
  constexpr bool is_integer() const { return twice % 2 == 0; }
  constexpr HalfInteger operator+(HalfInteger o) const { return {twice + o.twice}; }
  constexpr HalfInteger operator-(HalfInteger o) const { return {twice - o.twice}; }
  constexpr bool operator==(const HalfInteger&) const = default;
};

/// sum_i c_i u^{e_i}. Half-integer exponents require the circle (angle chart)
/// or u > 0 on the line.
class BasisFunction {
 public:
  struct Term {
    HalfInteger exponent;
    double coefficient = 1.0;
  };

  BasisFunction() = default;
  static BasisFunction monomial(HalfInteger exponent, double coefficient = 1.0);
  static BasisFunction monomial(int k, double coefficient = 1.0);
  /// c[0] + c[1] u + c[2] u^2 + ...
  static BasisFunction polynomial(std::span<const double> coefficients);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_monomial() const noexcept { return terms_.size() == 1; }

  double value_line(double u) const;
  double derivative_line(double u) const;
  /// Value at u = e^{ix}.
  Complex value_circle(double x) const;
  /// d/du at u = e^{ix}.
  Complex derivative_circle(double x) const;

  BasisFunction operator+(const BasisFunction& other) const;
  BasisFunction operator*(double scale) const;

  std::string describe() const;

 private:
  std::vector<Term> terms_;
};

enum class EpsilonConvention {
  sign,       ///< sgn(v - u)
  half_sign,  ///< sgn(v - u) / 2
  unit_step,  ///< 1 if v < u else 0 (not skew)
};

struct FormOptions {
  Tolerance tol{};
  EpsilonConvention epsilon = EpsilonConvention::sign;
};

/// int u^j mu(du); on the circle int e^{ijx} mu(dx).
Estimate<Complex> moment(const Measure& mu, HalfInteger j, const Tolerance& tol = {});
Estimate<Complex> moment(const Measure& mu, int j, const Tolerance& tol = {});

Estimate<Complex> form1(const BasisFunction& h, const BasisFunction& g, const Measure& mu,
                        const FormOptions& opts = {});
Estimate<Complex> form2(const BasisFunction& h, const BasisFunction& g, const Measure& mu,
                        const FormOptions& opts = {});
/// Expands over terms: (u^a, u^b)_4 = (b - a) * moment(a + b - 1).
Estimate<Complex> form4(const BasisFunction& h, const BasisFunction& g, const Measure& mu,
                        const FormOptions& opts = {});
/// Direct quadrature of h g' - g h'; used for the stabilized (polynomial) basis.
Estimate<Complex> form4_quadrature(const BasisFunction& h, const BasisFunction& g,
                                   const Measure& mu, const FormOptions& opts = {});

}  // namespace symmint
