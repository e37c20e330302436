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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "symmint/error.hpp"
#include "symmint/forms.hpp"

using namespace symmint;

TEST_CASE("half-integer exponents") {
  const HalfInteger h{3};
  CHECK(h.value() == 1.5);
  CHECK_FALSE(h.is_integer());
  CHECK((h + HalfInteger{1}).is_integer());
  CHECK(HalfInteger::integer(2).twice == 4);
}

TEST_CASE("basis functions on the line and the circle") {
  const std::vector<double> c{1.0, -2.0, 3.0};
  const BasisFunction p = BasisFunction::polynomial(c);
  CHECK(p.value_line(2.0) == doctest::Approx(1.0 - 4.0 + 12.0));
  CHECK(p.derivative_line(2.0) == doctest::Approx(-2.0 + 12.0));
  const BasisFunction m = BasisFunction::monomial(HalfInteger{-1});
  const Complex v = m.value_circle(std::numbers::pi);
  CHECK(v.real() == doctest::Approx(0.0));
  CHECK(v.imag() == doctest::Approx(-1.0));
  const BasisFunction u2 = BasisFunction::monomial(2);
  const Complex d = u2.derivative_circle(0.5);
  CHECK(std::abs(d - 2.0 * std::polar(1.0, 0.5)) < 1e-15);
  CHECK((p * 2.0).value_line(1.0) == doctest::Approx(4.0));
  CHECK((p + u2).value_line(1.0) == doctest::Approx(3.0));
}

TEST_CASE("moments") {
  CHECK(moment(measures::uniform(0.0, 1.0), 3).value.real() == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(moment(measures::exponential(1.0), 4).value.real() == doctest::Approx(24.0).epsilon(1e-10));
  const auto c1 = moment(measures::circle_cosine(0.5), 1).value;
  CHECK(c1.real() == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(std::abs(c1.imag()) < 1e-15);
  CHECK(std::abs(moment(measures::circle_uniform(), 2).value) < 1e-15);
}

TEST_CASE("form2 and form4 match moment expansions") {
  const Measure mu = measures::uniform(0.0, 1.0);
  const auto a = BasisFunction::monomial(1);
  const auto b = BasisFunction::monomial(2);
  CHECK(form2(a, b, mu).value.real() == doctest::Approx(0.25).epsilon(1e-13));
  // (u, u^2)_4 = (2 - 1) m_2 = 1/3
  CHECK(form4(a, b, mu).value.real() == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(form4_quadrature(a, b, mu).value.real() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("form1 with the sign kernel is skew and matches a closed form") {
  const Measure mu = measures::uniform(0.0, 1.0);
  const auto one = BasisFunction::monomial(0);
  const auto u = BasisFunction::monomial(1);
  // int int sgn(v - w) * v = 1/3 - 1/6... (1, u)_1 = int_0^1 v (2v - 1) dv = 1/6
  const double a = form1(one, u, mu).value.real();
  const double b = form1(u, one, mu).value.real();
  CHECK(a == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(b == doctest::Approx(-a).epsilon(1e-12));
  CHECK(std::abs(form1(u, u, mu).value) < 1e-14);
}

TEST_CASE("epsilon conventions") {
  const Measure mu = measures::uniform(0.0, 1.0);
  const auto one = BasisFunction::monomial(0);
  const auto u = BasisFunction::monomial(1);
  FormOptions half;
  half.epsilon = EpsilonConvention::half_sign;
  CHECK(form1(one, u, mu, half).value.real() == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
  FormOptions step;
  step.epsilon = EpsilonConvention::unit_step;
  // int int [v < w] v = int_0^1 v (1 - v) dv = 1/6, and the transpose gives 1/3: not skew
  const double a = form1(one, u, mu, step).value.real();
  const double b = form1(u, one, mu, step).value.real();
  CHECK(a + b != doctest::Approx(0.0));
}
