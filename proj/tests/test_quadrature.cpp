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
#include "symmint/measure.hpp"
#include "symmint/quadrature.hpp"

using namespace symmint;

TEST_CASE("Gauss-Legendre weights and exactness") {
  const GaussLegendre& g = gauss_legendre(10);
  double s = 0.0;
  for (double w : g.weights()) s += w;
  CHECK(s == doctest::Approx(2.0).epsilon(1e-15));
  // exact for degree 19
  CHECK(g.apply([](double x) { return std::pow(x, 18); }, -1.0, 1.0) ==
        doctest::Approx(2.0 / 19.0).epsilon(1e-14));
  CHECK(&gauss_legendre(10) == &g);
  CHECK_THROWS_AS(GaussLegendre(0), Error);
}

TEST_CASE("adaptive interval integration") {
  const auto e = integrate_interval([](double x) { return std::sqrt(x); }, 0.0, 1.0);
  CHECK(e.value == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(e.abs_error < 1e-9);
  const auto z = integrate_interval([](double x) { return std::sin(x); }, -1.0, 1.0);
  CHECK(std::abs(z.value) < 1e-14);
}

TEST_CASE("integration budget is enforced") {
  Tolerance t;
  t.max_panels = 16;
  t.rel = 1e-15;
  t.abs = 0.0;
  try {
    integrate_interval([](double x) { return 1.0 / std::sqrt(x) * std::sin(1.0 / x); }, 0.0, 1.0, t);
    FAIL("expected NoConvergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::no_convergence);
  }
}

TEST_CASE("periodic trapezoid converges geometrically") {
  const auto e = integrate_periodic([](double x) { return std::exp(std::cos(x)); });
  CHECK(e.value == doctest::Approx(2.0 * std::numbers::pi * std::cyl_bessel_i(0.0, 1.0)).epsilon(1e-13));
}

TEST_CASE("measure masses") {
  CHECK(total_mass(measures::uniform(2.0, 5.0)).value == doctest::Approx(1.0));
  CHECK(total_mass(measures::lebesgue(2.0, 5.0)).value == doctest::Approx(3.0));
  CHECK(total_mass(measures::exponential(2.0, 1.0)).value == doctest::Approx(0.5).epsilon(1e-11));
  CHECK(total_mass(measures::laguerre(2.0)).value == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(total_mass(measures::jacobi(0.5, -0.5)).value == doctest::Approx(std::numbers::pi).epsilon(1e-8));
  CHECK(total_mass(measures::circle_uniform()).value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(total_mass(measures::circle_cosine(0.5)).value == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("measure transforms") {
  const Measure u = measures::uniform(0.0, 1.0);
  CHECK(total_mass(u.scaled(3.0)).value == doctest::Approx(3.0));
  const Measure s = u.shifted(2.0);
  CHECK(s.domain().lower == 2.0);
  CHECK(s.domain().upper == 3.0);
  const Measure d = u.dilated(4.0);
  CHECK(d.domain().upper == 4.0);
  CHECK(total_mass(d).value == doctest::Approx(1.0));
  CHECK(total_mass(u.times_power(2.0)).value == doctest::Approx(1.0 / 3.0));
  CHECK(integrate([](double x) { return x; }, measures::exponential(1.0).shifted(1.0)).value ==
        doctest::Approx(2.0).epsilon(1e-10));
  CHECK_THROWS_AS(measures::circle_uniform().shifted(1.0), Error);
  CHECK_THROWS_AS(u.scaled(-1.0), Error);
}

TEST_CASE("charts reparametrize without changing integrals") {
  Chart c;
  c.name = "log";
  c.coordinate = Domain::half_line(0.0);
  c.to_point = [](double t) { return std::exp(t); };
  c.from_point = [](double u) { return std::log(u); };
  c.log_jacobian = [](double t) { return t; };
  const Measure plain(Domain::half_line(1.0), [](double u) { return -2.0 * std::log(u); }, "u^-2");
  const Measure charted = plain.with_chart(c);
  CHECK(total_mass(charted).value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(total_mass(plain).value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("cumulative integral") {
  const auto g = cumulative([](double) { return 1.0; }, measures::uniform(0.0, 2.0));
  CHECK(g(1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(g.total() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("labels use the shortest round-trip form") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(2.0) == "2");
  CHECK(measures::uniform(0.0, 1.0).label() == "uniform(a=0,b=1)");
}
