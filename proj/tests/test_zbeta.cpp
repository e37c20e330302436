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
#include "symmint/zbeta.hpp"

using namespace symmint;

namespace {

double z(const Measure& mu, int beta, int n, bool stabilize = false, EvalOptions opts = {}) {
  return zbeta(ZRequest{mu, beta_from_int(beta), n, stabilize}, opts).value;
}

const Measure& u01() {
  static const Measure m = measures::uniform(0.0, 1.0);
  return m;
}

}  // namespace

TEST_CASE("beta parsing") {
  CHECK(beta_from_int(4) == Beta::four);
  CHECK_THROWS_AS(beta_from_int(3), Error);
  CHECK(zbeta_matrix_dim(Beta::one, 3) == 4);
  CHECK(zbeta_matrix_dim(Beta::one, 4) == 4);
  CHECK(zbeta_matrix_dim(Beta::two, 3) == 3);
  CHECK(zbeta_matrix_dim(Beta::four, 3) == 6);
}

TEST_CASE("closed forms on uniform(0,1)") {
  CHECK(z(u01(), 2, 1) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(z(u01(), 1, 1) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(z(u01(), 4, 1) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(z(u01(), 1, 2) == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
  CHECK(z(u01(), 2, 2) == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
  CHECK(z(u01(), 2, 3) == doctest::Approx(1.0 / 2160.0).epsilon(1e-11));
  CHECK(z(u01(), 4, 2) == doctest::Approx(1.0 / 30.0).epsilon(1e-12));
}

TEST_CASE("closed forms on the uniform circle") {
  const Measure cu = measures::circle_uniform();
  for (int n = 1; n <= 5; ++n) CHECK(z(cu, 2, n) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(z(cu, 1, 2) == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-12));
  CHECK(z(cu, 4, 2) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(z(cu, 4, 3) == doctest::Approx(15.0).epsilon(1e-11));
}

TEST_CASE("Laguerre values") {
  const Measure e = measures::exponential(1.0);
  CHECK(z(e, 2, 3) == doctest::Approx(4.0).epsilon(1e-10));   // prod k!^2 / ... = 1 * 1 * 4
  CHECK(z(e, 2, 4) == doctest::Approx(144.0).epsilon(1e-9));
  CHECK(z(e, 4, 2) == doctest::Approx(12.0).epsilon(1e-10));
}

TEST_CASE("circle results carry the imaginary residual") {
  const EvalResult r = zbeta(ZRequest{measures::circle_cosine(0.5), Beta::one, 2, false});
  REQUIRE(r.imag_residual.has_value());
  CHECK(*r.imag_residual <= kImagResidualTolerance);
  CHECK(r.matrix_dim == 2);
  const EvalResult l = zbeta(ZRequest{u01(), Beta::one, 3, false});
  CHECK_FALSE(l.imag_residual.has_value());
  CHECK(l.matrix_dim == 4);
}

TEST_CASE("stabilized basis") {
  const StabilizedBasis one = stabilized_basis(u01(), 1);
  REQUIRE(one.size() == 1);
  CHECK(one.coefficients[0] == std::vector<double>{1.0});
  const StabilizedBasis two = stabilized_basis(u01(), 2);
  CHECK(two.coefficients[1][0] == doctest::Approx(-0.5).epsilon(1e-13));
  CHECK(two.coefficients[1][1] == 1.0);
  CHECK(two.squared_norms[1] == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
  for (int beta : {1, 2, 4})
    for (int n = 1; n <= 4; ++n)
      CHECK(z(measures::exponential(1.0), beta, n, true) ==
            doctest::Approx(z(measures::exponential(1.0), beta, n)).epsilon(1e-8));
  try {
    stabilized_basis(measures::uniform(1.0, 1.0 + 1e-14), 2);
    FAIL("expected DegenerateMeasure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_measure);
  }
  CHECK_THROWS_AS(stabilized_basis(measures::circle_uniform(), 2), Error);
}

TEST_CASE("homogeneity, translation and scaling") {
  const Measure mu = measures::lebesgue(0.0, 1.0).times_power(1.0);
  for (int beta : {1, 2, 4})
    for (int n = 1; n <= 3; ++n) {
      const double base = z(mu, beta, n);
      CHECK(z(mu.scaled(2.0), beta, n) == doctest::Approx(std::pow(2.0, n) * base).epsilon(1e-9));
      CHECK(z(mu.shifted(0.5), beta, n) == doctest::Approx(base).epsilon(1e-8));
      CHECK(z(mu.dilated(3.0), beta, n) ==
            doctest::Approx(std::pow(3.0, 0.5 * beta * n * (n - 1)) * base).epsilon(1e-8));
    }
}

TEST_CASE("extended precision and threads give the same value") {
  EvalOptions ext;
  ext.precision = Precision::extended;
  EvalOptions par;
  par.threads = 3;
  for (int beta : {1, 2, 4}) {
    const double ref = z(u01(), beta, 3);
    CHECK(z(u01(), beta, 3, false, ext) == doctest::Approx(ref).epsilon(1e-12));
    CHECK(z(u01(), beta, 3, false, par) == ref);
  }
}

TEST_CASE("unit-step convention cannot feed a Pfaffian") {
  EvalOptions step;
  step.epsilon = EpsilonConvention::unit_step;
  try {
    z(u01(), 1, 2, false, step);
    FAIL("expected NotSkew");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_skew);
  }
  EvalOptions half;
  half.epsilon = EpsilonConvention::half_sign;
  CHECK(z(u01(), 1, 2, false, half) == doctest::Approx(1.0 / 12.0).epsilon(1e-10));
}

TEST_CASE("request validation") {
  CHECK_THROWS_AS(zbeta(ZRequest{u01(), Beta::two, 0, false}), Error);
  CHECK_THROWS_AS(zbeta_circle(ZRequest{u01(), Beta::two, 2, false}), Error);
  CHECK_THROWS_AS(zbeta_line(ZRequest{measures::circle_uniform(), Beta::two, 2, false}), Error);
}

TEST_CASE("matrix builders expose skew structure") {
  const ZMatrix<double> m = build_line_matrix(ZRequest{u01(), Beta::four, 2, false});
  CHECK(m.pfaffian);
  CHECK(m.matrix.size() == 4);
  CHECK(m.matrix.is_skew());
  // (u^0, u^1)_4 = m_0
  CHECK(m.matrix(0, 1) == doctest::Approx(1.0));
  const ZMatrix<Complex> c = build_circle_matrix(ZRequest{measures::circle_uniform(), Beta::two, 3, false});
  CHECK_FALSE(c.pfaffian);
  CHECK(std::abs(c.matrix(1, 1) - Complex(1.0)) < 1e-14);
}
