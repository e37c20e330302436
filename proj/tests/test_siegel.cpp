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
#include <string>
#include <vector>

#include "symmint/error.hpp"
#include "symmint/siegel.hpp"

using namespace symmint;

TEST_CASE("moments by the two routes agree") {
  for (double sigma : {0.01, 0.25, 1.0, 2.0})
    for (int j = 0; j <= 6; ++j) {
      const double a = siegel_moment(j, sigma).value;
      const double b = siegel_moment_u(j, sigma).value;
      CHECK(a == doctest::Approx(b).epsilon(1e-9));
    }
}

TEST_CASE("small-sigma limit of m_0") {
  // 2 int_0^inf e^{-l^2/(2 s^2)} sinh(2 l) dl ~ 2 * 2 s^2 for small s.
  const double s = 1e-3;
  CHECK(siegel_moment(0, s).value == doctest::Approx(4.0 * s * s).epsilon(1e-5));
}

TEST_CASE("sigma range") {
  CHECK_THROWS_AS(siegel_moment(0, 1e-4), Error);
  CHECK_THROWS_AS(siegel_moment(0, 20.0), Error);
  try {
    siegel_moment(40, 10.0);
    FAIL("expected overflow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::no_convergence);
  }
}

TEST_CASE("Z as a Hankel determinant matches the oracle") {
  for (double sigma : {0.25, 1.0}) {
    const SiegelZ z = siegel_Z(2, sigma);
    CHECK(z.moments.size() == 3);
    CHECK(z.value == doctest::Approx(z.moments[0] * z.moments[2] - z.moments[1] * z.moments[1]).epsilon(1e-12));
    CHECK(z.value == doctest::Approx(siegel_Z_oracle(2, sigma).value).epsilon(1e-6));
  }
  CHECK(siegel_Z(1, 0.5).value == doctest::Approx(siegel_moment(0, 0.5).value).epsilon(1e-14));
}

TEST_CASE("Christoffel-Darboux kernel of the Siegel measure") {
  for (int n : {1, 2, 3, 5}) {
    const CDKernel k = cd_kernel(siegel_measure(0.25), n);
    CHECK(k.degree() == n);
    CHECK(kernel_trace(k).value == doctest::Approx(n).epsilon(1e-8));
    CHECK(kernel_frobenius(k) == doctest::Approx(n).epsilon(1e-8));
    CHECK(k.recurrence_b().front() == doctest::Approx(siegel_moment(0, 0.25).value).epsilon(1e-10));
  }
  const CDKernel k = cd_kernel(siegel_measure(0.25), 3);
  const double u = 1.05;
  const double v = 1.2;
  CHECK(kernel_reproduce(k, u, v).value == doctest::Approx(k(u, v)).epsilon(1e-8));
  CHECK(k(u, v) == doctest::Approx(k(v, u)).epsilon(1e-14));
}

TEST_CASE("kernel determinant times z_2 is the squared Vandermonde") {
  const double sigma = 0.25;
  const CDKernel k = cd_kernel(siegel_measure(sigma), 3);
  const std::vector<double> pts{1.02, 1.1, 1.3};
  double v = 1.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) v *= pts[j] - pts[i];
  const double z = siegel_Z(3, sigma).value;
  CHECK(kernel_determinant(k, pts) * z == doctest::Approx(v * v).epsilon(1e-8));
  // coincident points make the kernel matrix singular
  CHECK(std::abs(kernel_determinant(k, {1.1, 1.1, 1.3})) < 1e-6 * std::abs(kernel_determinant(k, pts)));
}

TEST_CASE("kernel of a measure with too few support points") {
  CHECK_THROWS_AS(cd_kernel(measures::uniform(1.0, 1.0 + 1e-14), 2), Error);
}

TEST_CASE("kernel on a classical measure") {
  // Legendre on (-1, 1): K_1 = 1/2, and K_2(u,u) = 1/2 + 3 u^2 / 2.
  const CDKernel k = cd_kernel(measures::lebesgue(-1.0, 1.0), 2);
  CHECK(k(0.3, 0.3) == doctest::Approx(0.5 + 1.5 * 0.09).epsilon(1e-12));
  CHECK(k.recurrence_a()[0] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("kernel integrals survive overflowing polynomial tails") {
  // phi_k(u)^2 overflows far out while the density underflows.
  for (int n : {5, 8}) {
    const CDKernel k = cd_kernel(siegel_measure(1.0), n);
    CHECK(kernel_trace(k).value == doctest::Approx(n).epsilon(1e-10));
  }
  const CDKernel k = cd_kernel(siegel_measure(2.0), 5);
  CHECK(kernel_trace(k).value == doctest::Approx(5.0).epsilon(1e-10));
}

TEST_CASE("overflowing moments are reported as such") {
  try {
    siegel_moment(6, 3.0);
    FAIL("expected NoConvergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::no_convergence);
    CHECK(std::string(e.what()).find("overflows a double") != std::string::npos);
  }
  CHECK_NOTHROW(siegel_moment(5, 3.0));
}
