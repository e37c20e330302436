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
#include "symmint/oracle.hpp"

using namespace symmint;

namespace {

Estimate<double> tensor(const Measure& mu, int beta, int n, unsigned threads = 1) {
  OracleOptions o;
  o.threads = threads;
  return zbeta_bruteforce(OracleRequest{mu, beta_from_int(beta), n}, o);
}

Estimate<double> mc(const Measure& mu, int beta, int n, std::uint64_t seed, std::size_t samples,
                    unsigned threads = 1) {
  OracleOptions o;
  o.threads = threads;
  return zbeta_bruteforce(
      OracleRequest{mu, beta_from_int(beta), n, OracleMethod::monte_carlo, {samples, seed}}, o);
}

}  // namespace

TEST_CASE("N = 1 gives the mass") {
  for (int beta : {1, 2, 4}) {
    CHECK(tensor(measures::uniform(0.0, 1.0), beta, 1).value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tensor(measures::circle_uniform(), beta, 1).value == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("closed forms by tensor quadrature") {
  CHECK(tensor(measures::uniform(0.0, 1.0), 2, 2).value == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
  CHECK(tensor(measures::uniform(0.0, 1.0), 1, 2).value == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(tensor(measures::circle_uniform(), 1, 2).value ==
        doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-12));
  CHECK(tensor(measures::circle_uniform(), 4, 2).value == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("tensor budget") {
  try {
    tensor(measures::uniform(0.0, 1.0), 4, 4);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::budget_exceeded);
  }
  try {
    tensor(measures::uniform(0.0, 1.0), 2, 5);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::budget_exceeded);
  }
}

TEST_CASE("tensor result does not depend on the thread count") {
  const Measure mu = measures::lebesgue(0.0, 1.0).times_power(1.0);
  CHECK(tensor(mu, 2, 3, 1).value == tensor(mu, 2, 3, 4).value);
}

TEST_CASE("chamber integrand is symmetric in its orientation") {
  // Reversing the parameter (s -> lo + hi - s) permutes the axes of the cube.
  const Measure mu = measures::lebesgue(0.0, 1.0).times_power(2.0);
  const Parametrization p = mu.parametrization();
  ChamberIntegrand fwd{p.lo, p.hi, p.point, p.log_density, false};
  ChamberIntegrand rev{p.lo, p.hi, [p](double s) { return p.point(p.lo + p.hi - s); },
                       [p](double s) { return p.log_density(p.lo + p.hi - s); }, false};
  const double a = chamber_integral(fwd, 3, 2).value;
  const double b = chamber_integral(rev, 3, 2).value;
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("Monte Carlo agrees with tensor quadrature within 3 sigma") {
  const Measure cases[] = {measures::uniform(0.0, 1.0), measures::circle_uniform(),
                           measures::exponential(1.0)};
  for (const Measure& mu : cases) {
    const auto t = tensor(mu, 2, 2);
    const auto m = mc(mu, 2, 2, 42, 200'000);
    CHECK(std::abs(t.value - m.value) <= m.abs_error + 3.0 * t.abs_error);
  }
  const auto c = mc(measures::circle_uniform(), 1, 2, 42, 1'000'000);
  CHECK(std::abs(c.value - 2.0 / std::numbers::pi) <= c.abs_error);
}

TEST_CASE("Monte Carlo is reproducible for a seed, independent of threads") {
  const Measure mu = measures::uniform(0.0, 1.0);
  const auto a = mc(mu, 1, 3, 7, 50'000, 1);
  const auto b = mc(mu, 1, 3, 7, 50'000, 1);
  const auto c = mc(mu, 1, 3, 7, 50'000, 3);
  CHECK(a.value == b.value);
  CHECK(a.abs_error == b.abs_error);
  CHECK(a.value == c.value);
  CHECK(mc(mu, 1, 3, 8, 50'000).value != a.value);
}

TEST_CASE("inverse-CDF sampler") {
  const InverseCdfSampler s(measures::exponential(2.0));
  CHECK(s.total_mass() == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(s.sample(0.5) == doctest::Approx(std::log(2.0) / 2.0).epsilon(1e-4));
  const InverseCdfSampler u(measures::uniform(1.0, 3.0));
  CHECK(u.sample(0.25) == doctest::Approx(1.5).epsilon(1e-6));
  CHECK(InverseCdfSampler::kTableIntervals == 2048);
}
