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

#include "symmint/error.hpp"
#include "symmint/spaces.hpp"

using namespace symmint;

namespace {

SpaceSpec grass(SpaceFamily f, int beta, int p, int q) {
  SpaceSpec s;
  s.family = f;
  s.beta = beta_from_int(beta);
  s.p = p;
  s.q = q;
  return s;
}

SpaceSpec ranked(SpaceFamily f, int beta, int n) {
  SpaceSpec s;
  s.family = f;
  s.beta = beta_from_int(beta);
  s.n = n;
  return s;
}

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::invalid_argument;
}

}  // namespace

TEST_CASE("family names round-trip") {
  for (auto f : {SpaceFamily::cone, SpaceFamily::cone_dual, SpaceFamily::grassmann,
                 SpaceFamily::grassmann_dual, SpaceFamily::classical_domain})
    CHECK(space_family_from_string(to_string(f)) == f);
  CHECK(code_of([] { space_family_from_string("sphere"); }) == ErrorCode::invalid_argument);
}

TEST_CASE("space invariants") {
  CHECK(code_of([] { grass(SpaceFamily::grassmann, 2, 3, 2).validate(); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { ranked(SpaceFamily::cone, 2, 0).validate(); }) == ErrorCode::invalid_argument);
  CHECK(grass(SpaceFamily::grassmann_dual, 1, 2, 3).points() == 2);
  CHECK(ranked(SpaceFamily::classical_domain, 2, 3).points() == 3);
}

TEST_CASE("cone with a gamma weight reduces to Laguerre") {
  // w(u) = u^{N_beta} e^{-u} cancels the invariant factor u^{-N_beta}.
  const SpaceSpec cone = ranked(SpaceFamily::cone, 2, 3);
  const InvariantResult r = integrate_invariant(cone, weights::gamma(3.0, 1.0));
  CHECK(r.points == 3);
  CHECK(r.z.value == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(r.constant_excluded);
}

TEST_CASE("compact dual of the cone is the circular ensemble") {
  const InvariantResult r = integrate_invariant(ranked(SpaceFamily::cone_dual, 2, 4), weights::one());
  CHECK(r.z.value == doctest::Approx(1.0).epsilon(1e-10));
  const InvariantResult b1 = integrate_invariant(ranked(SpaceFamily::cone_dual, 1, 2), weights::one());
  CHECK(b1.z.value == doctest::Approx(2.0 / 3.14159265358979323846).epsilon(1e-10));
}

TEST_CASE("non-integrable weights are rejected") {
  CHECK(code_of([] { reduce(ranked(SpaceFamily::cone, 2, 3), weights::one()); }) ==
        ErrorCode::non_integrable_weight);
  // sinh^2(tau) sinh(2 tau) grows like e^{4 tau}, exactly cancelled by sech^4.
  CHECK(code_of([] { reduce(grass(SpaceFamily::grassmann, 2, 1, 2), weights::sech(4.0)); }) ==
        ErrorCode::non_integrable_weight);
  ReduceOptions lax;
  lax.check_mass = false;
  CHECK_NOTHROW(reduce(ranked(SpaceFamily::cone, 2, 3), weights::one(), lax));
}

TEST_CASE("noncompact Grassmann with sech^5 weight") {
  // p = 1: int_0^inf sech^5(t) sinh^2(t) sinh(2t) dt = 4/3.
  const InvariantResult r =
      integrate_invariant(grass(SpaceFamily::grassmann, 2, 1, 2), weights::sech(5.0));
  CHECK(r.z.value == doctest::Approx(4.0 / 3.0).epsilon(1e-8));
}

TEST_CASE("reduced value equals the original-chart integral") {
  const struct {
    SpaceSpec space;
    WeightSpec w;
  } cases[] = {
      {grass(SpaceFamily::grassmann, 2, 1, 2), weights::gaussian(1.0)},
      {grass(SpaceFamily::grassmann_dual, 1, 1, 2), weights::one()},
      {grass(SpaceFamily::grassmann_dual, 2, 2, 3), weights::exponential(1.0)},
      {ranked(SpaceFamily::classical_domain, 2, 2), weights::gaussian(1.0)},
  };
  for (const auto& c : cases) {
    const double z = integrate_invariant(c.space, c.w).z.value;
    const double o = original_chart_integral(c.space, c.w).value;
    CHECK(z == doctest::Approx(o).epsilon(1e-6));
  }
  CHECK(code_of([] { original_chart_integral(ranked(SpaceFamily::cone, 2, 2), weights::one()); }) ==
        ErrorCode::invalid_argument);
}

TEST_CASE("chart constants") {
  CHECK(chart_constant(grass(SpaceFamily::grassmann, 1, 1, 2)) == 1.0);
  CHECK(chart_constant(ranked(SpaceFamily::classical_domain, 2, 3)) == 8.0);
}

TEST_CASE("eigenvalue and native charts agree") {
  const SpaceSpec s = grass(SpaceFamily::grassmann_dual, 2, 1, 2);
  WeightSpec native = weights::one();
  WeightSpec in_u = weights::one();
  in_u.chart = WeightChart::eigenvalue;
  CHECK(integrate_invariant(s, native).z.value ==
        doctest::Approx(integrate_invariant(s, in_u).z.value).epsilon(1e-12));
}

TEST_CASE("expectation ratio") {
  const SpaceSpec s = ranked(SpaceFamily::cone, 2, 2);
  // Laguerre ensembles: z = prod_j j! Gamma(j + alpha + 1), so alpha = 1 over alpha = 0 gives 2.
  const Estimate<double> r = expectation_ratio(s, weights::gamma(3.0, 1.0), weights::gamma(2.0, 1.0));
  const double num = integrate_invariant(s, weights::gamma(3.0, 1.0)).z.value;
  const double den = integrate_invariant(s, weights::gamma(2.0, 1.0)).z.value;
  CHECK(r.value == doctest::Approx(num / den).epsilon(1e-12));
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(r.abs_error >= 0.0);
}

TEST_CASE("root multiplicities") {
  const auto r = root_multiplicities(grass(SpaceFamily::grassmann, 2, 1, 2));
  REQUIRE(!r.empty());
  double total = 0.0;
  for (const auto& m : r) total += m.multiplicity;
  CHECK(total > 0.0);
  CHECK(root_multiplicities(ranked(SpaceFamily::cone, 4, 2)).front().multiplicity == 4.0);
}
