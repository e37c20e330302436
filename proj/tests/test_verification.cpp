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

#include <string>

#include "symmint/error.hpp"
#include "symmint/verification.hpp"

using namespace symmint;

TEST_CASE("suite names") {
  const auto& names = suite_names();
  CHECK(names == std::vector<std::string>{"identities", "spaces", "siegel", "all"});
  CHECK_THROWS_AS(run_suite("nonsense"), Error);
}

TEST_CASE("spaces and siegel suites pass") {
  for (const char* suite : {"spaces", "siegel"}) {
    const auto results = run_suite(suite);
    CHECK(!results.empty());
    CHECK(all_passed(results));
    for (const auto& r : results) {
      CHECK(r.suite == suite);
      if (!r.pass) MESSAGE(r.name << ": " << r.note);
    }
  }
}

TEST_CASE("reports are deterministic") {
  const auto a = format_table(run_suite("siegel"));
  const auto b = format_table(run_suite("siegel"));
  CHECK(a == b);
  CHECK(a.find("passed, 0 failed") != std::string::npos);
}

TEST_CASE("a failed check is reported, not thrown") {
  std::vector<CheckResult> r(2);
  r[0].pass = true;
  r[1].pass = false;
  r[1].suite = "x";
  r[1].name = "broken";
  r[1].note = "NoConvergence: test";
  CHECK_FALSE(all_passed(r));
  const std::string table = format_table(r);
  CHECK(table.find("FAIL") != std::string::npos);
  CHECK(table.find("1 passed, 1 failed") != std::string::npos);
}

TEST_CASE("a tight oracle tolerance is honoured") {
  VerifyOptions strict;
  strict.oracle_tol = 1e-30;
  CHECK_FALSE(all_passed(run_suite("siegel", strict)));
}
