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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = symmint::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace

TEST_CASE("zbeta on the Hilbert example") {
  const Run r = run({"zbeta", "--beta", "2", "--n", "3", "--measure", "uniform:a=0,b=1"});
  REQUIRE(r.code == symmint::cli::kExitOk);
  const json j = json::parse(r.out);
  CHECK(j["value"].get<double>() == doctest::Approx(1.0 / 2160.0).epsilon(1e-10));
  for (const char* key : {"value", "err_estimate", "imag_residual", "method", "config_echo"})
    CHECK(j.contains(key));
  CHECK(j["imag_residual"].is_null());
  CHECK(j["config_echo"]["measure"] == "uniform:a=0,b=1");
}

TEST_CASE("zbeta on the circle reports the imaginary residual") {
  const Run r = run({"zbeta", "--beta", "1", "--n", "2", "--measure", "circle-uniform", "--circle"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["value"].get<double>() == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-10));
  CHECK(j["imag_residual"].is_number());
  const Run bad = run({"zbeta", "--beta", "1", "--n", "2", "--measure", "uniform", "--circle"});
  CHECK(bad.code == symmint::cli::kExitUsage);
}

TEST_CASE("oracle with Monte Carlo") {
  const Run r = run({"oracle", "--beta", "1", "--n", "2", "--measure", "circle-uniform", "--method", "mc",
                     "--samples", "200000", "--seed", "42"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  const double v = j["value"].get<double>();
  const double e = j["err_estimate"].get<double>();
  CHECK(std::abs(v - 2.0 / std::numbers::pi) <= 3.0 * e);
  const Run again = run({"oracle", "--beta", "1", "--n", "2", "--measure", "circle-uniform", "--method",
                         "mc", "--samples", "200000", "--seed", "42"});
  CHECK(again.out == r.out);
}

TEST_CASE("usage errors exit with 2") {
  const std::vector<std::vector<std::string>> cases = {
      {},
      {"frobnicate"},
      {"zbeta", "--beta", "2", "--n", "3"},
      {"zbeta", "--beta", "3", "--n", "3", "--measure", "uniform"},
      {"zbeta", "--beta", "2", "--n", "3", "--measure", "uniform:a=q"},
      {"oracle", "--beta", "1", "--n", "2", "--measure", "uniform", "--method", "mc"},
      {"space", "--space", "sphere", "--beta", "2", "--n", "2", "--weight", "one"},
      {"verify", "--suite", "everything"},
  };
  for (const auto& args : cases) {
    const Run r = run(args);
    CHECK(r.code == symmint::cli::kExitUsage);
    CHECK(!r.err.empty());
  }
}

TEST_CASE("numerical errors are JSON objects with exit 1") {
  const Run r = run({"space", "--space", "cone", "--beta", "2", "--n", "3", "--weight", "one"});
  CHECK(r.code == symmint::cli::kExitFailure);
  const json j = json::parse(r.out);
  CHECK(j["error"]["code"] == "NonIntegrableWeight");
  const Run b = run({"oracle", "--beta", "4", "--n", "4", "--measure", "uniform"});
  CHECK(b.code == 1);
  CHECK(json::parse(b.out)["error"]["code"] == "BudgetExceeded");
}

TEST_CASE("space and ratio") {
  const Run r = run({"space", "--space", "cone", "--beta", "2", "--n", "2", "--weight", "gamma:shape=3",
                     "--ratio", "gamma:shape=2"});
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["value"].get<double>() == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("siegel with kernel diagnostics") {
  const Run r = run({"siegel", "--n", "2", "--sigma", "1", "--kernel"});
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["value"].get<double>() == doctest::Approx(7.1346372625e8).epsilon(1e-9));
  CHECK(j["moments"].size() == 3);
  CHECK(j["kernel"]["trace"].get<double>() == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("CSV output") {
  const Run r = run({"zbeta", "--beta", "2", "--n", "2", "--measure", "uniform", "--format", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::string row;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(header.find("value") != std::string::npos);
  CHECK(header.find("config_echo.measure") != std::string::npos);
  CHECK(row.find("0.08333333") != std::string::npos);
}

TEST_CASE("--out writes the report to a file") {
  const auto path = std::filesystem::temp_directory_path() / "symmint_cli_test.json";
  std::filesystem::remove(path);
  const Run r = run({"zbeta", "--beta", "4", "--n", "2", "--measure", "uniform", "--out", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  CHECK(json::parse(text)["value"].get<double>() == doctest::Approx(1.0 / 30.0).epsilon(1e-10));
  std::filesystem::remove(path);
}

TEST_CASE("tensor results are byte-identical") {
  const std::vector<std::string> args{"oracle", "--beta", "2", "--n", "3", "--measure", "exp:rate=1",
                                      "--method", "tensor", "--threads", "1"};
  const Run a = run(args);
  const Run b = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(json::parse(a.out)["value"].get<double>() == doctest::Approx(4.0).epsilon(1e-8));
}

TEST_CASE("verify exits 0 when the suite passes and 1 when it fails") {
  CHECK(run({"verify", "--suite", "siegel", "--threads", "1"}).code == 0);
  const Run strict = run({"verify", "--suite", "siegel", "--tol", "1e-30"});
  CHECK(strict.code == symmint::cli::kExitFailure);
  CHECK(strict.out.find("FAIL") != std::string::npos);
}
