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
 * @file verification.hpp
 * @brief Self-checks behind `symmint verify`: every identity and invariant
 * of the evaluation layers, compared with the brute-force oracle or with
 * closed forms. Seeds are fixed and reports are formatted
 * deterministically, so one thread gives byte-identical output.
 */

#include <string>
#include <vector>

namespace symmint {

struct CheckResult {
  std::string suite;
  std::string name;
  double value = 0.0;
  double reference = 0.0;
  double error = 0.0;      ///< discrepancy compared against tolerance
  double tolerance = 0.0;
  bool pass = false;
  std::string note;        ///< error message when the check threw
};

struct VerifyOptions {
  double oracle_tol = 1e-6;  ///< relative tolerance of the oracle comparisons
  unsigned threads = 1;
};

/// Suite names accepted by run_suite.
const std::vector<std::string>& suite_names();

/// "identities", "spaces", "siegel" or "all". Throws Error(invalid_argument)
/// for an unknown suite. Checks never throw; failures are recorded.
std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& opts = {});

/// Fixed-width text table, one line per check plus a summary line.
std::string format_table(const std::vector<CheckResult>& results);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace symmint
