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

#include <stdexcept>
#include <string>
#include <string_view>

namespace symmint {

enum class ErrorCode {
  invalid_argument,
  odd_dimension,
  not_skew,
  no_convergence,
  degenerate_measure,
  imag_residual_too_large,
  budget_exceeded,
  non_samplable,
  non_integrable_weight,
  division_by_zero_mass,
};

/// Stable identifier used in JSON error objects, e.g. "NoConvergence".
std::string_view error_code_name(ErrorCode code) noexcept;

/// All numerical and contract failures raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace symmint
