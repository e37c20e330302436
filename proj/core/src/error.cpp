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

#include "symmint/error.hpp"

namespace symmint {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::odd_dimension: return "OddDimension";
    case ErrorCode::not_skew: return "NotSkew";
    case ErrorCode::no_convergence: return "NoConvergence";
    case ErrorCode::degenerate_measure: return "DegenerateMeasure";
    case ErrorCode::imag_residual_too_large: return "ImagResidualTooLarge";
    case ErrorCode::budget_exceeded: return "BudgetExceeded";
    case ErrorCode::non_samplable: return "NonSamplable";
    case ErrorCode::non_integrable_weight: return "NonIntegrableWeight";
    case ErrorCode::division_by_zero_mass: return "DivisionByZeroMass";
  }
  return "Unknown";
}

}  // namespace symmint
