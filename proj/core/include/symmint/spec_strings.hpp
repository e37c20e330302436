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
 * @file spec_strings.hpp
 * @brief Flat text grammar for measures and weights used by the CLI.
 *
 *   measure := family [":" args] { "+" modifier [":" args] }
 *   args    := arg { "," arg },  arg := [key "="] number
 *
 * Unnamed arguments fill the parameters in their listed order. A '+' starts a
 * modifier only when a letter follows, so exponents such as 1e+3 are kept.
 *
 * Measure families            parameters (defaults)
 *   uniform                   a (0), b (1)
 *   lebesgue                  a (0), b (1)
 *   exp                       rate (1), a (0)
 *   laguerre                  alpha (0)
 *   jacobi                    alpha (0), beta (0)
 *   circle-uniform
 *   circle-cos                a (0.5)
 *   siegel                    sigma (1)
 *   cone-weight               beta (2), n (1), shape (N_beta), rate (1)
 *
 * cone-weight is the cone reduction of the gamma weight u^shape exp(-rate u),
 * that is u^(shape - N_beta) exp(-rate u) du with N_beta = beta (n - 1) / 2 + 1.
 *
 * Modifiers: pow:k, powlog:k,l (u^k |log u|^l, support in u > 0), scale:c,
 * shift:s, dilate:s.
 *
 * Weights: one, exp:rate, gauss:sigma, sech:power, gamma:shape,rate, trig:a,
 * pow:k, each with an optional chart=native|u|boost|angle|circle argument.
 */

#include <string>

#include "symmint/measure.hpp"
#include "symmint/spaces.hpp"

namespace symmint {

/// Throws Error(invalid_argument) on a malformed or unknown specification.
Measure parse_measure(const std::string& spec);

/// Throws Error(invalid_argument) on a malformed or unknown specification.
WeightSpec parse_weight(const std::string& spec);

}  // namespace symmint
