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

#include <benchmark/benchmark.h>

#include "symmint/oracle.hpp"
#include "symmint/siegel.hpp"
#include "symmint/zbeta.hpp"

namespace {

void BM_ZbetaLine(benchmark::State& state) {
  const symmint::ZRequest req{symmint::measures::exponential(1.0), symmint::beta_from_int(static_cast<int>(state.range(0))),
                              static_cast<int>(state.range(1)), false};
  for (auto _ : state) benchmark::DoNotOptimize(symmint::zbeta(req).value);
}

void BM_ZbetaCircle(benchmark::State& state) {
  const symmint::ZRequest req{symmint::measures::circle_cosine(0.5),
                              symmint::beta_from_int(static_cast<int>(state.range(0))),
                              static_cast<int>(state.range(1)), false};
  for (auto _ : state) benchmark::DoNotOptimize(symmint::zbeta(req).value);
}

void BM_ZbetaStabilized(benchmark::State& state) {
  const symmint::ZRequest req{symmint::measures::uniform(0.0, 1.0), symmint::Beta::two,
                              static_cast<int>(state.range(0)), true};
  for (auto _ : state) benchmark::DoNotOptimize(symmint::zbeta(req).value);
}

void BM_TensorOracle(benchmark::State& state) {
  const symmint::OracleRequest req{symmint::measures::uniform(0.0, 1.0),
                                   symmint::beta_from_int(static_cast<int>(state.range(0))),
                                   static_cast<int>(state.range(1))};
  for (auto _ : state) benchmark::DoNotOptimize(symmint::zbeta_bruteforce(req).value);
}

void BM_SiegelZ(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(symmint::siegel_Z(static_cast<int>(state.range(0)), 0.25).value);
}

}  // namespace

BENCHMARK(BM_ZbetaLine)->ArgsProduct({{1, 2, 4}, {2, 4, 8}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ZbetaCircle)->ArgsProduct({{1, 2, 4}, {2, 4, 8}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ZbetaStabilized)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TensorOracle)->ArgsProduct({{1, 2, 4}, {2, 3}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SiegelZ)->Arg(2)->Arg(5)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
