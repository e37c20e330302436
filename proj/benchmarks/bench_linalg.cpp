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

#include <complex>
#include <random>
#include <type_traits>

#include "symmint/linalg.hpp"

namespace {

template <typename T>
symmint::SquareMatrix<T> random_skew(std::size_t n) {
  std::mt19937_64 rng(1234);
  std::normal_distribution<double> g;
  symmint::SquareMatrix<T> a(n, symmint::SymmetryTag::skew);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if constexpr (std::is_floating_point_v<T>) {
        a.set_skew(i, j, g(rng));
      } else {
        const double re = g(rng);
        a.set_skew(i, j, T(re, g(rng)));
      }
    }
  return a;
}

template <typename T>
void BM_Pfaffian(benchmark::State& state) {
  const auto a = random_skew<T>(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(symmint::pfaffian(a));
  state.SetComplexityN(state.range(0));
}

template <typename T>
void BM_Det(benchmark::State& state) {
  const auto a = random_skew<T>(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(symmint::det(a));
  state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(BM_Pfaffian<double>)->RangeMultiplier(2)->Range(4, 128)->Complexity(benchmark::oNCubed);
BENCHMARK(BM_Pfaffian<std::complex<double>>)->RangeMultiplier(2)->Range(4, 128)->Complexity(benchmark::oNCubed);
BENCHMARK(BM_Pfaffian<long double>)->RangeMultiplier(2)->Range(4, 64);
BENCHMARK(BM_Det<double>)->RangeMultiplier(2)->Range(4, 128)->Complexity(benchmark::oNCubed);
BENCHMARK(BM_Det<std::complex<double>>)->RangeMultiplier(2)->Range(4, 128);

BENCHMARK_MAIN();
