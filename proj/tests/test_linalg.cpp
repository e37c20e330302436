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

#include <complex>
#include <random>

#include "symmint/error.hpp"
#include "symmint/linalg.hpp"

using namespace symmint;

namespace {

template <typename T>
SquareMatrix<T> random_skew(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  SquareMatrix<T> a(n, SymmetryTag::skew);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if constexpr (std::is_same_v<T, std::complex<double>>)
        a.set_skew(i, j, T(d(rng), d(rng)));
      else
        a.set_skew(i, j, T(d(rng)));
    }
  return a;
}

}  // namespace

TEST_CASE("det of small matrices") {
  CHECK(det(RealMatrix{{2.0}}) == doctest::Approx(2.0));
  CHECK(det(RealMatrix{{1.0, 2.0}, {3.0, 4.0}}) == doctest::Approx(-2.0));
  CHECK(det(RealMatrix{{0.0, 1.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, 5.0}}) == doctest::Approx(-5.0));
  CHECK(det(RealMatrix{}) == 1.0);
  CHECK(det(RealMatrix{{1.0, 2.0}, {2.0, 4.0}}) == 0.0);
}

TEST_CASE("det of the Hilbert matrix") {
  RealMatrix h(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) h(i, j) = 1.0 / static_cast<double>(i + j + 1);
  CHECK(det(h) == doctest::Approx(1.0 / 2160.0).epsilon(1e-13));
}

TEST_CASE("pfaffian closed forms") {
  RealMatrix a2(2, SymmetryTag::skew);
  a2.set_skew(0, 1, 3.5);
  CHECK(pfaffian(a2) == doctest::Approx(3.5));

  RealMatrix a4(4, SymmetryTag::skew);
  const double v[6] = {1.0, 2.0, 3.0, 4.0, 5.0, 6.0};  // a01 a02 a03 a12 a13 a23
  a4.set_skew(0, 1, v[0]);
  a4.set_skew(0, 2, v[1]);
  a4.set_skew(0, 3, v[2]);
  a4.set_skew(1, 2, v[3]);
  a4.set_skew(1, 3, v[4]);
  a4.set_skew(2, 3, v[5]);
  CHECK(pfaffian(a4) == doctest::Approx(v[0] * v[5] - v[1] * v[4] + v[2] * v[3]));
  CHECK(pfaffian(RealMatrix(0, SymmetryTag::skew)) == 1.0);
}

TEST_CASE("pfaffian squared equals det on random skew matrices") {
  std::mt19937_64 rng(11);
  for (std::size_t n = 2; n <= 12; n += 2) {
    const auto a = random_skew<double>(n, rng);
    const double p = pfaffian(a);
    CHECK(std::abs(p * p - det(a)) <= 1e-10 * std::max(1.0, std::abs(det(a))));
    const auto c = random_skew<std::complex<double>>(n, rng);
    const auto pc = pfaffian(c);
    CHECK(std::abs(pc * pc - det(c)) <= 1e-10 * std::max(1.0, std::abs(det(c))));
  }
}

TEST_CASE("swapping two indices flips the pfaffian") {
  std::mt19937_64 rng(5);
  const auto a = random_skew<double>(8, rng);
  auto b = a;
  for (std::size_t k = 0; k < 8; ++k) std::swap(b(2, k), b(5, k));
  for (std::size_t k = 0; k < 8; ++k) std::swap(b(k, 2), b(k, 5));
  const double pa = pfaffian(a);
  const double pb = pfaffian(b);
  CHECK(std::signbit(pa) != std::signbit(pb));
  CHECK(-pb == doctest::Approx(pa).epsilon(1e-12));
}

TEST_CASE("extended precision kernels agree with double") {
  std::mt19937_64 rng(3);
  const auto a = random_skew<double>(6, rng);
  const auto al = a.cast<long double>();
  CHECK(static_cast<double>(pfaffian(al)) == doctest::Approx(pfaffian(a)).epsilon(1e-13));
  CHECK(static_cast<double>(det(al)) == doctest::Approx(det(a)).epsilon(1e-12));
}

TEST_CASE("pfaffian error paths") {
  RealMatrix odd(3, SymmetryTag::skew);
  CHECK_THROWS_AS(pfaffian(odd), Error);
  try {
    pfaffian(odd);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::odd_dimension);
  }
  RealMatrix bad{{0.0, 1.0}, {1.0, 0.0}};
  try {
    pfaffian(bad);
    FAIL("expected NotSkew");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_skew);
  }
}

TEST_CASE("skew tolerance is relative to the largest entry") {
  RealMatrix a{{0.0, 1e6}, {-1e6 + 1e-7, 0.0}};
  CHECK(a.is_skew());
  RealMatrix b{{0.0, 1.0}, {-1.0 + 1e-9, 0.0}};
  CHECK_FALSE(b.is_skew());
}

TEST_CASE("inverse and multiply") {
  RealMatrix a{{4.0, 7.0}, {2.0, 6.0}};
  const auto inv = inverse(a);
  REQUIRE(inv.has_value());
  const RealMatrix id = multiply(a, *inv);
  CHECK(id(0, 0) == doctest::Approx(1.0));
  CHECK(id(0, 1) == doctest::Approx(0.0));
  CHECK(id(1, 0) == doctest::Approx(0.0));
  CHECK(id(1, 1) == doctest::Approx(1.0));
  CHECK_FALSE(inverse(RealMatrix{{1.0, 2.0}, {2.0, 4.0}}).has_value());
  const RealMatrix t = transpose(a);
  CHECK(t(0, 1) == 2.0);
}
