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
 * @file linalg.hpp
 * @brief Dense determinant and Pfaffian kernels.
 *
 * Moment matrices are Hankel-like and badly conditioned, so both kernels
 * pivot: partial pivoting for the LU-based determinant and full pivoting in
 * the Parlett-Reid skew tridiagonalization behind the Pfaffian. The kernels
 * are instantiated for double, long double and their complex counterparts;
 * long double is the extended-precision path.
 */

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

namespace symmint {

enum class SymmetryTag { general, skew };

/// Relative tolerance for the skew-symmetry check, measured against max |entry|.
inline constexpr double kSkewTolerance = 1e-12;

/// Row-major dense square matrix.
template <typename T>
class SquareMatrix {
 public:
  using value_type = T;

  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, SymmetryTag tag = SymmetryTag::general)
      : n_(n), tag_(tag), entries_(n * n, T{}) {}
  SquareMatrix(std::initializer_list<std::initializer_list<T>> rows,
               SymmetryTag tag = SymmetryTag::general);

  std::size_t size() const noexcept { return n_; }
  SymmetryTag tag() const noexcept { return tag_; }
  void set_tag(SymmetryTag tag) noexcept { tag_ = tag; }

  T& operator()(std::size_t row, std::size_t col) { return entries_[row * n_ + col]; }
  const T& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * n_ + col];
  }

  /// Sets (row, col) to value and (col, row) to -value.
  void set_skew(std::size_t row, std::size_t col, const T& value) {
    (*this)(row, col) = value;
    (*this)(col, row) = -value;
  }

  double max_abs() const;

  /// True when |A(k,l) + A(l,k)| <= kSkewTolerance * max|A| for all k, l.
  bool is_skew() const;

  template <typename U>
  SquareMatrix<U> cast() const {
    SquareMatrix<U> out(n_, tag_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out(i, j) = static_cast<U>((*this)(i, j));
    return out;
  }

 private:
  std::size_t n_ = 0;
  SymmetryTag tag_ = SymmetryTag::general;
  std::vector<T> entries_;
};

/// Determinant by LU with partial pivoting. det of the 0x0 matrix is 1;
/// singular matrices give 0.
template <typename T>
T det(const SquareMatrix<T>& m);

/// Pfaffian by pivoted skew-symmetric tridiagonalization.
/// Throws Error(odd_dimension) for odd n and Error(not_skew) when the matrix
/// is not tagged skew or fails the skew check.
template <typename T>
T pfaffian(const SquareMatrix<T>& m);

/// Inverse by Gauss-Jordan with partial pivoting; nullopt when singular.
template <typename T>
std::optional<SquareMatrix<T>> inverse(const SquareMatrix<T>& m);

template <typename T>
SquareMatrix<T> multiply(const SquareMatrix<T>& a, const SquareMatrix<T>& b);

template <typename T>
SquareMatrix<T> transpose(const SquareMatrix<T>& m);

using RealMatrix = SquareMatrix<double>;
using ComplexMatrix = SquareMatrix<std::complex<double>>;

}  // namespace symmint
