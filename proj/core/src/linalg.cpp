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

#include "symmint/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "symmint/error.hpp"

namespace symmint {

namespace {

template <typename T>
double magnitude(const T& x) {
  return static_cast<double>(std::abs(x));
}

template <typename T>
void swap_rows(SquareMatrix<T>& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.size(); ++j) std::swap(m(a, j), m(b, j));
}

template <typename T>
void swap_cols(SquareMatrix<T>& m, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < m.size(); ++i) std::swap(m(i, a), m(i, b));
}

}  // namespace

template <typename T>
SquareMatrix<T>::SquareMatrix(std::initializer_list<std::initializer_list<T>> rows,
                              SymmetryTag tag)
    : n_(rows.size()), tag_(tag), entries_() {
  entries_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_)
      throw Error(ErrorCode::invalid_argument, "SquareMatrix: ragged initializer");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

template <typename T>
double SquareMatrix<T>::max_abs() const {
  double out = 0.0;
  for (const auto& x : entries_) out = std::max(out, magnitude(x));
  return out;
}

template <typename T>
bool SquareMatrix<T>::is_skew() const {
  const double scale = max_abs();
  const double tol = kSkewTolerance * scale;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i; j < n_; ++j) {
      if (magnitude((*this)(i, j) + (*this)(j, i)) > tol) return false;
    }
  }
  return true;
}

template <typename T>
T det(const SquareMatrix<T>& m) {
  const std::size_t n = m.size();
  if (n == 0) return T{1};
  if (n == 1) return m(0, 0);

  SquareMatrix<T> a = m;
  T result{1};
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = magnitude(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = magnitude(a(i, k));
      if (v > best) {
        best = v;
        pivot = i;
      }
    }
    if (best == 0.0) return T{0};
    if (pivot != k) {
      swap_rows(a, pivot, k);
      result = -result;
    }
    const T diag = a(k, k);
    result *= diag;
    for (std::size_t i = k + 1; i < n; ++i) {
      const T factor = a(i, k) / diag;
      if (factor == T{0}) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= factor * a(k, j);
    }
  }
  return result;
}

template <typename T>
T pfaffian(const SquareMatrix<T>& m) {
  const std::size_t n = m.size();
  if (n % 2 == 1) throw Error(ErrorCode::odd_dimension, "pfaffian: odd dimension");
  if (m.tag() != SymmetryTag::skew || !m.is_skew())
    throw Error(ErrorCode::not_skew, "pfaffian: matrix is not skew-symmetric");
  if (n == 0) return T{1};

  SquareMatrix<T> a = m;
  T result{1};
  for (std::size_t k = 0; k + 1 < n; k += 2) {
    // Full pivot: the largest |a(r, c)|, r < c, in the trailing block.
    std::size_t pr = k;
    std::size_t pc = k + 1;
    double best = -1.0;
    for (std::size_t r = k; r < n; ++r) {
      for (std::size_t c = r + 1; c < n; ++c) {
        const double v = magnitude(a(r, c));
        if (v > best) {
          best = v;
          pr = r;
          pc = c;
        }
      }
    }
    if (best == 0.0) return T{0};

    // Each symmetric transposition of two distinct indices flips the sign.
    if (pr != k) {
      swap_rows(a, pr, k);
      swap_cols(a, pr, k);
      result = -result;
      if (pc == k) pc = pr;
    }
    if (pc != k + 1) {
      swap_rows(a, pc, k + 1);
      swap_cols(a, pc, k + 1);
      result = -result;
    }

    const T pivot = a(k, k + 1);
    result *= pivot;

    // Congruence by a unit-triangular matrix clears rows/cols k, k+1:
    // B(i,j) += (x_j y_i - x_i y_j) / pivot with x = a(k,.), y = a(k+1,.).
    for (std::size_t i = k + 2; i < n; ++i) {
      const T xi = a(k, i) / pivot;
      const T yi = a(k + 1, i);
      for (std::size_t j = k + 2; j < n; ++j) {
        const T xj = a(k, j) / pivot;
        a(i, j) += xj * yi - xi * a(k + 1, j);
      }
    }
  }
  return result;
}

template <typename T>
std::optional<SquareMatrix<T>> inverse(const SquareMatrix<T>& m) {
  const std::size_t n = m.size();
  SquareMatrix<T> a = m;
  SquareMatrix<T> inv(n);
  for (std::size_t i = 0; i < n; ++i) inv(i, i) = T{1};

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = magnitude(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = magnitude(a(i, k));
      if (v > best) {
        best = v;
        pivot = i;
      }
    }
    if (best == 0.0) return std::nullopt;
    swap_rows(a, pivot, k);
    swap_rows(inv, pivot, k);
    const T diag = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= diag;
      inv(k, j) /= diag;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const T factor = a(i, k);
      if (factor == T{0}) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= factor * a(k, j);
        inv(i, j) -= factor * inv(k, j);
      }
    }
  }
  return inv;
}

template <typename T>
SquareMatrix<T> multiply(const SquareMatrix<T>& a, const SquareMatrix<T>& b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::invalid_argument, "multiply: dimension mismatch");
  const std::size_t n = a.size();
  SquareMatrix<T> out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const T aik = a(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

template <typename T>
SquareMatrix<T> transpose(const SquareMatrix<T>& m) {
  SquareMatrix<T> out(m.size(), m.tag());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out(j, i) = m(i, j);
  return out;
}

#define SYMMINT_INSTANTIATE_LINALG(T)                                                \
  template class SquareMatrix<T>;                                                    \
  template T det<T>(const SquareMatrix<T>&);                                         \
  template T pfaffian<T>(const SquareMatrix<T>&);                                    \
  template std::optional<SquareMatrix<T>> inverse<T>(const SquareMatrix<T>&);        \
  template SquareMatrix<T> multiply<T>(const SquareMatrix<T>&, const SquareMatrix<T>&); \
  template SquareMatrix<T> transpose<T>(const SquareMatrix<T>&);

SYMMINT_INSTANTIATE_LINALG(double)
SYMMINT_INSTANTIATE_LINALG(long double)
SYMMINT_INSTANTIATE_LINALG(std::complex<double>)
SYMMINT_INSTANTIATE_LINALG(std::complex<long double>)

#undef SYMMINT_INSTANTIATE_LINALG

}  // namespace symmint
