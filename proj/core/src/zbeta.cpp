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

#include "symmint/zbeta.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <utility>

#include "symmint/error.hpp"
#include "symmint/parallel.hpp"

namespace symmint {

namespace {

struct EntryTask {
  std::size_t row;
  std::size_t col;
  std::function<Estimate<Complex>()> compute;
};

// Runs the tasks (possibly in parallel) and writes entries; skew tasks also
// fill the mirrored entry with the opposite sign.
template <typename T>
void fill_entries(std::vector<EntryTask>& tasks, bool skew, unsigned threads, SquareMatrix<T>& m,
                  SquareMatrix<double>& errors) {
  std::vector<Estimate<Complex>> results(tasks.size());
  parallel_for(tasks.size(), threads, [&](std::size_t i) { results[i] = tasks[i].compute(); });
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto& t = tasks[i];
    T v;
    if constexpr (std::is_same_v<T, double>) {
      v = results[i].value.real();
    } else {
      v = results[i].value;
    }
    m(t.row, t.col) = v;
    errors(t.row, t.col) = results[i].abs_error;
    if (skew) {
      m(t.col, t.row) = -v;
      errors(t.col, t.row) = results[i].abs_error;
    }
  }
}

// Entries of the (mu,1) matrix, bordered by (1, b_k)_2 for odd N. The sign
// kernels give skew pairings, so only the upper triangle is computed. The unit
// step does not: every entry is computed and the Pfaffian's skew check rejects
// the matrix instead of it being silently antisymmetrized.
std::vector<EntryTask> form1_tasks(const std::vector<BasisFunction>& b, const Measure& mu,
                                   const FormOptions& f) {
  const std::size_t n = b.size();
  const bool full = f.epsilon == EpsilonConvention::unit_step;
  std::vector<EntryTask> tasks;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = full ? 0 : k + 1; l < n; ++l)
      tasks.push_back({k, l, [&b, &mu, &f, k, l] { return form1(b[k], b[l], mu, f); }});
  if (n % 2 == 1) {
    for (std::size_t k = 0; k < n; ++k) {
      tasks.push_back({k, n, [&b, &mu, &f, k] { return form2(BasisFunction::monomial(0), b[k], mu, f); }});
      if (full)
        tasks.push_back({n, k, [&b, &mu, &f, k] {
                           auto e = form2(BasisFunction::monomial(0), b[k], mu, f);
                           e.value = -e.value;
                           return e;
                         }});
    }
  }
  return tasks;
}

// Moments computed once per exponent and shared by all entries.
class MomentTable {
 public:
  MomentTable(const Measure& mu, const Tolerance& tol) : mu_(mu), tol_(tol) {}

  void request(HalfInteger j) { values_.emplace(j.twice, Estimate<Complex>{}); }

  void compute(unsigned threads) {
    std::vector<int> keys;
    for (const auto& kv : values_) keys.push_back(kv.first);
    std::vector<Estimate<Complex>> out(keys.size());
    parallel_for(keys.size(), threads,
                 [&](std::size_t i) { out[i] = moment(mu_, HalfInteger{keys[i]}, tol_); });
    for (std::size_t i = 0; i < keys.size(); ++i) values_[keys[i]] = out[i];
  }

  const Estimate<Complex>& operator[](HalfInteger j) const { return values_.at(j.twice); }

 private:
  const Measure& mu_;
  Tolerance tol_;
  std::map<int, Estimate<Complex>> values_;
};

// First-order propagation of entry errors: d det = det tr(A^{-1} dA) and
// d pf = pf sum_{i<j} (A^{-1})_{ji} dA_{ij}.
template <typename T>
double propagate_error(const ZMatrix<T>& z, double value_abs) {
  const std::size_t n = z.matrix.size();
  double max_err = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) max_err = std::max(max_err, z.entry_errors(i, j));
  const auto inv = inverse(z.matrix);
  if (!inv) return max_err;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (z.pfaffian && j <= i) continue;
      sum += std::abs((*inv)(j, i)) * z.entry_errors(i, j);
    }
  }
  return value_abs * sum;
}

template <typename T>
T reduce_matrix(const ZMatrix<T>& z, Precision precision) {
  if (precision == Precision::extended) {
    using Wide = std::conditional_t<std::is_same_v<T, double>, long double, std::complex<long double>>;
    const auto wide = z.matrix.template cast<Wide>();
    const Wide v = z.pfaffian ? pfaffian(wide) : det(wide);
    return static_cast<T>(v);
  }
  return z.pfaffian ? pfaffian(z.matrix) : det(z.matrix);
}

void validate(const ZRequest& req) {
  if (req.n < 1) throw Error(ErrorCode::invalid_argument, "zbeta: N must be >= 1");
  const int b = to_int(req.beta);
  if (b != 1 && b != 2 && b != 4) throw Error(ErrorCode::invalid_argument, "zbeta: beta must be 1, 2 or 4");
}

// Multiplies by (-i)^q exactly, in quarter turns.
Complex quarter_turns(Complex z, long long q) {
  switch (((q % 4) + 4) % 4) {
    case 0: return z;
    case 1: return {z.imag(), -z.real()};   // * (-i)
    case 2: return -z;
    default: return {-z.imag(), z.real()};  // * i
  }
}

}  // namespace

Beta beta_from_int(int b) {
  switch (b) {
    case 1: return Beta::one;
    case 2: return Beta::two;
    case 4: return Beta::four;
    default: throw Error(ErrorCode::invalid_argument, "beta must be 1, 2 or 4");
  }
}

std::size_t zbeta_matrix_dim(Beta beta, int n) {
  const auto N = static_cast<std::size_t>(n);
  switch (beta) {
    case Beta::one: return N % 2 == 0 ? N : N + 1;
    case Beta::two: return N;
    case Beta::four: return 2 * N;
  }
  return N;
}

BasisFunction StabilizedBasis::function(std::size_t k) const {
  return BasisFunction::polynomial(coefficients.at(k));
}

StabilizedBasis stabilized_basis(const Measure& mu, int n, const Tolerance& tol) {
  if (mu.on_circle())
    throw Error(ErrorCode::invalid_argument, "stabilized_basis: real-line measures only");
  if (n < 1) throw Error(ErrorCode::invalid_argument, "stabilized_basis: n must be >= 1");

  StabilizedBasis out;
  const auto inner = [&](const std::vector<double>& a, const std::vector<double>& b) {
    const BasisFunction fa = BasisFunction::polynomial(a);
    const BasisFunction fb = BasisFunction::polynomial(b);
    return form2(fa, fb, mu, {tol}).value.real();
  };

  out.coefficients.push_back({1.0});
  out.squared_norms.push_back(inner({1.0}, {1.0}));
  if (!(out.squared_norms[0] > 0.0))
    throw Error(ErrorCode::degenerate_measure, "stabilized_basis: measure has zero mass");

  for (int k = 1; k < n; ++k) {
    // q = u * p_{k-1}
    std::vector<double> q(static_cast<std::size_t>(k) + 1, 0.0);
    const auto& prev = out.coefficients.back();
    for (std::size_t i = 0; i < prev.size(); ++i) q[i + 1] = prev[i];
    const double start_norm = inner(q, q);

    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < k; ++j) {
        const auto& pj = out.coefficients[static_cast<std::size_t>(j)];
        const double c = inner(q, pj) / out.squared_norms[static_cast<std::size_t>(j)];
        for (std::size_t i = 0; i < pj.size(); ++i) q[i] -= c * pj[i];
      }
    }
    q[static_cast<std::size_t>(k)] = 1.0;
    const double norm = inner(q, q);
    if (!(norm > 1e-13 * start_norm))
      throw Error(ErrorCode::degenerate_measure,
                  "stabilized_basis: Hankel moment matrix is numerically singular");
    out.coefficients.push_back(std::move(q));
    out.squared_norms.push_back(norm);
  }
  return out;
}

ZMatrix<double> build_line_matrix(const ZRequest& req, const EvalOptions& opts) {
  validate(req);
  if (req.mu.on_circle()) throw Error(ErrorCode::invalid_argument, "zbeta_line: measure is on the circle");

  const int n = req.n;
  const std::size_t dim = zbeta_matrix_dim(req.beta, n);
  const int basis_size = req.beta == Beta::four ? 2 * n : n;
  const FormOptions fopts{opts.tol, opts.epsilon};
  const Measure& mu = req.mu;

  std::vector<BasisFunction> basis;
  std::string basis_name = "monomial";
  if (req.stabilize) {
    const StabilizedBasis sb = stabilized_basis(mu, basis_size, opts.tol);
    for (std::size_t k = 0; k < sb.size(); ++k) basis.push_back(sb.function(k));
    basis_name = "stabilized";
  } else {
    for (int k = 0; k < basis_size; ++k) basis.push_back(BasisFunction::monomial(k));
  }

  ZMatrix<double> z{SquareMatrix<double>(dim), SquareMatrix<double>(dim), false, ""};
  std::vector<EntryTask> tasks;

  switch (req.beta) {
    case Beta::two: {
      if (req.stabilize) {
        for (std::size_t k = 0; k < dim; ++k)
          for (std::size_t l = 0; l < dim; ++l)
            tasks.push_back({k, l, [&, k, l] { return form2(basis[k], basis[l], mu, fopts); }});
        fill_entries(tasks, false, opts.threads, z.matrix, z.entry_errors);
        z.method = "det(form2, stabilized basis)";
      } else {
        MomentTable table(mu, opts.tol);
        for (int j = 0; j <= 2 * n - 2; ++j) table.request(HalfInteger::integer(j));
        table.compute(opts.threads);
        for (std::size_t k = 0; k < dim; ++k)
          for (std::size_t l = 0; l < dim; ++l) {
            const auto& m = table[HalfInteger::integer(static_cast<int>(k + l))];
            z.matrix(k, l) = m.value.real();
            z.entry_errors(k, l) = m.abs_error;
          }
        z.method = "det(hankel moments)";
      }
      break;
    }
    case Beta::one: {
      z.pfaffian = true;
      z.matrix.set_tag(SymmetryTag::skew);
      const auto N = static_cast<std::size_t>(n);
      tasks = form1_tasks(basis, mu, fopts);
      fill_entries(tasks, fopts.epsilon != EpsilonConvention::unit_step, opts.threads, z.matrix,
                   z.entry_errors);
      z.method = std::string("pf(form1") + (N % 2 == 1 ? ", bordered" : "") + ", " + basis_name + " basis)";
      break;
    }
    case Beta::four: {
      z.pfaffian = true;
      z.matrix.set_tag(SymmetryTag::skew);
      if (req.stabilize) {
        for (std::size_t k = 0; k < dim; ++k)
          for (std::size_t l = k + 1; l < dim; ++l)
            tasks.push_back({k, l, [&, k, l] { return form4_quadrature(basis[k], basis[l], mu, fopts); }});
        fill_entries(tasks, true, opts.threads, z.matrix, z.entry_errors);
        z.method = "pf(form4, stabilized basis)";
      } else {
        MomentTable table(mu, opts.tol);
        for (int j = 0; j <= 4 * n - 3; ++j) table.request(HalfInteger::integer(j));
        table.compute(opts.threads);
        for (std::size_t k = 0; k < dim; ++k)
          for (std::size_t l = k + 1; l < dim; ++l) {
            const auto& m = table[HalfInteger::integer(static_cast<int>(k + l) - 1)];
            const double factor = static_cast<double>(l) - static_cast<double>(k);
            z.matrix.set_skew(k, l, factor * m.value.real());
            z.entry_errors(k, l) = z.entry_errors(l, k) = factor * m.abs_error;
          }
        z.method = "pf((l-k) m_{k+l-1})";
      }
      break;
    }
  }
  return z;
}

ZMatrix<Complex> build_circle_matrix(const ZRequest& req, const EvalOptions& opts) {
  validate(req);
  if (!req.mu.on_circle()) throw Error(ErrorCode::invalid_argument, "zbeta_circle: measure is not on the circle");

  const int n = req.n;
  const std::size_t dim = zbeta_matrix_dim(req.beta, n);
  const FormOptions fopts{opts.tol, opts.epsilon};
  const Measure& mu = req.mu;

  ZMatrix<Complex> z{SquareMatrix<Complex>(dim), SquareMatrix<double>(dim), false, ""};

  switch (req.beta) {
    case Beta::two: {
      MomentTable table(mu, opts.tol);
      for (int j = -(n - 1); j <= n - 1; ++j) table.request(HalfInteger::integer(j));
      table.compute(opts.threads);
      for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t l = 0; l < dim; ++l) {
          const auto& c = table[HalfInteger::integer(static_cast<int>(k) - static_cast<int>(l))];
          z.matrix(k, l) = c.value;
          z.entry_errors(k, l) = c.abs_error;
        }
      z.method = "det(toeplitz c_{k-l})";
      break;
    }
    case Beta::one: {
      z.pfaffian = true;
      z.matrix.set_tag(SymmetryTag::skew);
      const auto N = static_cast<std::size_t>(n);
      std::vector<BasisFunction> g;
      for (int k = 0; k < n; ++k) g.push_back(BasisFunction::monomial(HalfInteger{2 * k - (n - 1)}));
      std::vector<EntryTask> tasks = form1_tasks(g, mu, fopts);
      fill_entries(tasks, fopts.epsilon != EpsilonConvention::unit_step, opts.threads, z.matrix,
                   z.entry_errors);
      z.method = std::string("(-i)^{N(N-1)/2} pf(form1") + (N % 2 == 1 ? ", bordered" : "") +
                 ", g_k = u^{k-(N-1)/2})";
      break;
    }
    case Beta::four: {
      z.pfaffian = true;
      z.matrix.set_tag(SymmetryTag::skew);
      MomentTable table(mu, opts.tol);
      const int shift = n - 1;
      for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t l = k + 1; l < dim; ++l)
          table.request(HalfInteger::integer(static_cast<int>(k + l) - 2 * shift - 1));
      table.compute(opts.threads);
      for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t l = k + 1; l < dim; ++l) {
          const auto& c = table[HalfInteger::integer(static_cast<int>(k + l) - 2 * shift - 1)];
          const double factor = static_cast<double>(l) - static_cast<double>(k);
          z.matrix.set_skew(k, l, factor * c.value);
          z.entry_errors(k, l) = z.entry_errors(l, k) = factor * c.abs_error;
        }
      z.method = "pf((l-k) c_{k+l-2N+1}), h_k = u^{k-(N-1)}";
      break;
    }
  }
  return z;
}

EvalResult zbeta_line(const ZRequest& req, const EvalOptions& opts) {
  const ZMatrix<double> z = build_line_matrix(req, opts);
  const double value = reduce_matrix(z, opts.precision);
  EvalResult r;
  r.value = value;
  r.matrix_dim = z.matrix.size();
  r.method = z.method;
  r.err_estimate = propagate_error(z, std::abs(value));
  return r;
}

EvalResult zbeta_circle(const ZRequest& req, const EvalOptions& opts) {
  const ZMatrix<Complex> z = build_circle_matrix(req, opts);
  Complex value = reduce_matrix(z, opts.precision);
  if (req.beta == Beta::one) {
    const long long n = req.n;
    value = quarter_turns(value, n * (n - 1) / 2);
  }
  EvalResult r;
  r.value = value.real();
  r.imag_residual = std::abs(value.imag());
  r.matrix_dim = z.matrix.size();
  r.method = z.method;
  r.err_estimate = propagate_error(z, std::abs(value));
  if (*r.imag_residual > kImagResidualTolerance * std::max(1.0, std::abs(r.value)))
    throw Error(ErrorCode::imag_residual_too_large,
                "zbeta_circle: imaginary residual " + std::to_string(*r.imag_residual) +
                    " exceeds tolerance");
  return r;
}

EvalResult zbeta(const ZRequest& req, const EvalOptions& opts) {
  return req.mu.on_circle() ? zbeta_circle(req, opts) : zbeta_line(req, opts);
}

}  // namespace symmint
