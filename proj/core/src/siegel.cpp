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

#include "symmint/siegel.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <numbers>
#include <utility>

#include "symmint/error.hpp"
#include "symmint/forms.hpp"
#include "symmint/linalg.hpp"
#include "symmint/spaces.hpp"
#include "symmint/zbeta.hpp"

namespace symmint {

namespace {

void check_sigma(double sigma) {
  if (!(sigma >= kSigmaMin && sigma <= kSigmaMax))
    throw Error(ErrorCode::no_convergence,
                "siegel: sigma = " + format_number(sigma) + " is outside [" +
                    format_number(kSigmaMin) + ", " + format_number(kSigmaMax) + "]");
}

// For large lambda the integrand is about exp(-lambda^2 / (2 sigma^2) + 2 (j + 1) lambda) / 2^j,
// which peaks at lambda = 2 sigma^2 (j + 1); Laplace's method then gives log m_j.
void check_range(int j, double sigma, const char* what) {
  const double k = j + 1.0;
  const double log_m = 2.0 * sigma * sigma * k * k + std::log(std::sqrt(2.0 * std::numbers::pi) * sigma) -
                       j * std::numbers::ln2;
  if (log_m > std::log(std::numeric_limits<double>::max()))
    throw Error(ErrorCode::no_convergence, std::string(what) + ": m_" + std::to_string(j) + "(sigma = " +
                                               format_number(sigma) + ") overflows a double");
}

void check_finite(double value, const char* what) {
  if (!std::isfinite(value))
    throw Error(ErrorCode::no_convergence, std::string(what) + ": value overflows a double");
}

double log_sinh(double y) {
  if (y > 20.0) return y - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * y));
  return std::log(std::sinh(y));
}

double log_cosh(double y) { return y - std::numbers::ln2 + std::log1p(std::exp(-2.0 * y)); }

double horner(const std::vector<double>& c, double u) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * u + *it;
  return v;
}

}  // namespace

Measure siegel_measure(double sigma) {
  check_sigma(sigma);
  SpaceSpec space{SpaceFamily::classical_domain, Beta::two, 1, 1, 1};
  ReduceOptions ro;
  ro.check_mass = false;
  ro.chart_scale = sigma;
  return reduce(space, weights::gaussian(sigma), ro)
      .mu.with_label("siegel(sigma=" + format_number(sigma) + ")");
}

Tolerance siegel_tolerance() {
  Tolerance t;
  t.rel = 1e-13;
  t.abs = 0.0;
  return t;
}

Estimate<double> siegel_moment(int j, double sigma, const Tolerance& tol) {
  if (j < 0) throw Error(ErrorCode::invalid_argument, "siegel_moment: j must be >= 0");
  check_sigma(sigma);
  check_range(j, sigma, "siegel_moment");
  // lambda = sigma x, x = s / (1 - s); the weight is evaluated in lambda, never through u.
  const double dj = j;
  const double log_sigma = std::log(sigma);
  auto f = [dj, sigma, log_sigma](double s) {
    const double x = s / (1.0 - s);
    const double y = 2.0 * sigma * x;
    if (!std::isfinite(y)) return 0.0;
    const double ld = -0.5 * x * x + dj * log_cosh(y) + std::numbers::ln2 + log_sinh(y) + log_sigma -
                      2.0 * std::log1p(-s);
    return std::exp(ld);
  };
  const Estimate<double> m = integrate_interval(f, 0.0, 1.0, tol);
  check_finite(m.value, "siegel_moment");
  return m;
}

Estimate<double> siegel_moment_u(int j, double sigma, const Tolerance& tol) {
  if (j < 0) throw Error(ErrorCode::invalid_argument, "siegel_moment_u: j must be >= 0");
  check_sigma(sigma);
  check_range(j, sigma, "siegel_moment_u");
  const double c = 1.0 / (8.0 * sigma * sigma);
  const double dj = j;
  auto f = [c, dj](double u) {
    const double a = std::acosh(u);
    return std::exp(dj * std::log(u) - c * a * a);
  };
  Estimate<double> total = integrate_interval(f, 1.0, 2.0, tol);
  double previous = total.value;
  for (double lo = 2.0; lo < 1e300; lo *= 2.0) {
    const Estimate<double> panel = integrate_interval(f, lo, 2.0 * lo, tol);
    total.value += panel.value;
    total.abs_error += panel.abs_error;
    const bool past_peak = panel.value <= previous;
    previous = panel.value;
    if (past_peak && panel.value <= 1e-18 * total.value) {
      check_finite(total.value, "siegel_moment_u");
      return total;
    }
  }
  throw Error(ErrorCode::no_convergence, "siegel_moment_u: tail does not decay");
}

SiegelZ siegel_Z(int n, double sigma, const Tolerance& tol) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "siegel_Z: N must be >= 1");
  SiegelZ out;
  std::vector<double> errs;
  for (int j = 0; j <= 2 * n - 2; ++j) {
    const Estimate<double> m = siegel_moment(j, sigma, tol);
    out.moments.push_back(m.value);
    errs.push_back(m.abs_error);
  }
  const auto un = static_cast<std::size_t>(n);
  RealMatrix h(un);
  for (std::size_t k = 0; k < un; ++k)
    for (std::size_t l = 0; l < un; ++l) h(k, l) = out.moments[k + l];
  out.value = det(h);
  check_finite(out.value, "siegel_Z");
  // First order: d det = det * tr(H^{-1} dH).
  if (const auto inv = inverse(h)) {
    double s = 0.0;
    for (std::size_t k = 0; k < un; ++k)
      for (std::size_t l = 0; l < un; ++l) s += std::abs((*inv)(l, k)) * errs[k + l];
    out.err_estimate = std::abs(out.value) * s;
  } else {
    out.err_estimate = std::numeric_limits<double>::infinity();
  }
  return out;
}

Estimate<double> siegel_Z_oracle(int n, double sigma, const OracleOptions& opts) {
  check_sigma(sigma);
  SpaceSpec space{SpaceFamily::classical_domain, Beta::two, n, 1, 1};
  return original_chart_integral(space, weights::gaussian(sigma), opts, sigma);
}

CDKernel::CDKernel(Measure mu, std::vector<std::vector<double>> ortho_coeffs,
                   std::vector<double> recurrence_a, std::vector<double> recurrence_b)
    : mu_(std::move(mu)),
      coeffs_(std::move(ortho_coeffs)),
      a_(std::move(recurrence_a)),
      b_(std::move(recurrence_b)) {}

double CDKernel::phi(int k, double u) const { return horner(coeffs_.at(static_cast<std::size_t>(k)), u); }

double CDKernel::operator()(double u, double v) const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += horner(c, u) * horner(c, v);
  return s;
}

namespace {

// psi_k(s) = phi_k(u(s)) * sqrt(d mu / ds). Far in the tail phi_k overflows
// while the density underflows; there the terms are summed in log space.
class ScaledBasis {
 public:
  ScaledBasis(const std::vector<std::vector<double>>& coeffs, const Measure& mu)
      : coeffs_(coeffs), p_(mu.parametrization()) {}
  explicit ScaledBasis(const CDKernel& k) : ScaledBasis(k.ortho_coeffs(), k.measure()) {}

  double lo() const { return p_.lo; }
  double hi() const { return p_.hi; }

  double point(double s) const { return p_.point(s); }

  /// Fills psi with psi_0..psi_{n-1} at s; false where the density vanishes.
  bool eval(double s, std::vector<double>& psi) const {
    psi.assign(coeffs_.size(), 0.0);
    const double u = p_.point(s);
    const double half_ld = 0.5 * p_.log_density(s);
    if (!std::isfinite(u) || half_ld == -std::numeric_limits<double>::infinity()) return false;
    const double log_u = std::log(std::abs(u));
    for (std::size_t k = 0; k < psi.size(); ++k) {
      const auto& c = coeffs_[k];
      const double direct = horner(c, u) * std::exp(half_ld);
      if (std::isfinite(direct)) {
        psi[k] = direct;
        continue;
      }
      double acc = 0.0;
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0.0) continue;
        if (u == 0.0) {
          if (i == 0) acc += c[0] * std::exp(half_ld);
          continue;
        }
        const double t = std::exp(static_cast<double>(i) * log_u + half_ld);
        acc += ((u < 0.0 && i % 2 == 1) ? -c[i] : c[i]) * t;
      }
      psi[k] = acc;
    }
    return true;
  }

 private:
  const std::vector<std::vector<double>>& coeffs_;
  Parametrization p_;
};

}  // namespace

CDKernel cd_kernel(const Measure& mu, int n, const Tolerance& tol) {
  if (mu.on_circle()) throw Error(ErrorCode::invalid_argument, "cd_kernel: real-line measures only");
  const StabilizedBasis sb = stabilized_basis(mu, n, tol);
  std::vector<std::vector<double>> coeffs;
  std::vector<double> b;
  for (std::size_t k = 0; k < sb.size(); ++k) {
    const std::vector<double>& p = sb.coefficients[k];
    const double norm2 = sb.squared_norms[k];
    const double inv = 1.0 / std::sqrt(norm2);
    std::vector<double> phi(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) phi[i] = p[i] * inv;
    coeffs.push_back(std::move(phi));
    b.push_back(k == 0 ? norm2 : norm2 / sb.squared_norms[k - 1]);
  }
  // a_k = int u phi_k^2 d mu
  const ScaledBasis basis(coeffs, mu);
  std::vector<double> a;
  std::vector<double> psi;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    a.push_back(integrate_interval(
                    [&](double s) { return basis.eval(s, psi) ? basis.point(s) * psi[k] * psi[k] : 0.0; },
                    basis.lo(), basis.hi(), tol)
                    .value);
  return CDKernel(mu, std::move(coeffs), std::move(a), std::move(b));
}

Estimate<double> kernel_trace(const CDKernel& k, const Tolerance& tol) {
  const ScaledBasis b(k);
  std::vector<double> psi;
  return integrate_interval(
      [&](double s) {
        if (!b.eval(s, psi)) return 0.0;
        double acc = 0.0;
        for (double v : psi) acc += v * v;
        return acc;
      },
      b.lo(), b.hi(), tol);
}

double kernel_frobenius(const CDKernel& k, const Tolerance& tol) {
  const ScaledBasis b(k);
  std::vector<double> psi;
  const int n = k.degree();
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      const double g = integrate_interval(
                           [&](double t) { return b.eval(t, psi) ? psi[ui] * psi[uj] : 0.0; },
                           b.lo(), b.hi(), tol)
                           .value;
      s += (i == j ? 1.0 : 2.0) * g * g;
    }
  }
  return s;
}

Estimate<double> kernel_reproduce(const CDKernel& k, double u, double v, const Tolerance& tol) {
  const ScaledBasis b(k);
  std::vector<double> psi;
  std::vector<double> pu;
  std::vector<double> pv;
  for (int i = 0; i < k.degree(); ++i) {
    pu.push_back(k.phi(i, u));
    pv.push_back(k.phi(i, v));
  }
  return integrate_interval(
      [&](double s) {
        if (!b.eval(s, psi)) return 0.0;
        double a = 0.0;
        double c = 0.0;
        for (std::size_t i = 0; i < psi.size(); ++i) {
          a += pu[i] * psi[i];
          c += pv[i] * psi[i];
        }
        return a * c;
      },
      b.lo(), b.hi(), tol);
}

double kernel_determinant(const CDKernel& k, const std::vector<double>& points) {
  RealMatrix m(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < points.size(); ++j) m(i, j) = k(points[i], points[j]);
  return det(m);
}

}  // namespace symmint
