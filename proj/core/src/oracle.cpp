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

#include "symmint/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "symmint/error.hpp"
#include "symmint/parallel.hpp"

namespace symmint {

namespace {

struct AxisRule {
  std::vector<double> nodes;    // in (0, 1)
  std::vector<double> weights;  // sum to 1
};

AxisRule composite_rule(int order, std::size_t panels) {
  const GaussLegendre& gl = gauss_legendre(order);
  AxisRule out;
  const double h = 1.0 / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = (static_cast<double>(p) + 0.5) * h;
    for (int i = 0; i < gl.order(); ++i) {
      out.nodes.push_back(mid + 0.5 * h * gl.nodes()[static_cast<std::size_t>(i)]);
      out.weights.push_back(0.5 * h * gl.weights()[static_cast<std::size_t>(i)]);
    }
  }
  return out;
}

double power_beta(double d, int beta) {
  switch (beta) {
    case 1: return d;
    case 2: return d * d;
    case 4: {
      const double d2 = d * d;
      return d2 * d2;
    }
    default: return std::pow(d, beta);
  }
}

class ChamberEvaluator {
 public:
  ChamberEvaluator(const ChamberIntegrand& ci, int n, int beta, const AxisRule& rule)
      : ci_(ci), n_(n), beta_(beta), rule_(rule) {}

  // Contribution of outermost node i (level n - 1, zero-based).
  double outer_node(std::size_t i) const {
    std::vector<double> x(static_cast<std::size_t>(n_));
    const double s = ci_.lo + (ci_.hi - ci_.lo) * rule_.nodes[i];
    const double jac = (ci_.hi - ci_.lo) * rule_.weights[i];
    return node_value(n_ - 1, s, jac, x);
  }

 private:
  double chord(double a, double b) const {
    return ci_.circle ? 2.0 * std::abs(std::sin(0.5 * (a - b))) : std::abs(a - b);
  }

  // Value of level `level` at parameter s times everything below it.
  double node_value(int level, double s, double jac, std::vector<double>& x) const {
    const double xk = ci_.point(s);
    if (!std::isfinite(xk)) return 0.0;
    const double dens = std::exp(ci_.log_density(s));
    if (dens == 0.0) return 0.0;
    double inter = 1.0;
    for (int m = level + 1; m < n_; ++m) inter *= power_beta(chord(xk, x[static_cast<std::size_t>(m)]), beta_);
    const double here = jac * dens * inter;
    if (here == 0.0 || level == 0) return here;
    x[static_cast<std::size_t>(level)] = xk;
    const double span = s - ci_.lo;
    double inner = 0.0;
    for (std::size_t j = 0; j < rule_.nodes.size(); ++j) {
      const double sj = ci_.lo + span * rule_.nodes[j];
      inner += node_value(level - 1, sj, span * rule_.weights[j], x);
    }
    return here * inner;
  }

  const ChamberIntegrand& ci_;
  int n_;
  int beta_;
  const AxisRule& rule_;
};

double chamber_at_resolution(const ChamberIntegrand& ci, int n, int beta, const AxisRule& rule,
                             unsigned threads) {
  ChamberEvaluator eval(ci, n, beta, rule);
  std::vector<double> parts(rule.nodes.size(), 0.0);
  parallel_for(parts.size(), threads, [&](std::size_t i) { parts[i] = eval.outer_node(i); });
  // Pairwise summation in fixed order.
  while (parts.size() > 1) {
    std::vector<double> next((parts.size() + 1) / 2, 0.0);
    for (std::size_t i = 0; i < parts.size(); i += 2)
      next[i / 2] = parts[i] + (i + 1 < parts.size() ? parts[i + 1] : 0.0);
    parts.swap(next);
  }
  return parts.empty() ? 0.0 : parts[0];
}

ChamberIntegrand chamber_from_measure(const Measure& mu) {
  const Parametrization p = mu.parametrization();
  return {p.lo, p.hi, p.point, p.log_density, mu.on_circle()};
}

std::uint64_t next_uniform_bits(std::mt19937_64& rng) { return rng() >> 11; }

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(next_uniform_bits(rng)) * 0x1.0p-53;
}

struct Moments {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double v) {
    ++count;
    const double delta = v - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (v - mean);
  }

  void merge(const Moments& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double total = static_cast<double>(count + o.count);
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.count) / total;
    m2 += o.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(o.count) / total;
    count += o.count;
  }
};

Estimate<double> monte_carlo(const OracleRequest& req, const OracleOptions& opts) {
  const std::size_t samples = req.monte_carlo.samples;
  if (samples < 2) throw Error(ErrorCode::invalid_argument, "oracle: monte_carlo needs >= 2 samples");
  const InverseCdfSampler sampler(req.mu, opts.tol);
  const int n = req.n;
  const int beta = to_int(req.beta);
  const bool circle = req.mu.on_circle();

  constexpr std::size_t kBatch = 8192;
  const std::size_t batches = (samples + kBatch - 1) / kBatch;
  std::vector<Moments> parts(batches);
  const auto seed = req.monte_carlo.seed;

  parallel_for(batches, opts.threads, [&](std::size_t b) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(b)};
    std::mt19937_64 rng(seq);
    const std::size_t count = std::min(kBatch, samples - b * kBatch);
    std::vector<double> x(static_cast<std::size_t>(n));
    Moments m;
    for (std::size_t s = 0; s < count; ++s) {
      for (auto& xi : x) xi = sampler.sample(uniform01(rng));
      double v = 1.0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const double a = x[static_cast<std::size_t>(i)];
          const double c = x[static_cast<std::size_t>(j)];
          const double d = circle ? 2.0 * std::abs(std::sin(0.5 * (a - c))) : std::abs(a - c);
          v *= power_beta(d, beta);
        }
      m.add(v);
    }
    parts[b] = m;
  });

  Moments all;
  for (const auto& p : parts) all.merge(p);

  // mass^N / N! in log space.
  const double log_scale = n * std::log(sampler.total_mass()) - std::lgamma(n + 1.0);
  const double scale = std::exp(log_scale);
  const double variance = all.m2 / static_cast<double>(all.count - 1);
  const double stderr_ = std::sqrt(variance / static_cast<double>(all.count));
  return {all.mean * scale, 3.0 * stderr_ * scale};
}

}  // namespace

Estimate<double> chamber_integral(const ChamberIntegrand& integrand, int n, int beta,
                                  const OracleOptions& opts) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "chamber_integral: N must be >= 1");
  // Points per axis grow by 4/3 then 3/2; the order saturates at kMaxOrder and panels take over.
  constexpr std::size_t kMaxOrder = 64;
  const auto rule_for = [&](std::size_t points) {
    const std::size_t order = std::min(points, kMaxOrder);
    return composite_rule(static_cast<int>(order), (points + order - 1) / order);
  };
  const auto grid_size = [&](std::size_t points) {
    double total = 1.0;
    for (int k = 0; k < n; ++k) total *= static_cast<double>(points);
    return total;
  };

  std::size_t points = static_cast<std::size_t>(std::max(opts.gauss_order, 2));
  double prev = chamber_at_resolution(integrand, n, beta, rule_for(points), opts.threads);
  for (int step = 0;; ++step) {
    points = (step % 2 == 0) ? points * 3 / 2 : points * 4 / 3;
    if (points > kMaxOrder) points = (points + kMaxOrder - 1) / kMaxOrder * kMaxOrder;
    if (grid_size(points) > static_cast<double>(opts.max_evaluations))
      throw Error(ErrorCode::budget_exceeded,
                  "chamber_integral: tensor grid exceeds the evaluation budget (last estimate " +
                      std::to_string(prev) + ")");
    const double next = chamber_at_resolution(integrand, n, beta, rule_for(points), opts.threads);
    if (!std::isfinite(next))
      throw Error(ErrorCode::no_convergence, "chamber_integral: integrand is not finite");
    const double gap = std::abs(next - prev);
    if (gap <= opts.rel_target * std::abs(next) || gap <= opts.tol.abs * 1e-3) return {next, gap};
    prev = next;
  }
}

InverseCdfSampler::InverseCdfSampler(const Measure& mu, const Tolerance& tol)
    : param_(mu.parametrization()) {
  CumulativeIntegral<double> running = [&] {
    try {
      return cumulative([](double) { return 1.0; }, mu, tol);
    } catch (const Error& e) {
      throw Error(ErrorCode::non_samplable, std::string("sampler: ") + e.what());
    }
  }();
  mass_ = running.total();
  if (!(mass_ > 0.0) || !std::isfinite(mass_))
    throw Error(ErrorCode::non_samplable, "sampler: total mass is not positive and finite");

  for (std::size_t i = 0; i <= kTableIntervals; ++i) {
    const double s = param_.lo + (param_.hi - param_.lo) * static_cast<double>(i) /
                                     static_cast<double>(kTableIntervals);
    const double f = (i == kTableIntervals) ? mass_ : running.at_parameter(s);
    if (cdf_.empty() || f > cdf_.back()) {
      cdf_.push_back(f);
      params_.push_back(s);
    } else if (i == kTableIntervals) {
      params_.back() = s;
    }
  }
  if (cdf_.size() < 2) throw Error(ErrorCode::non_samplable, "sampler: cumulative table is degenerate");

  const std::size_t m = cdf_.size();
  std::vector<double> h(m - 1);
  std::vector<double> d(m - 1);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    h[i] = cdf_[i + 1] - cdf_[i];
    d[i] = (params_[i + 1] - params_[i]) / h[i];
  }
  slopes_.assign(m, 0.0);
  slopes_[0] = d[0];
  slopes_[m - 1] = d[m - 2];
  for (std::size_t i = 1; i + 1 < m; ++i) {
    if (d[i - 1] * d[i] <= 0.0) continue;
    const double w1 = 2.0 * h[i] + h[i - 1];
    const double w2 = h[i] + 2.0 * h[i - 1];
    slopes_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
  }
}

double InverseCdfSampler::sample(double uniform) const {
  const double f = std::clamp(uniform, 0.0, 1.0) * mass_;
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), f);
  std::size_t i = it == cdf_.begin() ? 0 : static_cast<std::size_t>(it - cdf_.begin()) - 1;
  if (i + 1 >= cdf_.size()) i = cdf_.size() - 2;
  const double h = cdf_[i + 1] - cdf_[i];
  const double t = std::clamp((f - cdf_[i]) / h, 0.0, 1.0);
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double s = (2 * t3 - 3 * t2 + 1) * params_[i] + (t3 - 2 * t2 + t) * h * slopes_[i] +
                   (-2 * t3 + 3 * t2) * params_[i + 1] + (t3 - t2) * h * slopes_[i + 1];
  return param_.point(std::clamp(s, param_.lo, std::nextafter(param_.hi, param_.lo)));
}

Estimate<double> zbeta_bruteforce(const OracleRequest& req, const OracleOptions& opts) {
  if (req.n < 1) throw Error(ErrorCode::invalid_argument, "oracle: N must be >= 1");
  const int beta = to_int(req.beta);
  if (req.method == OracleMethod::monte_carlo) return monte_carlo(req, opts);

  const int limit = req.beta == Beta::four ? 3 : 4;
  if (req.n > limit)
    throw Error(ErrorCode::budget_exceeded, "oracle: tensor quadrature is limited to N <= " +
                                                std::to_string(limit) + " for this beta");
  return chamber_integral(chamber_from_measure(req.mu), req.n, beta, opts);
}

}  // namespace symmint
