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

#include "symmint/spec_strings.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "symmint/error.hpp"
#include "symmint/siegel.hpp"

namespace symmint {

namespace {

struct Arg {
  std::string key;  // empty for positional
  std::string value;
};

// Default that marks a parameter whose value depends on the others.
constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct Term {
  std::string name;
  std::vector<Arg> args;
};

[[noreturn]] void fail(const std::string& spec, const std::string& why) {
  throw Error(ErrorCode::invalid_argument, "cannot parse '" + spec + "': " + why);
}

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_terms(const std::string& spec) {
  std::vector<std::string> out;
  std::string cur;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const char c = spec[i];
    if (c == '+' && i + 1 < spec.size() && std::isalpha(static_cast<unsigned char>(spec[i + 1]))) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Term parse_term(const std::string& spec, const std::string& text) {
  Term t;
  const std::size_t colon = text.find(':');
  t.name = trim(text.substr(0, colon));
  if (t.name.empty()) fail(spec, "empty name");
  if (colon == std::string::npos) return t;
  std::string rest = text.substr(colon + 1);
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = rest.find(',', start);
    const std::string piece = trim(rest.substr(start, comma - start));
    if (piece.empty()) fail(spec, "empty argument in '" + t.name + "'");
    const std::size_t eq = piece.find('=');
    if (eq == std::string::npos)
      t.args.push_back({"", piece});
    else
      t.args.push_back({trim(piece.substr(0, eq)), trim(piece.substr(eq + 1))});
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return t;
}

double to_number(const std::string& spec, const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto r = std::from_chars(first, last, v);
  if (r.ec != std::errc() || r.ptr != last) fail(spec, "'" + text + "' is not a number");
  return v;
}

// Binds the arguments of t to the named parameters, in order for positional ones.
std::map<std::string, double> bind(const std::string& spec, const Term& t,
                                   const std::vector<std::pair<std::string, std::optional<double>>>& params,
                                   std::map<std::string, std::string>* extra = nullptr) {
  std::map<std::string, double> out;
  std::size_t next = 0;
  for (const Arg& a : t.args) {
    if (extra && a.key == "chart") {
      (*extra)["chart"] = a.value;
      continue;
    }
    std::string key = a.key;
    if (key.empty()) {
      if (next >= params.size()) fail(spec, "too many arguments for '" + t.name + "'");
      key = params[next++].first;
    } else {
      bool known = false;
      for (const auto& p : params) known = known || p.first == key;
      if (!known) fail(spec, "'" + t.name + "' has no parameter '" + key + "'");
    }
    if (out.count(key)) fail(spec, "parameter '" + key + "' given twice");
    out[key] = to_number(spec, a.value);
  }
  for (const auto& [name, def] : params) {
    if (out.count(name)) continue;
    if (!def) fail(spec, "'" + t.name + "' requires parameter '" + name + "'");
    out[name] = *def;
  }
  return out;
}

Measure base_measure(const std::string& spec, const Term& t) {
  const std::string& n = t.name;
  if (n == "uniform" || n == "lebesgue") {
    auto a = bind(spec, t, {{"a", 0.0}, {"b", 1.0}});
    if (!(a["a"] < a["b"])) fail(spec, "requires a < b");
    return n == "uniform" ? measures::uniform(a["a"], a["b"]) : measures::lebesgue(a["a"], a["b"]);
  }
  if (n == "exp") {
    auto a = bind(spec, t, {{"rate", 1.0}, {"a", 0.0}});
    if (!(a["rate"] > 0.0)) fail(spec, "rate must be > 0");
    return measures::exponential(a["rate"], a["a"]);
  }
  if (n == "laguerre") {
    auto a = bind(spec, t, {{"alpha", 0.0}});
    if (!(a["alpha"] > -1.0)) fail(spec, "alpha must be > -1");
    return measures::laguerre(a["alpha"]);
  }
  if (n == "jacobi") {
    auto a = bind(spec, t, {{"alpha", 0.0}, {"beta", 0.0}});
    if (!(a["alpha"] > -1.0 && a["beta"] > -1.0)) fail(spec, "alpha and beta must be > -1");
    return measures::jacobi(a["alpha"], a["beta"]);
  }
  if (n == "circle-uniform") {
    bind(spec, t, {});
    return measures::circle_uniform();
  }
  if (n == "circle-cos") {
    auto a = bind(spec, t, {{"a", 0.5}});
    if (!(std::abs(a["a"]) < 1.0)) fail(spec, "|a| must be < 1");
    return measures::circle_cosine(a["a"]);
  }
  if (n == "siegel") {
    auto a = bind(spec, t, {{"sigma", 1.0}});
    return siegel_measure(a["sigma"]);
  }
  if (n == "cone-weight") {
    auto a = bind(spec, t, {{"beta", 2.0}, {"n", 1.0}, {"shape", kUnset}, {"rate", 1.0}});
    const double n_pts = a["n"];
    if (!(n_pts >= 1.0 && std::floor(n_pts) == n_pts)) fail(spec, "n must be a positive integer");
    const double b = a["beta"];
    if (!(b == 1.0 || b == 2.0 || b == 4.0)) fail(spec, "beta must be 1, 2 or 4");
    if (!(a["rate"] > 0.0)) fail(spec, "rate must be > 0");
    const SpaceSpec space{SpaceFamily::cone, beta_from_int(static_cast<int>(b)), static_cast<int>(n_pts)};
    const double shape = !std::isnan(a["shape"]) ? a["shape"] : 0.5 * b * (n_pts - 1.0) + 1.0;
    ReduceOptions ro;
    ro.check_mass = false;
    return reduce(space, weights::gamma(shape, a["rate"]), ro).mu;
  }
  fail(spec, "unknown measure family '" + n + "'");
}

Measure apply_modifier(const std::string& spec, const Measure& mu, const Term& t) {
  const std::string& n = t.name;
  const bool line_only = n == "pow" || n == "shift" || n == "dilate";
  if (line_only && mu.on_circle()) fail(spec, "'" + n + "' applies to real-line measures only");
  if (n == "pow") return mu.times_power(bind(spec, t, {{"k", std::nullopt}})["k"]);
  if (n == "powlog") {
    if (mu.on_circle() || mu.domain().lower < 0.0) fail(spec, "'powlog' needs support in u > 0");
    auto a = bind(spec, t, {{"k", 0.0}, {"l", std::nullopt}});
    const double k = a["k"];
    const double l = a["l"];
    return mu.times([k, l](double u) { return k * std::log(u) + l * std::log(std::abs(std::log(u))); },
                    "powlog(" + format_number(k) + "," + format_number(l) + ")");
  }
  if (n == "scale") {
    const double c = bind(spec, t, {{"c", std::nullopt}})["c"];
    if (!(c > 0.0)) fail(spec, "scale factor must be > 0");
    return mu.scaled(c);
  }
  if (n == "shift") return mu.shifted(bind(spec, t, {{"s", std::nullopt}})["s"]);
  if (n == "dilate") {
    const double s = bind(spec, t, {{"s", std::nullopt}})["s"];
    if (!(s > 0.0)) fail(spec, "dilation must be > 0");
    return mu.dilated(s);
  }
  fail(spec, "unknown modifier '" + n + "'");
}

WeightChart chart_from(const std::string& spec, const std::string& name) {
  if (name == "native") return WeightChart::native;
  if (name == "u" || name == "eigenvalue") return WeightChart::eigenvalue;
  if (name == "boost") return WeightChart::boost;
  if (name == "angle") return WeightChart::angle;
  if (name == "circle") return WeightChart::circle;
  fail(spec, "unknown weight chart '" + name + "'");
}

}  // namespace

Measure parse_measure(const std::string& spec) {
  const std::vector<std::string> parts = split_terms(spec);
  Measure mu = base_measure(spec, parse_term(spec, parts[0]));
  for (std::size_t i = 1; i < parts.size(); ++i) mu = apply_modifier(spec, mu, parse_term(spec, parts[i]));
  return mu;
}

WeightSpec parse_weight(const std::string& spec) {
  const std::vector<std::string> parts = split_terms(spec);
  if (parts.size() != 1) fail(spec, "weights take no modifiers");
  const Term t = parse_term(spec, parts[0]);
  std::map<std::string, std::string> extra;
  WeightSpec w;
  const std::string& n = t.name;
  try {
    if (n == "one") {
      bind(spec, t, {}, &extra);
      w = weights::one();
    } else if (n == "exp") {
      w = weights::exponential(bind(spec, t, {{"rate", 1.0}}, &extra)["rate"]);
    } else if (n == "gauss") {
      w = weights::gaussian(bind(spec, t, {{"sigma", 1.0}}, &extra)["sigma"]);
    } else if (n == "sech") {
      w = weights::sech(bind(spec, t, {{"power", 1.0}}, &extra)["power"]);
    } else if (n == "gamma") {
      auto a = bind(spec, t, {{"shape", std::nullopt}, {"rate", 1.0}}, &extra);
      w = weights::gamma(a["shape"], a["rate"]);
    } else if (n == "trig") {
      w = weights::trig(bind(spec, t, {{"a", 0.5}}, &extra)["a"]);
    } else if (n == "pow") {
      w = weights::power(bind(spec, t, {{"k", std::nullopt}}, &extra)["k"]);
    } else {
      fail(spec, "unknown weight '" + n + "'");
    }
  } catch (const Error& e) {
    if (std::string(e.what()).rfind("cannot parse", 0) == 0) throw;
    fail(spec, e.what());
  }
  if (auto it = extra.find("chart"); it != extra.end()) w.chart = chart_from(spec, it->second);
  return w;
}

}  // namespace symmint
