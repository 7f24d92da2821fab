// Copyright 2026 The FTQEM Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ftqem/analysis.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ftqem/error.hpp"

namespace ftqem {

namespace {

double log_choose(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

/// C(n, j) q^j (1-q)^(n-j) in log space; -inf for vanishing terms.
double log_binomial_term(double n, double j, double log_q, double log_1mq) {
  const double a = j == 0.0 ? 0.0 : j * log_q;
  const double b = j == n ? 0.0 : (n - j) * log_1mq;
  return log_choose(n, j) + a + b;
}

void check_p(double p) {
  if (!(p >= 0.0 && p < 1.0)) throw ConfigError("bounds: p must lie in [0, 1)");
}

void check_distribution(const OutcomeDistribution& d, const char* name) {
  if (d.probs.empty()) throw ConfigError(std::string("sso: distribution ") + name + " is empty");
  double total = 0.0;
  for (const auto& [key, p] : d.probs) {
    if (p < 0.0) throw ConfigError(std::string("sso: negative entry in ") + name);
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ConfigError(std::string("sso: distribution ") + name + " sums to " + std::to_string(total));
  }
}

}  // namespace

double sso(const OutcomeDistribution& a, const OutcomeDistribution& b) {
  check_distribution(a, "a");
  check_distribution(b, "b");
  double s = 0.0;
  for (const auto& [key, pa] : a.probs) {
    auto it = b.probs.find(key);
    if (it != b.probs.end()) s += std::sqrt(pa * it->second);
  }
  return std::min(1.0, s * s);
}

double nonft_h_logical_error(double p) {
  return p * (2.0 + (-2.0 + p) * p) / (2.0 + 2.0 * (-1.0 + p) * p);
}

double threshold(std::size_t c) {
  if (c == 0) throw ConfigError("threshold: c must be >= 1");
  return 1.0 / (std::numbers::e * static_cast<double>(c) + 1.0);
}

double pl_upper(std::size_t d, std::size_t c, std::size_t h, double p) {
  check_p(p);
  if (d < 1) throw ConfigError("bounds: d must be >= 1");
  if (p == 0.0) return 0.0;
  const double n = static_cast<double>(c) * static_cast<double>(d);
  const double log_p = std::log(p), log_1mp = std::log1p(-p);
  double sum = 0.0;
  for (std::size_t j = d; j <= c * d; ++j) {
    sum += std::exp(log_binomial_term(n, static_cast<double>(j), log_p, log_1mp));
  }
  const double log_q = static_cast<double>(d) * log_p;
  const double log_1mq = std::log1p(-std::exp(log_q));
  for (std::size_t m = 1; m <= h; ++m) {
    sum += std::exp(log_binomial_term(static_cast<double>(h), static_cast<double>(m), log_q, log_1mq));
  }
  return sum;
}

double ps_lower(std::size_t d, std::size_t c, std::size_t h, double p) {
  check_p(p);
  if (d < 1) throw ConfigError("bounds: d must be >= 1");
  const double cd = static_cast<double>(c) * static_cast<double>(d);
  const double pd = std::pow(p, static_cast<double>(d));
  return std::exp(cd * std::log1p(-p) + static_cast<double>(h) * std::log1p(-pd));
}

BoundReport ratio_report(const BoundInputs& inputs) {
  BoundReport r;
  r.inputs = inputs;
  const auto c = inputs.c();
  r.pl_upper = pl_upper(inputs.d, c, inputs.h, inputs.p);
  r.ps_lower = ps_lower(inputs.d, c, inputs.h, inputs.p);
  r.ratio = r.pl_upper / r.ps_lower;
  r.threshold = threshold(c);
  r.below_threshold = inputs.p < r.threshold;
  return r;
}

std::size_t min_d_for_epsilon(std::size_t c, std::size_t h, double p, double epsilon) {
  if (!(epsilon > 0.0)) throw ConfigError("bounds: epsilon must be positive");
  if (3 * h > c) throw ConfigError("bounds: c must be at least 3h");
  if (!(p < threshold(c))) {
    throw ConfigError("bounds: p = " + std::to_string(p) + " is not below the threshold " +
                      std::to_string(threshold(c)));
  }
  for (std::size_t d = 1; d <= 199; d += 2) {
    if (ratio_report({d, c - 3 * h, h, p}).ratio < epsilon) return d;
  }
  throw Error("bounds: no odd d <= 199 reaches epsilon");
}

double monotonicity_log_value(std::size_t m, std::size_t c) {
  const double x = std::numbers::e * static_cast<double>(c) + 1.0;
  return static_cast<double>(m) * std::log(x) + static_cast<double>(c) * std::log1p(-1.0 / x);
}

bool monotonicity_check(std::size_t m_max, std::size_t c_max) {
  for (std::size_t m = 1; m <= m_max; ++m) {
    for (std::size_t c = 1; c <= c_max; ++c) {
      if (!(monotonicity_log_value(m, c) > 0.0)) return false;
    }
  }
  return true;
}

void to_json(nlohmann::json& j, const BoundReport& r) {
  j = {{"d", r.inputs.d},
       {"t", r.inputs.t},
       {"h", r.inputs.h},
       {"c", r.inputs.c()},
       {"p", r.inputs.p},
       {"pl_upper", r.pl_upper},
       {"ps_lower", r.ps_lower},
       {"ratio", r.ratio},
       {"threshold", r.threshold},
       {"below_threshold", r.below_threshold}};
}

std::string bound_csv_header() { return "d,t,h,c,p,pl_upper,ps_lower,ratio,threshold,below_threshold"; }

std::string bound_csv_row(const BoundReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << r.inputs.d << ',' << r.inputs.t << ',' << r.inputs.h << ',' << r.inputs.c() << ','
      << r.inputs.p << ',' << r.pl_upper << ',' << r.ps_lower << ',' << r.ratio << ','
      << r.threshold << ',' << (r.below_threshold ? "true" : "false");
  return out.str();
}

}  // namespace ftqem
