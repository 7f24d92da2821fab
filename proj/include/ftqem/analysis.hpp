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

#pragma once

#include <cstddef>
#include <string>

#include "ftqem/outcomes.hpp"
#include "json.hpp"

namespace ftqem {

/// Squared statistical overlap (sum_i sqrt(a_i b_i))^2 over the union of keys.
/// Each input must be nonnegative and sum to 1 within 1e-9.
double sso(const OutcomeDistribution& a, const OutcomeDistribution& b);

/// Logical error rate of the non-fault-tolerant H on |+>_L of the distance-2
/// repetition code: p(2 + (p - 2)p) / (2 + 2(p - 1)p).
double nonft_h_logical_error(double p);

/// 1 / (e c + 1).
double threshold(std::size_t c);

struct BoundInputs {
  std::size_t d = 1;
  std::size_t t = 0;
  std::size_t h = 0;
  double p = 0.0;

  std::size_t c() const { return t + 3 * h; }
};

struct BoundReport {
  BoundInputs inputs;
  double pl_upper = 0.0;
  double ps_lower = 1.0;
  double ratio = 0.0;
  double threshold = 1.0;
  bool below_threshold = true;
};

/// sum_{j=d}^{cd} C(cd, j) p^j (1-p)^(cd-j) + sum_{m=1}^{h} C(h, m) p^(dm) (1-p^d)^(h-m),
/// evaluated term by term in log space. Not clamped to 1.
double pl_upper(std::size_t d, std::size_t c, std::size_t h, double p);

/// (1-p)^(cd) (1-p^d)^h.
double ps_lower(std::size_t d, std::size_t c, std::size_t h, double p);

BoundReport ratio_report(const BoundInputs& inputs);

/// Smallest odd d <= 199 with ratio < epsilon. Throws ConfigError when p is
/// not below threshold(c) or epsilon <= 0, Error when the cap is reached.
std::size_t min_d_for_epsilon(std::size_t c, std::size_t h, double p, double epsilon);

/// log of (e c + 1)^m (1 - 1/(e c + 1))^c.
double monotonicity_log_value(std::size_t m, std::size_t c);

/// True when (e c + 1)^m (1 - 1/(e c + 1))^c > 1 for all 1 <= m <= m_max, 1 <= c <= c_max.
bool monotonicity_check(std::size_t m_max, std::size_t c_max);

void to_json(nlohmann::json& j, const BoundReport& r);
std::string bound_csv_header();
std::string bound_csv_row(const BoundReport& r);

}  // namespace ftqem
