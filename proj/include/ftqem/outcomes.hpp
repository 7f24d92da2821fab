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
#include <cstdint>
#include <map>
#include <string>

#include "json.hpp"

namespace ftqem {

/// Outcome keys are '0'/'1' strings, classical bit 0 leftmost.

/// Exact probabilities over the classical register.
struct OutcomeDistribution {
  std::size_t num_clbits = 0;
  std::map<std::string, double> probs;

  double total() const;
  double at(const std::string& key) const;
  /// Drops entries at or below `floor`.
  void prune(double floor = 0.0);
};

/// Sampled counts over the classical register.
struct OutcomeHistogram {
  std::size_t num_clbits = 0;
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t shots = 0;

  void add(const std::string& key, std::uint64_t n = 1);
  /// Associative and commutative.
  void merge(const OutcomeHistogram& other);
  std::uint64_t at(const std::string& key) const;
  OutcomeDistribution frequencies() const;

  friend bool operator==(const OutcomeHistogram&, const OutcomeHistogram&) = default;
};

void to_json(nlohmann::json& j, const OutcomeDistribution& d);
void to_json(nlohmann::json& j, const OutcomeHistogram& h);

}  // namespace ftqem
