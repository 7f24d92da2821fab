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

#include "ftqem/outcomes.hpp"

#include <stdexcept>

#include "ftqem/error.hpp"

namespace ftqem {

double OutcomeDistribution::total() const {
  double s = 0.0;
  for (const auto& [key, p] : probs) s += p;
  return s;
}

double OutcomeDistribution::at(const std::string& key) const {
  auto it = probs.find(key);
  return it == probs.end() ? 0.0 : it->second;
}

void OutcomeDistribution::prune(double floor) {
  std::erase_if(probs, [floor](const auto& kv) { return kv.second <= floor; });
}

void OutcomeHistogram::add(const std::string& key, std::uint64_t n) {
  if (key.size() != num_clbits) throw Error("histogram key length mismatch");
  counts[key] += n;
  shots += n;
}

void OutcomeHistogram::merge(const OutcomeHistogram& other) {
  if (other.shots == 0) return;
  if (shots == 0 && counts.empty()) num_clbits = other.num_clbits;
  if (other.num_clbits != num_clbits) throw Error("cannot merge histograms of different widths");
  for (const auto& [key, n] : other.counts) counts[key] += n;
  shots += other.shots;
}

std::uint64_t OutcomeHistogram::at(const std::string& key) const {
  auto it = counts.find(key);
  return it == counts.end() ? 0 : it->second;
}

OutcomeDistribution OutcomeHistogram::frequencies() const {
  OutcomeDistribution d{num_clbits, {}};
  if (shots == 0) return d;
  for (const auto& [key, n] : counts) {
    d.probs[key] = static_cast<double>(n) / static_cast<double>(shots);
  }
  return d;
}

void to_json(nlohmann::json& j, const OutcomeDistribution& d) {
  j = nlohmann::json{{"num_clbits", d.num_clbits}, {"probs", d.probs}};
}

void to_json(nlohmann::json& j, const OutcomeHistogram& h) {
  j = nlohmann::json{{"num_clbits", h.num_clbits}, {"shots", h.shots}, {"counts", h.counts}};
}

}  // namespace ftqem
