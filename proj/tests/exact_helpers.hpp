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

#include <cmath>
#include <set>
#include <string>

#include <gtest/gtest.h>

#include "ftqem/density_matrix.hpp"
#include "ftqem/noise.hpp"
#include "ftqem/outcomes.hpp"
#include "ftqem/tableau.hpp"

namespace ftqem::testing {

/// Exact noiseless distribution; dense up to 10 qubits, stabilizer branching above.
inline OutcomeDistribution exact_noiseless(const Circuit& c, const std::vector<std::size_t>& discard = {}) {
  if (c.num_qubits() <= 10) {
    DmOptions opt;
    opt.discard_clbits = discard;
    return run_dm(c, NoiseModel::noiseless(), opt);
  }
  return enumerate_outcomes(c);
}

inline ::testing::AssertionResult distributions_near(const OutcomeDistribution& a,
                                                     const OutcomeDistribution& b, double tol) {
  std::set<std::string> keys;
  for (const auto& [k, v] : a.probs) keys.insert(k);
  for (const auto& [k, v] : b.probs) keys.insert(k);
  for (const auto& k : keys) {
    const double diff = std::abs(a.at(k) - b.at(k));
    if (diff > tol) {
      return ::testing::AssertionFailure()
             << "outcome " << k << ": " << a.at(k) << " vs " << b.at(k) << " (diff " << diff << ")";
    }
  }
  return ::testing::AssertionSuccess();
}

}  // namespace ftqem::testing
