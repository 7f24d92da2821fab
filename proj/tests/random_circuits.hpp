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

#include <cstdint>
#include <random>

#include "ftqem/circuit.hpp"

namespace ftqem::testing {

struct RandomCircuitOptions {
  std::size_t qubits = 3;
  std::size_t gates = 20;
  bool mid_circuit = false;  // mid-circuit measurements, resets and conditioned gates
  bool hadamards = true;
  bool measure_all = true;
};

/// Random Clifford circuit; qubit count >= 2.
inline Circuit random_clifford(std::mt19937_64& rng, const RandomCircuitOptions& opt) {
  const std::size_t n = opt.qubits;
  Circuit c(n, opt.measure_all ? n : 0);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<std::size_t> measured;
  static constexpr GateKind one[] = {GateKind::X, GateKind::Y,    GateKind::Z, GateKind::H,
                                     GateKind::S, GateKind::SDag, GateKind::Id};
  for (std::size_t k = 0; k < opt.gates; ++k) {
    const auto r = rng() % 10;
    const auto a = pick(rng);
    if (r < 4) {
      auto kind = one[rng() % 7];
      if (!opt.hadamards && kind == GateKind::H) kind = GateKind::S;
      c.add(kind, {a});
    } else if (r < 8) {
      auto b = pick(rng);
      while (b == a) b = pick(rng);
      c.add(r < 6 ? GateKind::CX : GateKind::CZ, {a, b});
    } else if (opt.mid_circuit && r == 8) {
      const auto bit = c.add_clbits(1);
      c.measure(a, bit);
      measured.push_back(bit);
    } else if (opt.mid_circuit && r == 9 && !measured.empty()) {
      const auto bit = measured[rng() % measured.size()];
      c.add(rng() % 2 ? GateKind::CondX : GateKind::CondZ, {a}, {bit});
    } else if (opt.mid_circuit) {
      c.reset(a);
    } else if (opt.hadamards) {
      c.h(a);
    } else {
      c.s(a);
    }
  }
  if (opt.measure_all) {
    for (std::size_t q = 0; q < n; ++q) c.measure(q, q);
  }
  return c;
}

}  // namespace ftqem::testing
