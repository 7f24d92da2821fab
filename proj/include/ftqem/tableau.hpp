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
#include <span>
#include <vector>

#include "ftqem/circuit.hpp"
#include "ftqem/noise.hpp"
#include "ftqem/outcomes.hpp"
#include "ftqem/pauli.hpp"

namespace ftqem {

/// Aaronson-Gottesman stabilizer tableau. Rows 0..n-1 are destabilizers,
/// rows n..2n-1 stabilizers, row 2n is scratch. Bits are packed 64 per word.
class Tableau {
 public:
  explicit Tableau(std::size_t num_qubits);

  std::size_t num_qubits() const { return n_; }

  /// Unitary Clifford gates and Id. Throws UnsupportedGate otherwise.
  void apply(GateKind kind, std::span<const std::size_t> qubits);
  void apply_pauli(const PauliString& pauli);

  bool is_deterministic(std::size_t q) const;
  /// Z measurement. A random outcome takes the value `coin`.
  int measure(std::size_t q, int coin);
  /// Measures and flips back to |0>. Returns the collapsed outcome.
  int reset(std::size_t q, int coin);

  /// +1 or -1 when +P or -P stabilizes the state, 0 otherwise.
  int expectation(const PauliString& pauli) const;

  PauliString stabilizer(std::size_t i) const { return row(n_ + i); }
  PauliString destabilizer(std::size_t i) const { return row(i); }

  /// Destabilizer/stabilizer rows satisfy the symplectic pairing.
  bool is_valid() const;

 private:
  std::uint64_t* xrow(std::size_t r) { return x_.data() + r * words_; }
  std::uint64_t* zrow(std::size_t r) { return z_.data() + r * words_; }
  const std::uint64_t* xrow(std::size_t r) const { return x_.data() + r * words_; }
  const std::uint64_t* zrow(std::size_t r) const { return z_.data() + r * words_; }
  bool xbit(std::size_t r, std::size_t q) const { return (xrow(r)[q >> 6] >> (q & 63)) & 1; }
  bool zbit(std::size_t r, std::size_t q) const { return (zrow(r)[q >> 6] >> (q & 63)) & 1; }
  /// Power of i picked up by row i * row h, summed over qubits (mod 4).
  int product_phase(std::size_t i, std::size_t h) const;
  void rowsum(std::size_t h, std::size_t i);
  void set_row_zero(std::size_t r);
  PauliString row(std::size_t r) const;

  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
  std::vector<std::uint8_t> r_;
};

enum class TrajectoryEngine {
  Frame,    // one noiseless reference run, then Pauli frames per shot
  Tableau,  // a full tableau per shot
};

struct TrajectoryOptions {
  /// 0 means one per hardware thread.
  std::size_t threads = 1;
  TrajectoryEngine engine = TrajectoryEngine::Frame;
};

/// Monte Carlo sampling under the noise model. Shot k draws only from
/// trajectory_rng(seed, k), so the histogram is independent of threading.
OutcomeHistogram run_trajectories(const Circuit& circuit, const NoiseModel& model,
                                  std::uint64_t shots, std::uint64_t seed,
                                  const TrajectoryOptions& options = {});

/// Exact outcome distribution of a noiseless Clifford circuit, branching on
/// every random measurement or reset.
OutcomeDistribution enumerate_outcomes(const Circuit& circuit, std::size_t max_branches = 1 << 20);

}  // namespace ftqem
