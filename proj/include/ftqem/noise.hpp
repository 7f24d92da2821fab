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
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "ftqem/circuit.hpp"
#include "ftqem/pauli.hpp"
#include "json.hpp"

namespace ftqem {

/// How a depolarizing rate p is read.
///   Pauli:  with probability p one of the 4^k - 1 non-identity Paulis, uniformly.
///   Mixing: rho -> (1 - p) rho + p I / 2^k on the gate's support, i.e. each of
///           the 4^k Paulis (identity included) with probability p / 4^k.
enum class NoiseConvention { Pauli, Mixing };

NoiseConvention parse_noise_convention(std::string_view text);
std::string_view to_string(NoiseConvention convention);

struct NoiseModel {
  double p1 = 0.0;      // single-qubit gates, resets, classically controlled gates
  double p2 = 0.0;      // two-qubit gates
  double p_meas = 0.0;  // classical flip of each measurement record
  double kappa = 1.0;   // logical fault rate kappa * p^d of an idealized ancilla
  NoiseConvention convention = NoiseConvention::Pauli;

  static NoiseModel noiseless() { return {}; }

  /// Throws ConfigError when a probability is outside [0, 1] or kappa < 0.
  void validate() const;
  bool is_noiseless() const { return p1 == 0.0 && p2 == 0.0 && p_meas == 0.0; }

  /// Probability that a gate of this arity is followed by a non-identity Pauli.
  double fault_probability(std::size_t arity) const;
  /// lambda in rho -> (1 - lambda) rho + lambda (Tr_support rho) (x) I / 2^k.
  double mixing_weight(std::size_t arity) const;
  /// min(1, kappa * max(p1, p2)^d).
  double logical_fault_rate(std::size_t d) const;

  friend bool operator==(const NoiseModel&, const NoiseModel&) = default;
};

void to_json(nlohmann::json& j, const NoiseModel& model);
void from_json(const nlohmann::json& j, NoiseModel& model);

/// Explicit Pauli-mixture form of a depolarizing channel.
struct PauliChannel {
  std::size_t arity = 1;
  /// weights[i] is the probability of Pauli index i. Index = sum_k letter_k 4^(arity-1-k)
  /// with letters I=0, X=1, Y=2, Z=3; index 0 is the identity.
  std::vector<double> weights;

  PauliString pauli(std::size_t index) const;
  double total() const;
};

PauliChannel depolarizing_channel(std::size_t arity, double p,
                                  NoiseConvention convention = NoiseConvention::Pauli);

struct PauliFault {
  std::size_t location = 0;  // gate index in the circuit
  PauliString letters;       // over the gate's qubits, in operand order
};

using Rng = std::mt19937_64;

/// Independent stream for trajectory `index` under `seed`.
Rng trajectory_rng(std::uint64_t seed, std::uint64_t index);
/// Uniform double in [0, 1) from the top 53 bits.
double uniform01(Rng& rng);

/// Arity of the noise channel that follows `gate`: 0 (none), 1 or 2.
std::size_t noise_arity(const Gate& gate);

/// Draws a Pauli index for a channel of this arity (0 = no fault), using the
/// same draws as sample_fault.
std::size_t sample_fault_index(std::size_t arity, const NoiseModel& model, Rng& rng);

/// Draws the fault after gate `location`, or nothing. Zero-probability
/// locations consume no randomness.
std::optional<PauliFault> sample_fault(const Gate& gate, std::size_t location,
                                       const NoiseModel& model, Rng& rng);

/// For an lfault site on a block of `d` qubits: 0 = none, 1 = X_L, 2 = Y_L, 3 = Z_L.
int sample_logical_fault(std::size_t d, const NoiseModel& model, Rng& rng);

}  // namespace ftqem
