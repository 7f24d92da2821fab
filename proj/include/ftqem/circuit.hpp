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
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ftqem {

enum class GateKind : std::uint8_t {
  X,
  Y,
  Z,
  H,
  S,
  SDag,
  Id,  // idle location; a no-op that still receives single-qubit noise
  CX,
  CZ,
  Measure,
  Reset,
  CondX,  // X on a qubit when a classical bit reads 1
  CondZ,
  LogicalFault,  // repetition-block logical fault site (X_L on all, Z_L on first)
};

/// Text mnemonic used by the circuit format ("cx", "sdg", ...).
std::string_view mnemonic(GateKind kind);
std::optional<GateKind> kind_from_mnemonic(std::string_view word);

/// Number of qubit operands the kind takes, or 0 for variable arity.
std::size_t qubit_arity(GateKind kind);
std::size_t clbit_arity(GateKind kind);
bool is_unitary(GateKind kind);

struct Gate {
  GateKind kind{};
  std::vector<std::size_t> qubits;
  std::vector<std::size_t> clbits;
  /// Exempt from the noise model (offline / idealized parts of a circuit).
  bool noiseless = false;

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Flat gate list over physical qubits and classical bits.
///
/// Qubit and classical-bit indices are zero-based. Classical bit 0 is the
/// leftmost character of every outcome bitstring produced by the backends.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::size_t num_qubits, std::size_t num_clbits = 0)
      : num_qubits_(num_qubits), num_clbits_(num_clbits) {}

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t num_clbits() const { return num_clbits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  /// Grows the registers; never shrinks them.
  void widen(std::size_t num_qubits, std::size_t num_clbits);
  std::size_t add_qubits(std::size_t count);
  std::size_t add_clbits(std::size_t count);

  /// Appends a gate after checking arity and register bounds.
  Circuit& add(Gate gate);
  Circuit& add(GateKind kind, std::vector<std::size_t> qubits,
               std::vector<std::size_t> clbits = {}, bool noiseless = false);

  Circuit& x(std::size_t q) { return add(GateKind::X, {q}); }
  Circuit& y(std::size_t q) { return add(GateKind::Y, {q}); }
  Circuit& z(std::size_t q) { return add(GateKind::Z, {q}); }
  Circuit& h(std::size_t q) { return add(GateKind::H, {q}); }
  Circuit& s(std::size_t q) { return add(GateKind::S, {q}); }
  Circuit& sdg(std::size_t q) { return add(GateKind::SDag, {q}); }
  Circuit& id(std::size_t q) { return add(GateKind::Id, {q}); }
  Circuit& cx(std::size_t c, std::size_t t) { return add(GateKind::CX, {c, t}); }
  Circuit& cz(std::size_t a, std::size_t b) { return add(GateKind::CZ, {a, b}); }
  Circuit& measure(std::size_t q, std::size_t c) {
    return add(GateKind::Measure, {q}, {c});
  }
  Circuit& reset(std::size_t q) { return add(GateKind::Reset, {q}); }
  Circuit& condx(std::size_t c, std::size_t q) {
    return add(GateKind::CondX, {q}, {c});
  }
  Circuit& condz(std::size_t c, std::size_t q) {
    return add(GateKind::CondZ, {q}, {c});
  }

  /// Appends every gate of `other` (registers widened as needed).
  Circuit& append(const Circuit& other);

  /// Copy with qubit i -> qubit_map[i] and clbit j -> clbit_map[j].
  Circuit remapped(std::span<const std::size_t> qubit_map,
                   std::span<const std::size_t> clbit_map,
                   std::size_t num_qubits, std::size_t num_clbits) const;

  /// Same gates with the noiseless flag set on each.
  Circuit as_noiseless() const;

  /// Throws CircuitError if any structural invariant is broken.
  void validate() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  void check_gate(const Gate& gate) const;

  std::size_t num_qubits_ = 0;
  std::size_t num_clbits_ = 0;
  std::vector<Gate> gates_;
};

/// Parses the line-based circuit format. Throws ParseError.
Circuit parse_circuit(std::string_view text);

/// Canonical text form; lines joined by '\n' without a trailing newline.
std::string serialize_circuit(const Circuit& circuit);

struct GateCensus {
  std::size_t t = 0;  // transversal-compilable gates
  std::size_t h = 0;  // Hadamard gates

  /// Failure-location weight c = t + 3h.
  std::size_t c() const { return t + 3 * h; }

  GateCensus& operator+=(const GateCensus& other) {
    t += other.t;
    h += other.h;
    return *this;
  }
  friend bool operator==(const GateCensus&, const GateCensus&) = default;
};

GateCensus gate_census(const Circuit& circuit);

}  // namespace ftqem
