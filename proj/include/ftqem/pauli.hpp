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
#include <string>
#include <string_view>
#include <vector>

namespace ftqem {

class Circuit;

/// Pauli operator i^phase * (P_0 (x) P_1 (x) ...), letters stored as x/z bits.
///
/// Letter encoding: I=(0,0) X=(1,0) Y=(1,1) Z=(0,1). Y is the Hermitian Y.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t num_qubits) : x_(num_qubits, 0), z_(num_qubits, 0) {}

  /// Accepts an optional sign prefix ("+", "-", "i", "-i", "+i") then letters.
  static PauliString parse(std::string_view text);
  /// Identity with `letter` on each qubit of `support`.
  static PauliString on(std::size_t num_qubits, char letter, std::span<const std::size_t> support);

  std::size_t size() const { return x_.size(); }
  /// Power of i in {0,1,2,3}.
  int phase() const { return phase_; }
  void set_phase(int phase) { phase_ = ((phase % 4) + 4) % 4; }

  bool x(std::size_t q) const { return x_[q] != 0; }
  bool z(std::size_t q) const { return z_[q] != 0; }
  char letter(std::size_t q) const;
  void set_letter(std::size_t q, char letter);

  std::size_t weight() const;
  std::vector<std::size_t> support() const;
  bool is_identity_letters() const { return weight() == 0; }
  /// True when every letter is I or Z.
  bool is_z_type() const;
  bool is_x_type() const;

  /// Product this * other, phase tracked exactly.
  PauliString operator*(const PauliString& other) const;
  bool commutes_with(const PauliString& other) const;

  /// U P U^dag where U is the unitary part of `circuit`.
  /// Throws UnsupportedGate on measurement, reset, or classical control.
  PauliString conjugated_by(const Circuit& circuit) const;

  /// Applies the conjugation for one gate in place.
  void conjugate_gate(const struct Gate& gate);

  /// "+ZZI", "-iXYZ" style.
  std::string to_string() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  void flip_sign() { phase_ = (phase_ + 2) & 3; }

  std::vector<std::uint8_t> x_;
  std::vector<std::uint8_t> z_;
  int phase_ = 0;
};

/// Exponent k of i in the single-qubit product sigma(x1,z1) sigma(x2,z2) = i^k sigma(x1^x2, z1^z2).
int pauli_product_phase(bool x1, bool z1, bool x2, bool z2);

/// True when `p` is a product of `generators` (with its exact sign).
bool in_group(const PauliString& p, std::span<const PauliString> generators);

}  // namespace ftqem
