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

#include "ftqem/pauli.hpp"

#include <algorithm>

#include "ftqem/circuit.hpp"
#include "ftqem/error.hpp"

namespace ftqem {

int pauli_product_phase(bool x1, bool z1, bool x2, bool z2) {
  // Rows/columns indexed I, Z, X, Y (index = 2x + z). XY = iZ, YZ = iX, ZX = iY.
  static constexpr int kPhase[4][4] = {
      {0, 0, 0, 0},
      {0, 0, 1, 3},
      {0, 3, 0, 1},
      {0, 1, 3, 0},
  };
  return kPhase[2 * x1 + z1][2 * x2 + z2];
}

PauliString PauliString::parse(std::string_view text) {
  int phase = 0;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (!text.empty() && text.front() == '-') {
    phase = 2;
    text.remove_prefix(1);
  }
  if (!text.empty() && text.front() == 'i') {
    phase += 1;
    text.remove_prefix(1);
  }
  PauliString p(text.size());
  for (std::size_t q = 0; q < text.size(); ++q) {
    if (text[q] != 'I' && text[q] != 'X' && text[q] != 'Y' && text[q] != 'Z') {
      throw ConfigError("invalid Pauli string '" + std::string(text) + "'");
    }
    p.set_letter(q, text[q]);
  }
  p.set_phase(phase);
  return p;
}

PauliString PauliString::on(std::size_t num_qubits, char letter,
                            std::span<const std::size_t> support) {
  PauliString p(num_qubits);
  for (auto q : support) p.set_letter(q, letter);
  return p;
}

char PauliString::letter(std::size_t q) const {
  static constexpr char kLetters[2][2] = {{'I', 'Z'}, {'X', 'Y'}};
  return kLetters[x_[q]][z_[q]];
}

void PauliString::set_letter(std::size_t q, char letter) {
  switch (letter) {
    case 'I': x_[q] = 0; z_[q] = 0; break;
    case 'X': x_[q] = 1; z_[q] = 0; break;
    case 'Y': x_[q] = 1; z_[q] = 1; break;
    case 'Z': x_[q] = 0; z_[q] = 1; break;
    default: throw Error(std::string("invalid Pauli letter '") + letter + "'");
  }
}

std::size_t PauliString::weight() const {
  std::size_t w = 0;
  for (std::size_t q = 0; q < size(); ++q) w += (x_[q] | z_[q]);
  return w;
}

std::vector<std::size_t> PauliString::support() const {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < size(); ++q) {
    if (x_[q] | z_[q]) out.push_back(q);
  }
  return out;
}

bool PauliString::is_z_type() const {
  return std::all_of(x_.begin(), x_.end(), [](auto b) { return b == 0; });
}

bool PauliString::is_x_type() const {
  return std::all_of(z_.begin(), z_.end(), [](auto b) { return b == 0; });
}

PauliString PauliString::operator*(const PauliString& other) const {
  if (other.size() != size()) throw Error("Pauli product: size mismatch");
  PauliString out(size());
  int phase = phase_ + other.phase_;
  for (std::size_t q = 0; q < size(); ++q) {
    phase += pauli_product_phase(x_[q], z_[q], other.x_[q], other.z_[q]);
    out.x_[q] = x_[q] ^ other.x_[q];
    out.z_[q] = z_[q] ^ other.z_[q];
  }
  out.set_phase(phase);
  return out;
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (other.size() != size()) throw Error("Pauli commutation: size mismatch");
  unsigned parity = 0;
  for (std::size_t q = 0; q < size(); ++q) {
    parity ^= (x_[q] & other.z_[q]) ^ (z_[q] & other.x_[q]);
  }
  return parity == 0;
}

void PauliString::conjugate_gate(const Gate& gate) {
  const auto& qs = gate.qubits;
  switch (gate.kind) {
    case GateKind::Id:
      break;
    case GateKind::X:
      if (z_[qs[0]]) flip_sign();
      break;
    case GateKind::Z:
      if (x_[qs[0]]) flip_sign();
      break;
    case GateKind::Y:
      if (x_[qs[0]] ^ z_[qs[0]]) flip_sign();
      break;
    case GateKind::H: {
      const auto q = qs[0];
      if (x_[q] & z_[q]) flip_sign();
      std::swap(x_[q], z_[q]);
      break;
    }
    case GateKind::S: {
      const auto q = qs[0];
      if (x_[q] & z_[q]) flip_sign();
      z_[q] ^= x_[q];
      break;
    }
    case GateKind::SDag: {
      const auto q = qs[0];
      if (x_[q] & (z_[q] ^ 1)) flip_sign();
      z_[q] ^= x_[q];
      break;
    }
    case GateKind::CX: {
      const auto c = qs[0], t = qs[1];
      if (x_[c] & z_[t] & (x_[t] ^ z_[c] ^ 1)) flip_sign();
      x_[t] ^= x_[c];
      z_[c] ^= z_[t];
      break;
    }
    case GateKind::CZ: {
      const auto a = qs[0], b = qs[1];
      if (x_[a] & x_[b] & (z_[a] ^ z_[b])) flip_sign();
      z_[a] ^= x_[b];
      z_[b] ^= x_[a];
      break;
    }
    default:
      throw UnsupportedGate("Pauli conjugation: '" + std::string(mnemonic(gate.kind)) +
                            "' is not a unitary Clifford gate");
  }
}

PauliString PauliString::conjugated_by(const Circuit& circuit) const {
  if (circuit.num_qubits() != size()) throw Error("Pauli conjugation: size mismatch");
  PauliString out = *this;
  for (const auto& g : circuit.gates()) out.conjugate_gate(g);
  return out;
}

std::string PauliString::to_string() const {
  static constexpr const char* kPrefix[4] = {"+", "+i", "-", "-i"};
  std::string s = kPrefix[phase_];
  for (std::size_t q = 0; q < size(); ++q) s += letter(q);
  return s;
}

bool in_group(const PauliString& p, std::span<const PauliString> generators) {
  const auto n = p.size();
  // Row-reduce [generator symplectic vectors | selection mask] over GF(2).
  struct Row {
    std::vector<std::uint8_t> bits;  // x then z
    std::vector<std::uint8_t> pick;
  };
  std::vector<Row> rows;
  for (std::size_t g = 0; g < generators.size(); ++g) {
    if (generators[g].size() != n) throw Error("group membership: size mismatch");
    Row r{std::vector<std::uint8_t>(2 * n), std::vector<std::uint8_t>(generators.size(), 0)};
    for (std::size_t q = 0; q < n; ++q) {
      r.bits[q] = generators[g].x(q);
      r.bits[n + q] = generators[g].z(q);
    }
    r.pick[g] = 1;
    rows.push_back(std::move(r));
  }
  std::vector<std::uint8_t> target(2 * n);
  for (std::size_t q = 0; q < n; ++q) {
    target[q] = p.x(q);
    target[n + q] = p.z(q);
  }
  std::vector<std::uint8_t> chosen(generators.size(), 0);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < 2 * n && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && !rows[pivot].bits[col]) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && rows[r].bits[col]) {
        for (std::size_t k = 0; k < 2 * n; ++k) rows[r].bits[k] ^= rows[rank].bits[k];
        for (std::size_t k = 0; k < chosen.size(); ++k) rows[r].pick[k] ^= rows[rank].pick[k];
      }
    }
    if (target[col]) {
      for (std::size_t k = 0; k < 2 * n; ++k) target[k] ^= rows[rank].bits[k];
      for (std::size_t k = 0; k < chosen.size(); ++k) chosen[k] ^= rows[rank].pick[k];
    }
    ++rank;
  }
  if (std::any_of(target.begin(), target.end(), [](auto b) { return b != 0; })) return false;
  PauliString product(n);
  for (std::size_t g = 0; g < generators.size(); ++g) {
    if (chosen[g]) product = product * generators[g];
  }
  return product == p;
}

}  // namespace ftqem
