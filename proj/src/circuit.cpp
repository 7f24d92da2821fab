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

#include "ftqem/circuit.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <sstream>

#include "ftqem/error.hpp"

namespace ftqem {

namespace {

struct KindInfo {
  GateKind kind;
  std::string_view name;
  std::size_t qubits;  // 0 = variable
  std::size_t clbits;
};

constexpr std::array<KindInfo, 14> kKinds = {{
    {GateKind::X, "x", 1, 0},
    {GateKind::Y, "y", 1, 0},
    {GateKind::Z, "z", 1, 0},
    {GateKind::H, "h", 1, 0},
    {GateKind::S, "s", 1, 0},
    {GateKind::SDag, "sdg", 1, 0},
    {GateKind::Id, "id", 1, 0},
    {GateKind::CX, "cx", 2, 0},
    {GateKind::CZ, "cz", 2, 0},
    {GateKind::Measure, "measure", 1, 1},
    {GateKind::Reset, "reset", 1, 0},
    {GateKind::CondX, "condx", 1, 1},
    {GateKind::CondZ, "condz", 1, 1},
    {GateKind::LogicalFault, "lfault", 0, 0},
}};

const KindInfo& info(GateKind kind) {
  return kKinds[static_cast<std::size_t>(kind)];
}

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) words.push_back(line.substr(i, j - i));
    i = j;
  }
  return words;
}

std::size_t parse_index(std::string_view word, std::size_t line) {
  std::size_t value = 0;
  const auto* end = word.data() + word.size();
  auto [ptr, ec] = std::from_chars(word.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line, "expected a non-negative integer, got '" + std::string(word) + "'");
  }
  return value;
}

}  // namespace

std::string_view mnemonic(GateKind kind) { return info(kind).name; }

std::optional<GateKind> kind_from_mnemonic(std::string_view word) {
  for (const auto& k : kKinds) {
    if (k.name == word) return k.kind;
  }
  return std::nullopt;
}

std::size_t qubit_arity(GateKind kind) { return info(kind).qubits; }
std::size_t clbit_arity(GateKind kind) { return info(kind).clbits; }

bool is_unitary(GateKind kind) {
  switch (kind) {
    case GateKind::Measure:
    case GateKind::Reset:
    case GateKind::CondX:
    case GateKind::CondZ:
    case GateKind::LogicalFault:
      return false;
    default:
      return true;
  }
}

void Circuit::check_gate(const Gate& gate) const {
  const auto& k = info(gate.kind);
  const auto name = std::string(k.name);
  if (k.qubits == 0 ? gate.qubits.empty() : gate.qubits.size() != k.qubits) {
    throw CircuitError(name + ": wrong number of qubit operands");
  }
  if (gate.clbits.size() != k.clbits) {
    throw CircuitError(name + ": wrong number of classical operands");
  }
  for (std::size_t i = 0; i < gate.qubits.size(); ++i) {
    if (gate.qubits[i] >= num_qubits_) {
      throw CircuitError("qubit " + std::to_string(gate.qubits[i]) + " out of range");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (gate.qubits[i] == gate.qubits[j]) {
        throw CircuitError(name + ": repeated qubit " + std::to_string(gate.qubits[i]));
      }
    }
  }
  for (auto c : gate.clbits) {
    if (c >= num_clbits_) {
      throw CircuitError("clbit " + std::to_string(c) + " out of range");
    }
  }
}

void Circuit::widen(std::size_t num_qubits, std::size_t num_clbits) {
  num_qubits_ = std::max(num_qubits_, num_qubits);
  num_clbits_ = std::max(num_clbits_, num_clbits);
}

std::size_t Circuit::add_qubits(std::size_t count) {
  const auto first = num_qubits_;
  num_qubits_ += count;
  return first;
}

std::size_t Circuit::add_clbits(std::size_t count) {
  const auto first = num_clbits_;
  num_clbits_ += count;
  return first;
}

Circuit& Circuit::add(Gate gate) {
  check_gate(gate);
  gates_.push_back(std::move(gate));
  return *this;
}

Circuit& Circuit::add(GateKind kind, std::vector<std::size_t> qubits,
                      std::vector<std::size_t> clbits, bool noiseless) {
  return add(Gate{kind, std::move(qubits), std::move(clbits), noiseless});
}

Circuit& Circuit::append(const Circuit& other) {
  widen(other.num_qubits_, other.num_clbits_);
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
  return *this;
}

Circuit Circuit::remapped(std::span<const std::size_t> qubit_map,
                          std::span<const std::size_t> clbit_map,
                          std::size_t num_qubits, std::size_t num_clbits) const {
  if (qubit_map.size() < num_qubits_ || clbit_map.size() < num_clbits_) {
    throw CircuitError("remap: mapping shorter than register");
  }
  Circuit out(num_qubits, num_clbits);
  for (const auto& g : gates_) {
    Gate mapped = g;
    for (auto& q : mapped.qubits) q = qubit_map[q];
    for (auto& c : mapped.clbits) c = clbit_map[c];
    out.add(std::move(mapped));
  }
  return out;
}

Circuit Circuit::as_noiseless() const {
  Circuit out = *this;
  for (auto& g : out.gates_) g.noiseless = true;
  return out;
}

void Circuit::validate() const {
  std::vector<std::size_t> writes(num_clbits_, 0);
  for (const auto& g : gates_) {
    check_gate(g);
    if (g.kind == GateKind::Measure) {
      ++writes[g.clbits[0]];
    } else if (g.kind == GateKind::CondX || g.kind == GateKind::CondZ) {
      const auto c = g.clbits[0];
      if (writes[c] != 1) {
        throw CircuitError("condition on clbit " + std::to_string(c) +
                           " needs exactly one earlier measurement, found " +
                           std::to_string(writes[c]));
      }
    }
  }
}

Circuit parse_circuit(std::string_view text) {
  Circuit circuit;
  bool have_qubits = false;
  bool seen_gate = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto words = split_words(line);
    if (words.empty()) continue;

    if (words[0] == "qubits") {
      if (have_qubits) throw ParseError(line_no, "duplicate 'qubits' declaration");
      if (words.size() != 2) throw ParseError(line_no, "usage: qubits <n>");
      circuit.widen(parse_index(words[1], line_no), 0);
      have_qubits = true;
      continue;
    }
    if (!have_qubits) throw ParseError(line_no, "'qubits <n>' must come first");
    if (words[0] == "clbits") {
      if (seen_gate) throw ParseError(line_no, "'clbits' must precede all gates");
      if (words.size() != 2) throw ParseError(line_no, "usage: clbits <n>");
      circuit.widen(0, parse_index(words[1], line_no));
      continue;
    }

    bool noiseless = false;
    std::size_t w = 0;
    if (words[0] == "ideal") {
      noiseless = true;
      w = 1;
      if (words.size() < 2) throw ParseError(line_no, "'ideal' needs a gate");
    }
    auto kind = kind_from_mnemonic(words[w]);
    if (!kind) throw ParseError(line_no, "unknown gate '" + std::string(words[w]) + "'");
    std::vector<std::string_view> args(words.begin() + static_cast<std::ptrdiff_t>(w) + 1, words.end());

    Gate gate{*kind, {}, {}, noiseless};
    switch (*kind) {
      case GateKind::Measure:
        if (args.size() != 3 || args[1] != "->") {
          throw ParseError(line_no, "usage: measure <q> -> <c>");
        }
        gate.qubits = {parse_index(args[0], line_no)};
        gate.clbits = {parse_index(args[2], line_no)};
        break;
      case GateKind::CondX:
      case GateKind::CondZ:
        if (args.size() != 2) {
          throw ParseError(line_no, std::string(mnemonic(*kind)) + ": expected <c> <q>");
        }
        gate.clbits = {parse_index(args[0], line_no)};
        gate.qubits = {parse_index(args[1], line_no)};
        break;
      default: {
        const auto arity = qubit_arity(*kind);
        if (arity != 0 && args.size() != arity) {
          throw ParseError(line_no, std::string(mnemonic(*kind)) + ": expected " +
                                        std::to_string(arity) + " qubit operand(s), got " +
                                        std::to_string(args.size()));
        }
        if (arity == 0 && args.empty()) {
          throw ParseError(line_no, std::string(mnemonic(*kind)) + ": expected qubit operands");
        }
        for (auto a : args) gate.qubits.push_back(parse_index(a, line_no));
      }
    }
    try {
      circuit.add(std::move(gate));
    } catch (const CircuitError& e) {
      throw ParseError(line_no, e.what());
    }
    seen_gate = true;
  }
  if (!have_qubits) throw ParseError(line_no, "missing 'qubits <n>' declaration");
  try {
    circuit.validate();
  } catch (const CircuitError& e) {
    throw ParseError(line_no, e.what());
  }
  return circuit;
}

std::string serialize_circuit(const Circuit& circuit) {
  std::ostringstream out;
  out << "qubits " << circuit.num_qubits();
  if (circuit.num_clbits() > 0) out << "\nclbits " << circuit.num_clbits();
  for (const auto& g : circuit.gates()) {
    out << '\n';
    if (g.noiseless) out << "ideal ";
    out << mnemonic(g.kind);
    switch (g.kind) {
      case GateKind::Measure:
        out << ' ' << g.qubits[0] << " -> " << g.clbits[0];
        break;
      case GateKind::CondX:
      case GateKind::CondZ:
        out << ' ' << g.clbits[0] << ' ' << g.qubits[0];
        break;
      default:
        for (auto q : g.qubits) out << ' ' << q;
    }
  }
  return out.str();
}

GateCensus gate_census(const Circuit& circuit) {
  GateCensus census;
  for (const auto& g : circuit.gates()) {
    switch (g.kind) {
      case GateKind::H:
        ++census.h;
        break;
      case GateKind::X:
      case GateKind::Y:
      case GateKind::Z:
      case GateKind::S:
      case GateKind::SDag:
      case GateKind::Id:
      case GateKind::CX:
      case GateKind::CZ:
      case GateKind::CondX:
      case GateKind::CondZ:
        ++census.t;
        break;
      case GateKind::Measure:
      case GateKind::Reset:
        break;
      case GateKind::LogicalFault:
        throw UnsupportedGate("gate census: 'lfault' is not a logical gate");
    }
  }
  return census;
}

}  // namespace ftqem
