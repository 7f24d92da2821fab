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

#include "ftqem/codes.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <numeric>

#include "ftqem/error.hpp"

namespace ftqem {

namespace {

// Rows of the [7,4] Hamming parity-check matrix; pivots 0, 1, 3.
constexpr std::array<std::array<std::size_t, 4>, 3> kHammingRows = {{
    {0, 2, 4, 6},
    {1, 2, 5, 6},
    {3, 4, 5, 6},
}};
constexpr std::array<std::size_t, 3> kSteanePivots = {0, 1, 3};
// X_L representative used by the encoder; input enters on qubit 2.
constexpr std::array<std::size_t, 2> kSteaneInputFanout = {4, 5};

struct BlockPool {
  std::vector<std::vector<std::size_t>> free;  // measured blocks awaiting reuse
};

class Compiler {
 public:
  Compiler(const CodeSpec& code, const Circuit& logical, HadamardMode hmode, LayoutKind layout)
      : code_(code), logical_(logical), hmode_(hmode) {
    const auto L = logical.num_qubits();
    const auto B = code.block_size();
    out_.code = code;
    out_.hmode = hmode;
    out_.layout = make_layout(code, L, layout);
    out_.physical = Circuit(L * B, logical.num_clbits() * B);
    out_.partial_verification = code.kind() == CodeKind::Steane;
    out_.ancillas.readout_clbits.resize(logical.num_clbits());
    for (std::size_t c = 0; c < logical.num_clbits(); ++c) {
      for (std::size_t k = 0; k < B; ++k) out_.ancillas.readout_clbits[c].push_back(c * B + k);
    }
  }

  EncodedCircuit run() {
    for (const auto& g : logical_.gates()) compile_gate(g);
    return std::move(out_);
  }

 private:
  bool steane() const { return code_.kind() == CodeKind::Steane; }

  void emit(GateKind kind, std::vector<std::size_t> qubits, std::vector<std::size_t> clbits,
            bool noiseless) {
    out_.physical.add(kind, std::move(qubits), std::move(clbits), noiseless);
  }

  void each(GateKind kind, const std::vector<std::size_t>& block, bool noiseless) {
    for (auto q : block) emit(kind, {q}, {}, noiseless);
  }

  void compile_gate(const Gate& g) {
    const bool nl = g.noiseless;
    const auto& block = g.qubits.empty() ? empty_ : out_.layout[g.qubits[0]];
    const auto primary = block.empty() ? 0 : block[code_.primary_position()];
    switch (g.kind) {
      case GateKind::X:
      case GateKind::Id:
        each(g.kind, block, nl);
        break;
      case GateKind::Z:
        if (steane()) each(GateKind::Z, block, nl);
        else emit(GateKind::Z, {primary}, {}, nl);
        break;
      case GateKind::Y:
        if (steane()) {
          each(GateKind::Y, block, nl);
        } else {
          for (auto q : block) emit(q == primary ? GateKind::Y : GateKind::X, {q}, {}, nl);
        }
        break;
      case GateKind::S:
      case GateKind::SDag: {
        if (steane()) {
          // S^(x)7 acts as S_L^dag on the Steane code.
          each(g.kind == GateKind::S ? GateKind::SDag : GateKind::S, block, nl);
        } else {
          emit(g.kind, {primary}, {}, nl);
        }
        break;
      }
      case GateKind::CX: {
        const auto& b = out_.layout[g.qubits[1]];
        for (std::size_t k = 0; k < block.size(); ++k) emit(GateKind::CX, {block[k], b[k]}, {}, nl);
        break;
      }
      case GateKind::CZ: {
        const auto& b = out_.layout[g.qubits[1]];
        if (steane()) {
          for (std::size_t k = 0; k < block.size(); ++k) emit(GateKind::CZ, {block[k], b[k]}, {}, nl);
        } else {
          emit(GateKind::CZ, {primary, b[code_.primary_position()]}, {}, nl);
        }
        break;
      }
      case GateKind::H:
        compile_hadamard(g.qubits[0], nl);
        break;
      case GateKind::Measure: {
        const auto& bits = out_.ancillas.readout_clbits[g.clbits[0]];
        for (std::size_t k = 0; k < block.size(); ++k) emit(GateKind::Measure, {block[k]}, {bits[k]}, nl);
        break;
      }
      case GateKind::Reset:
        each(GateKind::Reset, block, nl);
        if (steane()) prep_steane_zero(block, nl);
        break;
      case GateKind::CondX:
      case GateKind::CondZ: {
        const auto& bits = out_.ancillas.readout_clbits[g.clbits[0]];
        if (steane()) {
          // Logical value is the parity of all seven readout bits, and
          // X^(x)7 / Z^(x)7 are the logical operators.
          for (auto c : bits) {
            for (auto q : block) emit(g.kind, {q}, {c}, nl);
          }
        } else if (g.kind == GateKind::CondX) {
          for (auto q : block) emit(GateKind::CondX, {q}, {bits[0]}, nl);
        } else {
          emit(GateKind::CondZ, {primary}, {bits[0]}, nl);
        }
        break;
      }
      case GateKind::LogicalFault:
        throw UnsupportedGate("compile: 'lfault' cannot appear in a logical circuit");
    }
  }

  void prep_steane_zero(const std::vector<std::size_t>& block, bool nl) {
    for (auto p : kSteanePivots) emit(GateKind::H, {block[p]}, {}, nl);
    for (std::size_t r = 0; r < kHammingRows.size(); ++r) {
      for (auto q : kHammingRows[r]) {
        if (q != kSteanePivots[r]) emit(GateKind::CX, {block[kSteanePivots[r]], block[q]}, {}, nl);
      }
    }
  }

  void compile_hadamard(std::size_t logical_qubit, bool nl) {
    auto& block = out_.layout[logical_qubit];
    if (steane()) {
      each(GateKind::H, block, nl);
      return;
    }
    const auto d = block.size();
    if (hmode_ == HadamardMode::NonFT) {
      for (std::size_t k = 1; k < d; ++k) emit(GateKind::CX, {block[0], block[k]}, {}, nl);
      emit(GateKind::H, {block[0]}, {}, nl);
      for (std::size_t k = 1; k < d; ++k) emit(GateKind::Id, {block[k]}, {}, nl);
      for (std::size_t k = 1; k < d; ++k) emit(GateKind::CX, {block[0], block[k]}, {}, nl);
      return;
    }

    // One-bit teleportation: |+>_L ancilla, CZ_L, X measurement of the data
    // block, X_L^parity on the ancilla, which then carries H|psi>_L.
    const bool offline_ideal = nl || hmode_ == HadamardMode::IdealizedAncilla;
    std::vector<std::size_t> anc;
    if (!pool_.free.empty()) {
      anc = pool_.free.back();
      pool_.free.pop_back();
      each(GateKind::Reset, anc, offline_ideal);
    } else {
      const auto first = out_.physical.add_qubits(d);
      for (std::size_t k = 0; k < d; ++k) {
        anc.push_back(first + k);
        out_.ancillas.gadget_qubits.push_back(first + k);
      }
    }
    emit(GateKind::H, {anc[0]}, {}, offline_ideal);
    for (std::size_t k = 1; k < d; ++k) emit(GateKind::CX, {anc[0], anc[k]}, {}, offline_ideal);
    if (hmode_ == HadamardMode::IdealizedAncilla) {
      emit(GateKind::LogicalFault, anc, {}, nl);
    }
    emit(GateKind::CZ, {block[0], anc[0]}, {}, nl);
    const auto first_bit = out_.physical.add_clbits(d);
    for (std::size_t k = 0; k < d; ++k) {
      emit(GateKind::H, {block[k]}, {}, nl);
      emit(GateKind::Measure, {block[k]}, {first_bit + k}, nl);
      out_.ancillas.gadget_clbits.push_back(first_bit + k);
    }
    for (std::size_t k = 0; k < d; ++k) {
      for (auto q : anc) emit(GateKind::CondX, {q}, {first_bit + k}, nl);
    }
    pool_.free.push_back(block);
    block = anc;
  }

  const CodeSpec& code_;
  const Circuit& logical_;
  HadamardMode hmode_;
  EncodedCircuit out_;
  BlockPool pool_;
  const std::vector<std::size_t> empty_;
};

}  // namespace

CodeSpec CodeSpec::repetition(std::size_t d) {
  if (d < 1) throw ConfigError("repetition code distance must be >= 1");
  return CodeSpec(CodeKind::Repetition, d);
}

CodeSpec CodeSpec::steane() { return CodeSpec(CodeKind::Steane, 3); }

CodeSpec CodeSpec::parse(std::string_view text) {
  if (text == "steane") return steane();
  if (text.starts_with("rep:")) {
    auto digits = text.substr(4);
    std::size_t d = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), d);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && !digits.empty()) {
      return repetition(d);
    }
  }
  throw ConfigError("unknown code '" + std::string(text) + "' (expected rep:<d> or steane)");
}

std::string CodeSpec::name() const {
  return kind_ == CodeKind::Steane ? "steane" : "rep:" + std::to_string(d_);
}

HadamardMode parse_hadamard_mode(std::string_view text) {
  if (text == "nonft") return HadamardMode::NonFT;
  if (text == "ft") return HadamardMode::FTGadget;
  if (text == "ideal") return HadamardMode::IdealizedAncilla;
  throw ConfigError("unknown hadamard mode '" + std::string(text) + "' (expected nonft|ft|ideal)");
}

std::string_view to_string(HadamardMode mode) {
  switch (mode) {
    case HadamardMode::NonFT: return "nonft";
    case HadamardMode::FTGadget: return "ft";
    case HadamardMode::IdealizedAncilla: return "ideal";
  }
  return "?";
}

LayoutKind parse_layout_kind(std::string_view text) {
  if (text == "interleaved") return LayoutKind::Interleaved;
  if (text == "blocked") return LayoutKind::Blocked;
  throw ConfigError("unknown layout '" + std::string(text) + "' (expected interleaved|blocked)");
}

std::vector<std::vector<std::size_t>> make_layout(const CodeSpec& code, std::size_t logical_qubits,
                                                  LayoutKind kind) {
  const auto B = code.block_size();
  std::vector<std::vector<std::size_t>> layout(logical_qubits);
  for (std::size_t j = 0; j < logical_qubits; ++j) {
    for (std::size_t k = 0; k < B; ++k) {
      layout[j].push_back(kind == LayoutKind::Interleaved ? k * logical_qubits + j : j * B + k);
    }
  }
  return layout;
}

nlohmann::json layout_json(const EncodedCircuit& encoded) {
  nlohmann::json layout = nlohmann::json::object();
  for (std::size_t j = 0; j < encoded.layout.size(); ++j) layout[std::to_string(j)] = encoded.layout[j];
  nlohmann::json readout = nlohmann::json::object();
  for (std::size_t c = 0; c < encoded.ancillas.readout_clbits.size(); ++c) {
    readout[std::to_string(c)] = encoded.ancillas.readout_clbits[c];
  }
  return {
      {"code", encoded.code.name()},
      {"hmode", std::string(to_string(encoded.hmode))},
      {"layout", layout},
      {"ancillas",
       {{"readout_clbits", readout},
        {"gadget_qubits", encoded.ancillas.gadget_qubits},
        {"gadget_clbits", encoded.ancillas.gadget_clbits}}},
      {"partial_verification", encoded.partial_verification},
  };
}

std::vector<PauliString> stabilizer_generators(const CodeSpec& code) {
  std::vector<PauliString> gens;
  const auto B = code.block_size();
  if (code.kind() == CodeKind::Steane) {
    for (char letter : {'X', 'Z'}) {
      for (const auto& row : kHammingRows) gens.push_back(PauliString::on(B, letter, row));
    }
    return gens;
  }
  for (std::size_t i = 0; i + 1 < B; ++i) {
    const std::array<std::size_t, 2> pair = {i, i + 1};
    gens.push_back(PauliString::on(B, 'Z', pair));
  }
  return gens;
}

PauliString logical_x(const CodeSpec& code) {
  std::vector<std::size_t> all(code.block_size());
  std::iota(all.begin(), all.end(), 0);
  return PauliString::on(code.block_size(), 'X', all);
}

PauliString logical_z(const CodeSpec& code) {
  if (code.kind() == CodeKind::Steane) {
    std::vector<std::size_t> all(7);
    std::iota(all.begin(), all.end(), 0);
    return PauliString::on(7, 'Z', all);
  }
  const std::array<std::size_t, 1> first = {0};
  return PauliString::on(code.block_size(), 'Z', first);
}

Circuit encoding_circuit(const CodeSpec& code) {
  const auto B = code.block_size();
  Circuit c(B);
  if (code.kind() == CodeKind::Steane) {
    for (auto q : kSteaneInputFanout) c.cx(2, q);
    for (auto p : kSteanePivots) c.h(p);
    for (std::size_t r = 0; r < kHammingRows.size(); ++r) {
      for (auto q : kHammingRows[r]) {
        if (q != kSteanePivots[r]) c.cx(kSteanePivots[r], q);
      }
    }
    return c;
  }
  for (std::size_t k = 1; k < B; ++k) c.cx(0, k);
  return c;
}

Circuit decoding_circuit(const CodeSpec& code) {
  const auto enc = encoding_circuit(code);
  Circuit dec(enc.num_qubits());
  for (auto it = enc.gates().rbegin(); it != enc.gates().rend(); ++it) dec.add(*it);
  return dec;
}

Circuit state_prep(const CodeSpec& code, std::string_view basis, LayoutKind layout_kind) {
  const auto L = basis.size();
  const auto layout = make_layout(code, L, layout_kind);
  Circuit c(L * code.block_size());
  for (std::size_t j = 0; j < L; ++j) {
    if (basis[j] != '0' && basis[j] != '1') {
      throw ConfigError("state_prep: basis must be a string of 0/1, got '" + std::string(basis) + "'");
    }
    const auto& block = layout[j];
    if (code.kind() == CodeKind::Steane) {
      for (auto p : kSteanePivots) c.h(block[p]);
      for (std::size_t r = 0; r < kHammingRows.size(); ++r) {
        for (auto q : kHammingRows[r]) {
          if (q != kSteanePivots[r]) c.cx(block[kSteanePivots[r]], block[q]);
        }
      }
    }
    if (basis[j] == '1') {
      for (auto q : block) c.x(q);
    }
  }
  return c;
}

EncodedCircuit compile_logical(const CodeSpec& code, const Circuit& logical, HadamardMode hmode,
                               LayoutKind layout) {
  logical.validate();
  if (code.kind() == CodeKind::Steane && hmode == HadamardMode::NonFT) {
    throw ConfigError("compile: Steane H is transversal; NonFT mode does not apply");
  }
  for (const auto& g : logical.gates()) {
    if (g.kind == GateKind::LogicalFault) {
      throw UnsupportedGate("compile: 'lfault' cannot appear in a logical circuit");
    }
  }
  if (code.is_unencoded()) {
    EncodedCircuit out;
    out.code = code;
    out.hmode = hmode;
    out.physical = logical;
    out.layout = make_layout(code, logical.num_qubits(), layout);
    for (std::size_t c = 0; c < logical.num_clbits(); ++c) out.ancillas.readout_clbits.push_back({c});
    return out;
  }
  return Compiler(code, logical, hmode, layout).run();
}

Circuit ss_extraction_circuit(const CodeSpec& code, const PauliString& generator) {
  const auto B = code.block_size();
  if (generator.size() != B) throw Error("ss extraction: generator size does not match block");
  const auto support = generator.support();
  if (!generator.is_z_type() || support.size() != 2) {
    throw UnsupportedGate("ss extraction: only weight-2 Z-type generators are supported, got " +
                          generator.to_string());
  }
  Circuit c(B + 2, 2);
  c.h(B);
  c.cx(B, B + 1);
  c.cx(support[0], B);
  c.cx(support[1], B + 1);
  c.measure(B, 0);
  c.measure(B + 1, 1);
  return c;
}

std::size_t census_c(const Circuit& logical) { return gate_census(logical).c(); }

}  // namespace ftqem
