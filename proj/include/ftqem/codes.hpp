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
#include <string>
#include <string_view>
#include <vector>

#include "ftqem/circuit.hpp"
#include "ftqem/pauli.hpp"
#include "json.hpp"

namespace ftqem {

enum class CodeKind { Repetition, Steane };

/// A code a logical qubit is encoded into: repetition(d) or Steane [[7,1,3]].
class CodeSpec {
 public:
  static CodeSpec repetition(std::size_t d);
  static CodeSpec steane();
  /// "rep:<d>" or "steane".
  static CodeSpec parse(std::string_view text);

  CodeKind kind() const { return kind_; }
  std::size_t distance() const { return kind_ == CodeKind::Steane ? 3 : d_; }
  std::size_t block_size() const { return kind_ == CodeKind::Steane ? 7 : d_; }
  /// Block position that carries the logical value after decoding.
  std::size_t primary_position() const { return kind_ == CodeKind::Steane ? 2 : 0; }
  /// Repetition code of length one: compile is the identity.
  bool is_unencoded() const { return kind_ == CodeKind::Repetition && d_ == 1; }
  std::string name() const;

  friend bool operator==(const CodeSpec&, const CodeSpec&) = default;

 private:
  CodeSpec(CodeKind kind, std::size_t d) : kind_(kind), d_(d) {}
  CodeKind kind_ = CodeKind::Repetition;
  std::size_t d_ = 1;
};

enum class HadamardMode {
  NonFT,             // decode, H, re-encode inside the block
  FTGadget,          // one-bit teleportation through a |+>_L ancilla block
  IdealizedAncilla,  // same gadget, ancilla prepared noiselessly plus one logical fault site
};

HadamardMode parse_hadamard_mode(std::string_view text);  // nonft | ft | ideal
std::string_view to_string(HadamardMode mode);

enum class LayoutKind { Interleaved, Blocked };
LayoutKind parse_layout_kind(std::string_view text);

/// Physical qubits of each logical qubit. Interleaved: replica k of logical j
/// sits at k * L + j. Blocked: j * B + k.
std::vector<std::vector<std::size_t>> make_layout(const CodeSpec& code, std::size_t logical_qubits,
                                                  LayoutKind kind);

struct AncillaMap {
  /// Logical clbit -> physical clbits holding that block's readout (block order).
  std::vector<std::vector<std::size_t>> readout_clbits;
  std::vector<std::size_t> gadget_qubits;
  std::vector<std::size_t> gadget_clbits;
};

struct EncodedCircuit {
  CodeSpec code = CodeSpec::repetition(1);
  HadamardMode hmode = HadamardMode::FTGadget;
  Circuit physical;
  /// Final physical block of each logical qubit (H gadgets move blocks).
  std::vector<std::vector<std::size_t>> layout;
  AncillaMap ancillas;
  /// Direct measurement on this code checks only part of the stabilizer.
  bool partial_verification = false;
};

/// Sidecar layout map written next to the serialized physical circuit.
nlohmann::json layout_json(const EncodedCircuit& encoded);

/// Block-local stabilizer generators (repetition: Z_i Z_{i+1}; Steane: 3 X-type then 3 Z-type).
std::vector<PauliString> stabilizer_generators(const CodeSpec& code);
PauliString logical_x(const CodeSpec& code);
PauliString logical_z(const CodeSpec& code);

/// Prepares the logical computational-basis state `basis` (one char per logical qubit).
Circuit state_prep(const CodeSpec& code, std::string_view basis,
                   LayoutKind layout = LayoutKind::Interleaved);

/// Block-local encoder taking the input state on primary_position() to the code space.
Circuit encoding_circuit(const CodeSpec& code);

/// Block-local decoder: maps every stabilizer generator onto a single-qubit Z
/// and the logical value onto primary_position().
Circuit decoding_circuit(const CodeSpec& code);

/// Compiles a logical Clifford circuit onto the code.
EncodedCircuit compile_logical(const CodeSpec& code, const Circuit& logical, HadamardMode hmode,
                               LayoutKind layout = LayoutKind::Interleaved);

/// Cat-state extraction of a weight-2 Z-type generator. Block qubits are
/// 0..B-1, the two cat qubits are B and B+1, their outcomes go to clbits 0, 1.
Circuit ss_extraction_circuit(const CodeSpec& code, const PauliString& generator);

/// c = t + 3h of the logical circuit.
std::size_t census_c(const Circuit& logical);

}  // namespace ftqem
