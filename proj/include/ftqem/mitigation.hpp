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

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ftqem/circuit.hpp"
#include "ftqem/codes.hpp"
#include "ftqem/outcomes.hpp"
#include "ftqem/pauli.hpp"
#include "json.hpp"

namespace ftqem {

enum class Strategy {
  DM,   // direct measurement of the data blocks
  DSM,  // decoding circuit, then post-selection on the non-primary positions
  SS,   // cat-state syndrome extraction, then direct measurement
};

Strategy parse_strategy(std::string_view text);  // dm | dsm | ss
std::string_view to_string(Strategy strategy);

struct DecodePolicy {
  enum class Kind { PostSelect, Correct };
  enum class Band { None, OneSigma };

  Kind kind = Kind::PostSelect;
  Band band = Band::None;

  static DecodePolicy post_select() { return {}; }
  static DecodePolicy correct(Band band = Band::None) { return {Kind::Correct, band}; }

  /// postselect | correct | correct-1sigma
  static DecodePolicy parse(std::string_view text);
  std::string name() const;

  friend bool operator==(const DecodePolicy&, const DecodePolicy&) = default;
};

/// Where one logical output bit lives in the physical classical register.
struct BlockReadout {
  std::vector<std::size_t> clbits;                    // data readout, block order
  std::vector<std::array<std::size_t, 2>> syndromes;  // SS cat-pair clbits, one pair per generator
};

struct ReadoutMap {
  CodeSpec code = CodeSpec::repetition(1);
  Strategy strategy = Strategy::DM;
  std::vector<BlockReadout> blocks;  // logical output bit order
  /// The data readout was taken after a decoding circuit.
  bool decoded = false;
  std::size_t num_clbits = 0;
};

/// Strict majority with tie rejection, or the Hamming band of one standard
/// deviation around d/2: reject when (2w - d)^2 <= d.
std::optional<char> dm_decode_block(std::string_view block, const CodeSpec& code, DecodePolicy policy);
std::optional<char> dsm_decode_block(std::string_view block, const CodeSpec& code);

/// Whole-shot decoders: any rejected block rejects the shot.
std::optional<std::string> dm_decode(std::string_view bits, const ReadoutMap& map, DecodePolicy policy);
std::optional<std::string> dsm_postselect(std::string_view bits, const ReadoutMap& map);
std::optional<std::string> ss_postselect(std::string_view bits, const ReadoutMap& map);

/// Dispatches on map.strategy; throws ConfigError on a strategy/policy mismatch.
std::optional<std::string> decode_shot(std::string_view bits, const ReadoutMap& map, DecodePolicy policy);

struct MitigationResult {
  Strategy strategy = Strategy::DM;
  DecodePolicy policy;
  std::map<std::string, double> logical_counts;
  /// Counts for sampled input, probability mass for exact input.
  double accepted = 0.0;
  double total = 0.0;

  double post_rate() const { return total > 0.0 ? accepted / total : 0.0; }
  /// Accepted logical distribution renormalized to one.
  OutcomeDistribution logical_distribution() const;

  friend bool operator==(const MitigationResult&, const MitigationResult&) = default;
};

void to_json(nlohmann::json& j, const MitigationResult& r);

MitigationResult mitigate(const OutcomeHistogram& hist, const ReadoutMap& map, DecodePolicy policy);
MitigationResult mitigate(const OutcomeDistribution& dist, const ReadoutMap& map, DecodePolicy policy);

struct TailOptions {
  /// Decoding and extraction gates are exempt from noise.
  bool noiseless = false;
};

struct MeasuredCircuit {
  Circuit circuit;
  ReadoutMap readout;
};

/// Appends the strategy's readout to the final blocks of `encoded`: DM measures
/// each block, DSM decodes then measures, SS extracts every generator through
/// a fresh cat pair and then measures the data.
MeasuredCircuit with_strategy_tail(const EncodedCircuit& encoded, Strategy strategy,
                                   const TailOptions& options = {});

/// Readout of an encoded circuit that measures its own logical clbits (DM only).
ReadoutMap readout_from_measurements(const EncodedCircuit& encoded);

/// Code stabilizer generators placed on each block of `layout`.
std::vector<PauliString> embedded_generators(const CodeSpec& code,
                                             const std::vector<std::vector<std::size_t>>& layout,
                                             std::size_t num_qubits);

using PauliCheck = std::pair<PauliString, PauliString>;  // (L, R)

struct PcsOptions {
  /// The left check acts as the identity on code-space inputs; when false its
  /// gates are exempt from noise.
  bool noisy_left = false;
  bool noisy_right = true;
};

/// Layout of a sandwich circuit: data clbit q holds data qubit q, ancilla i
/// is qubit data + i with its X-basis outcome in clbit data + i.
struct PcsCircuit {
  Circuit circuit;
  std::size_t data_qubits = 0;
  std::vector<std::size_t> ancilla_clbits;
};

/// Checks every L and R against the payload's stabilizer group and R = U L U^dag,
/// then emits |+> ancillas, controlled-L, payload, controlled-R, X-basis ancilla readout.
PcsCircuit build_pcs_circuit(const EncodedCircuit& payload, const std::vector<PauliCheck>& checks,
                             const PcsOptions& options = {});
PcsCircuit build_pcs_circuit(const Circuit& payload, const std::vector<PauliString>& stabilizers,
                             const std::vector<PauliCheck>& checks, const PcsOptions& options = {});

/// Same circuit without the left checks: end-of-circuit stabilizer detection.
PcsCircuit build_detection_circuit(const Circuit& payload, const std::vector<PauliString>& checks,
                                   const PcsOptions& options = {});

/// Post-selects on all ancillas reading 0; returns the renormalized data
/// distribution and the acceptance probability.
std::pair<OutcomeDistribution, double> pcs_postselect(const OutcomeDistribution& dist,
                                                      const PcsCircuit& pcs);

}  // namespace ftqem
