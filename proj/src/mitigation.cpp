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

#include "ftqem/mitigation.hpp"

#include <algorithm>
#include <cassert>

#include "ftqem/error.hpp"

namespace ftqem {

namespace {

constexpr std::array<std::array<std::size_t, 4>, 3> kSteaneZChecks = {{
    {0, 2, 4, 6},
    {1, 2, 5, 6},
    {3, 4, 5, 6},
}};

std::size_t weight(std::string_view bits) {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), '1'));
}

std::string gather(std::string_view bits, const std::vector<std::size_t>& clbits) {
  std::string out;
  out.reserve(clbits.size());
  for (auto c : clbits) out.push_back(bits[c]);
  return out;
}

void check_length(std::string_view bits, const ReadoutMap& map) {
  if (bits.size() != map.num_clbits) {
    throw Error("readout: expected " + std::to_string(map.num_clbits) + " bits, got " +
                std::to_string(bits.size()));
  }
}

void emit_controlled(Circuit& c, std::size_t ancilla, const PauliString& p, bool noiseless) {
  if (p.phase() % 2 != 0) throw ConfigError("pcs: check " + p.to_string() + " is not Hermitian");
  for (std::size_t q = 0; q < p.size(); ++q) {
    switch (p.letter(q)) {
      case 'X':
        c.add(GateKind::CX, {ancilla, q}, {}, noiseless);
        break;
      case 'Z':
        c.add(GateKind::CZ, {ancilla, q}, {}, noiseless);
        break;
      case 'Y':
        c.add(GateKind::SDag, {q}, {}, noiseless);
        c.add(GateKind::CX, {ancilla, q}, {}, noiseless);
        c.add(GateKind::S, {q}, {}, noiseless);
        break;
      default:
        break;
    }
  }
  if (p.phase() == 2) c.add(GateKind::Z, {ancilla}, {}, noiseless);
}

PcsCircuit build_sandwich(const Circuit& payload, const std::vector<PauliString>* left,
                          const std::vector<PauliString>& right, const PcsOptions& options) {
  for (const auto& g : payload.gates()) {
    if (!is_unitary(g.kind)) {
      throw UnsupportedGate("pcs: payload must be unitary, found '" + std::string(mnemonic(g.kind)) + "'");
    }
  }
  const auto n = payload.num_qubits();
  const auto m = right.size();
  PcsCircuit out{Circuit(n + m, n + m), n, {}};
  auto& c = out.circuit;
  for (std::size_t i = 0; i < m; ++i) c.h(n + i);
  if (left) {
    for (std::size_t i = 0; i < m; ++i) emit_controlled(c, n + i, (*left)[i], !options.noisy_left);
  }
  c.append(payload);
  for (std::size_t i = 0; i < m; ++i) emit_controlled(c, n + i, right[i], !options.noisy_right);
  for (std::size_t i = 0; i < m; ++i) {
    c.h(n + i);
    c.measure(n + i, n + i);
    out.ancilla_clbits.push_back(n + i);
  }
  for (std::size_t q = 0; q < n; ++q) c.measure(q, q);
  return out;
}

}  // namespace

Strategy parse_strategy(std::string_view text) {
  if (text == "dm") return Strategy::DM;
  if (text == "dsm") return Strategy::DSM;
  if (text == "ss") return Strategy::SS;
  throw ConfigError("unknown strategy '" + std::string(text) + "' (expected dm|dsm|ss)");
}

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::DM: return "dm";
    case Strategy::DSM: return "dsm";
    case Strategy::SS: return "ss";
  }
  return "?";
}

DecodePolicy DecodePolicy::parse(std::string_view text) {
  if (text == "postselect") return post_select();
  if (text == "correct") return correct(Band::None);
  if (text == "correct-1sigma") return correct(Band::OneSigma);
  throw ConfigError("unknown policy '" + std::string(text) +
                    "' (expected postselect|correct|correct-1sigma)");
}

std::string DecodePolicy::name() const {
  if (kind == Kind::PostSelect) return "postselect";
  return band == Band::None ? "correct" : "correct-1sigma";
}

std::optional<char> dm_decode_block(std::string_view block, const CodeSpec& code, DecodePolicy policy) {
  if (block.size() != code.block_size()) throw Error("dm decode: block length mismatch");
  if (code.kind() == CodeKind::Steane) {
    if (policy.kind != DecodePolicy::Kind::PostSelect) {
      throw ConfigError("correction policies apply to the repetition code only");
    }
    for (const auto& row : kSteaneZChecks) {
      unsigned parity = 0;
      for (auto q : row) parity ^= block[q] == '1';
      if (parity) return std::nullopt;
    }
    return (weight(block) & 1) ? '1' : '0';
  }
  if (code.is_unencoded()) return block[0];
  const auto d = block.size();
  const auto w = weight(block);
  if (policy.kind == DecodePolicy::Kind::PostSelect) {
    if (w == 0) return '0';
    if (w == d) return '1';
    return std::nullopt;
  }
  const auto diff = static_cast<long long>(2 * w) - static_cast<long long>(d);
  if (diff == 0) return std::nullopt;
  if (policy.band == DecodePolicy::Band::OneSigma && diff * diff <= static_cast<long long>(d)) {
    return std::nullopt;
  }
  assert(std::min(w, d - w) <= (d - 1) / 2);
  return diff > 0 ? '1' : '0';
}

std::optional<char> dsm_decode_block(std::string_view block, const CodeSpec& code) {
  if (block.size() != code.block_size()) throw Error("dsm decode: block length mismatch");
  const auto primary = code.primary_position();
  for (std::size_t k = 0; k < block.size(); ++k) {
    if (k != primary && block[k] != '0') return std::nullopt;
  }
  return block[primary];
}

std::optional<std::string> dm_decode(std::string_view bits, const ReadoutMap& map, DecodePolicy policy) {
  check_length(bits, map);
  std::string logical;
  for (const auto& b : map.blocks) {
    auto v = dm_decode_block(gather(bits, b.clbits), map.code, policy);
    if (!v) return std::nullopt;
    logical.push_back(*v);
  }
  return logical;
}

std::optional<std::string> dsm_postselect(std::string_view bits, const ReadoutMap& map) {
  check_length(bits, map);
  if (!map.decoded) throw ConfigError("dsm: readout was not taken after a decoding circuit");
  std::string logical;
  for (const auto& b : map.blocks) {
    auto v = dsm_decode_block(gather(bits, b.clbits), map.code);
    if (!v) return std::nullopt;
    logical.push_back(*v);
  }
  return logical;
}

std::optional<std::string> ss_postselect(std::string_view bits, const ReadoutMap& map) {
  check_length(bits, map);
  const auto expected = stabilizer_generators(map.code).size();
  for (const auto& b : map.blocks) {
    if (b.syndromes.size() != expected) throw ConfigError("ss: missing syndrome bits");
    for (const auto& [s0, s1] : b.syndromes) {
      if (bits[s0] != bits[s1]) return std::nullopt;
    }
  }
  return dm_decode(bits, map, DecodePolicy::post_select());
}

std::optional<std::string> decode_shot(std::string_view bits, const ReadoutMap& map, DecodePolicy policy) {
  if (policy.kind == DecodePolicy::Kind::Correct &&
      (map.strategy != Strategy::DM || map.code.kind() != CodeKind::Repetition)) {
    throw ConfigError("correction policies apply to DM on the repetition code only");
  }
  switch (map.strategy) {
    case Strategy::DM: return dm_decode(bits, map, policy);
    case Strategy::DSM: return dsm_postselect(bits, map);
    case Strategy::SS: return ss_postselect(bits, map);
  }
  return std::nullopt;
}

OutcomeDistribution MitigationResult::logical_distribution() const {
  OutcomeDistribution d;
  if (!logical_counts.empty()) d.num_clbits = logical_counts.begin()->first.size();
  if (accepted <= 0.0) return d;
  for (const auto& [key, w] : logical_counts) d.probs[key] = w / accepted;
  return d;
}

void to_json(nlohmann::json& j, const MitigationResult& r) {
  j = {{"strategy", std::string(to_string(r.strategy))},
       {"policy", r.policy.name()},
       {"accepted", r.accepted},
       {"total", r.total},
       {"post_rate", r.post_rate()},
       {"logical_counts", r.logical_counts}};
}

namespace {

template <typename Map>
MitigationResult fold(const Map& weights, const ReadoutMap& map, DecodePolicy policy) {
  MitigationResult r{map.strategy, policy, {}, 0.0, 0.0};
  for (const auto& [key, w] : weights) {
    const auto weight = static_cast<double>(w);
    r.total += weight;
    if (auto logical = decode_shot(key, map, policy)) {
      r.logical_counts[*logical] += weight;
      r.accepted += weight;
    }
  }
  return r;
}

}  // namespace

MitigationResult mitigate(const OutcomeHistogram& hist, const ReadoutMap& map, DecodePolicy policy) {
  return fold(hist.counts, map, policy);
}

MitigationResult mitigate(const OutcomeDistribution& dist, const ReadoutMap& map, DecodePolicy policy) {
  return fold(dist.probs, map, policy);
}

MeasuredCircuit with_strategy_tail(const EncodedCircuit& encoded, Strategy strategy,
                                   const TailOptions& options) {
  for (const auto& g : encoded.physical.gates()) {
    if (g.kind == GateKind::Measure &&
        std::find(encoded.ancillas.gadget_clbits.begin(), encoded.ancillas.gadget_clbits.end(),
                  g.clbits[0]) == encoded.ancillas.gadget_clbits.end()) {
      throw ConfigError("strategy tail: circuit already measures its logical qubits");
    }
  }
  const auto& code = encoded.code;
  if (strategy == Strategy::SS && code.kind() != CodeKind::Repetition) {
    throw ConfigError("ss: cat-state extraction supports the repetition code only");
  }
  MeasuredCircuit out{encoded.physical, {code, strategy, {}, strategy == Strategy::DSM, 0}};
  auto& c = out.circuit;
  const auto B = code.block_size();
  const auto generators = stabilizer_generators(code);
  for (const auto& block : encoded.layout) {
    BlockReadout readout;
    if (strategy == Strategy::SS) {
      for (const auto& g : generators) {
        const auto cat = c.add_qubits(2);
        const auto bits = c.add_clbits(2);
        std::vector<std::size_t> qmap(block.begin(), block.end());
        qmap.push_back(cat);
        qmap.push_back(cat + 1);
        const std::size_t cmap[2] = {bits, bits + 1};
        auto ext = ss_extraction_circuit(code, g);
        if (options.noiseless) ext = ext.as_noiseless();
        c.append(ext.remapped(qmap, cmap, c.num_qubits(), c.num_clbits()));
        readout.syndromes.push_back({bits, bits + 1});
      }
    }
    if (strategy == Strategy::DSM) {
      auto dec = decoding_circuit(code);
      if (options.noiseless) dec = dec.as_noiseless();
      c.append(dec.remapped(block, {}, c.num_qubits(), c.num_clbits()));
    }
    const auto first = c.add_clbits(B);
    for (std::size_t k = 0; k < B; ++k) {
      c.measure(block[k], first + k);
      readout.clbits.push_back(first + k);
    }
    out.readout.blocks.push_back(std::move(readout));
  }
  out.readout.num_clbits = c.num_clbits();
  return out;
}

ReadoutMap readout_from_measurements(const EncodedCircuit& encoded) {
  ReadoutMap map{encoded.code, Strategy::DM, {}, false, encoded.physical.num_clbits()};
  for (const auto& bits : encoded.ancillas.readout_clbits) map.blocks.push_back({bits, {}});
  return map;
}

std::vector<PauliString> embedded_generators(const CodeSpec& code,
                                             const std::vector<std::vector<std::size_t>>& layout,
                                             std::size_t num_qubits) {
  std::vector<PauliString> out;
  for (const auto& block : layout) {
    for (const auto& g : stabilizer_generators(code)) {
      PauliString p(num_qubits);
      for (std::size_t k = 0; k < block.size(); ++k) p.set_letter(block[k], g.letter(k));
      p.set_phase(g.phase());
      out.push_back(std::move(p));
    }
  }
  return out;
}

PcsCircuit build_pcs_circuit(const EncodedCircuit& payload, const std::vector<PauliCheck>& checks,
                             const PcsOptions& options) {
  return build_pcs_circuit(payload.physical,
                           embedded_generators(payload.code, payload.layout, payload.physical.num_qubits()),
                           checks, options);
}

PcsCircuit build_pcs_circuit(const Circuit& payload, const std::vector<PauliString>& stabilizers,
                             const std::vector<PauliCheck>& checks, const PcsOptions& options) {
  std::vector<PauliString> left, right;
  for (const auto& [l, r] : checks) {
    if (l.size() != payload.num_qubits() || r.size() != payload.num_qubits()) {
      throw ConfigError("pcs: check length does not match the payload");
    }
    if (!in_group(l, stabilizers)) throw ConfigError("pcs: left check " + l.to_string() + " is not a stabilizer");
    if (!in_group(r, stabilizers)) throw ConfigError("pcs: right check " + r.to_string() + " is not a stabilizer");
    if (!(l.conjugated_by(payload) == r)) {
      throw ConfigError("pcs: checks " + l.to_string() + ", " + r.to_string() + " violate R U L = U");
    }
    left.push_back(l);
    right.push_back(r);
  }
  return build_sandwich(payload, &left, right, options);
}

PcsCircuit build_detection_circuit(const Circuit& payload, const std::vector<PauliString>& checks,
                                   const PcsOptions& options) {
  return build_sandwich(payload, nullptr, checks, options);
}

std::pair<OutcomeDistribution, double> pcs_postselect(const OutcomeDistribution& dist,
                                                      const PcsCircuit& pcs) {
  OutcomeDistribution data{pcs.data_qubits, {}};
  double accepted = 0.0;
  for (const auto& [key, p] : dist.probs) {
    bool ok = true;
    for (auto c : pcs.ancilla_clbits) ok = ok && key[c] == '0';
    if (!ok) continue;
    data.probs[key.substr(0, pcs.data_qubits)] += p;
    accepted += p;
  }
  if (accepted > 0.0) {
    for (auto& [key, p] : data.probs) p /= accepted;
  }
  return {data, accepted};
}

}  // namespace ftqem
