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
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ftqem/circuit.hpp"
#include "ftqem/codes.hpp"
#include "ftqem/mitigation.hpp"
#include "ftqem/noise.hpp"
#include "ftqem/outcomes.hpp"
#include "ftqem/tableau.hpp"
#include "json.hpp"

namespace ftqem {

enum class Backend {
  Exact,       // density matrix; stabilizer enumeration for noiseless circuits past the cap
  MonteCarlo,  // trajectory sampling
};

Backend parse_backend(std::string_view text);  // exact | mc
std::string_view to_string(Backend backend);

struct ExperimentConfig {
  std::string circuit;       // inline logical circuit text
  std::string circuit_file;  // or a path to one
  std::string code = "rep:1";
  std::vector<std::size_t> sweep;  // repetition distances; overrides `code`
  HadamardMode hmode = HadamardMode::FTGadget;
  NoiseModel noise;
  Strategy strategy = Strategy::DM;
  DecodePolicy policy;
  Backend backend = Backend::MonteCarlo;
  std::uint64_t shots = 100000;
  std::uint64_t seed = 1;
  std::string init;  // logical basis state prepared before the circuit; empty = all zeros
  bool noiseless_tail = false;
  LayoutKind layout = LayoutKind::Interleaved;
  std::size_t threads = 1;
  TrajectoryEngine engine = TrajectoryEngine::Frame;
  std::string label;

  /// Throws ConfigError on inconsistent fields.
  void validate() const;
  Circuit load_circuit() const;
  std::vector<CodeSpec> codes() const;
};

void to_json(nlohmann::json& j, const ExperimentConfig& cfg);
void from_json(const nlohmann::json& j, ExperimentConfig& cfg);
ExperimentConfig load_config(const std::string& path);

struct RunRecord {
  std::size_t d = 1;
  std::string code;
  std::string strategy;
  std::string policy;
  std::string backend;
  std::uint64_t shots = 0;
  double accepted = 0.0;
  double post_rate = 0.0;
  double sso = 0.0;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;
  std::string label;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

void to_json(nlohmann::json& j, const RunRecord& r);
void from_json(const nlohmann::json& j, RunRecord& r);

/// Everything produced for one code point.
struct PointResult {
  RunRecord record;
  MeasuredCircuit measured;
  EncodedCircuit encoded;
  OutcomeHistogram histogram;  // Monte Carlo only
  OutcomeDistribution exact;   // exact backend only
  MitigationResult mitigation;
  OutcomeDistribution ideal;
};

/// Noiseless exact distribution of the unencoded logical circuit (with init),
/// keyed by logical output bit.
OutcomeDistribution ideal_distribution(const ExperimentConfig& cfg);

/// Encode, append the strategy tail, simulate, mitigate, score.
PointResult run_point(const ExperimentConfig& cfg, const CodeSpec& code);

/// One record per code point, ordered by d.
std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg);

struct ReproGroup {
  std::string name;
  std::vector<ExperimentConfig> configs;
};

std::vector<std::string> repro_scenarios();
/// Scenario configurations; `shots` of 0 keeps the default.
std::vector<ReproGroup> repro_configs(std::string_view scenario, std::uint64_t shots = 0,
                                      std::size_t threads = 1);

struct ReproOutput {
  std::string name;
  std::vector<RunRecord> records;  // ordered by (d, strategy, policy)
};

std::vector<ReproOutput> repro(std::string_view scenario, std::uint64_t shots = 0, std::size_t threads = 1);

std::string csv_header();
void write_csv(const std::vector<RunRecord>& records, std::ostream& out);
void write_json(const std::vector<RunRecord>& records, std::ostream& out);
/// format: csv | json. Throws Error when the path cannot be written.
void emit(const std::vector<RunRecord>& records, std::string_view format, const std::string& path);

}  // namespace ftqem
