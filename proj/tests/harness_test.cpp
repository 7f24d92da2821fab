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

#include <gtest/gtest.h>

#include <sstream>

#include "ftqem/error.hpp"
#include "ftqem/harness.hpp"

namespace ftqem {
namespace {

ExperimentConfig cascade_config() {
  ExperimentConfig cfg;
  cfg.circuit = "qubits 3\ncx 0 1\ncx 1 2\ncx 0 1\ncx 1 2";
  cfg.init = "111";
  cfg.sweep = {1, 2, 3};
  cfg.noise.p1 = 0.001;
  cfg.noise.p2 = 0.01;
  cfg.shots = 5000;
  cfg.seed = 17;
  return cfg;
}

std::vector<RunRecord> without_timing(std::vector<RunRecord> records) {
  for (auto& r : records) r.wall_ms = 0.0;
  return records;
}

TEST(ExperimentConfig, JsonRoundTrip) {
  auto cfg = cascade_config();
  cfg.strategy = Strategy::DSM;
  cfg.hmode = HadamardMode::NonFT;
  cfg.engine = TrajectoryEngine::Tableau;
  cfg.layout = LayoutKind::Blocked;
  cfg.label = "x";
  const nlohmann::json j = cfg;
  const auto back = j.get<ExperimentConfig>();
  EXPECT_EQ(nlohmann::json(back), j);
}

TEST(ExperimentConfig, RejectsBadFields) {
  auto parse = [](const char* text) { return nlohmann::json::parse(text).get<ExperimentConfig>(); };
  EXPECT_NO_THROW(parse(R"({"circuit":"qubits 1\nh 0"})"));
  EXPECT_THROW(parse(R"({"circuit":"qubits 1","colour":1})"), ConfigError);
  EXPECT_THROW(parse(R"({"circuit":"qubits 1","shots":"many"})"), ConfigError);
  EXPECT_THROW(parse(R"({})"), ConfigError);
  EXPECT_THROW(parse(R"({"circuit":"qubits 1","strategy":"xx"})"), ConfigError);
  EXPECT_THROW(parse(R"({"circuit":"qubits 1","sweep":[0]})"), ConfigError);
  EXPECT_THROW(parse(R"({"circuit":"qubits 1","policy":"correct","strategy":"dsm"})"), ConfigError);
  EXPECT_THROW(parse(R"({"circuit":"qubits 1","noise":{"p1":3}})"), ConfigError);
  EXPECT_THROW(parse(R"({"circuit":"qubits 1","init":"2"})"), ConfigError);
}

TEST(ExperimentConfig, InitMustMatchLogicalWidth) {
  auto cfg = cascade_config();
  cfg.init = "11";
  EXPECT_THROW(run_experiment(cfg), ConfigError);
}

TEST(RunRecord, JsonRoundTrip) {
  const RunRecord r{3, "rep:3", "dm", "postselect", "mc", 1000, 900, 0.9, 0.99, 4, 12.5, "simulated analog"};
  const nlohmann::json j = r;
  EXPECT_EQ(j.get<RunRecord>(), r);
}

TEST(Harness, DeterministicPerSeed) {
  const auto cfg = cascade_config();
  const auto a = without_timing(run_experiment(cfg));
  const auto b = without_timing(run_experiment(cfg));
  EXPECT_EQ(a, b);
  auto threaded = cfg;
  threaded.threads = 4;
  EXPECT_EQ(without_timing(run_experiment(threaded)), a);
  auto other = cfg;
  other.seed = 18;
  EXPECT_NE(without_timing(run_experiment(other)), a);
}

TEST(Harness, DistanceOneEqualsRawUnencodedRun) {
  auto cfg = cascade_config();
  const auto point = run_point(cfg, CodeSpec::repetition(1));
  Circuit raw(3, 3);
  for (std::size_t q = 0; q < 3; ++q) raw.x(q);
  raw.append(cfg.load_circuit());
  for (std::size_t q = 0; q < 3; ++q) raw.measure(q, q);
  EXPECT_EQ(point.histogram, run_trajectories(raw, cfg.noise, cfg.shots, cfg.seed));
  EXPECT_DOUBLE_EQ(point.record.post_rate, 1.0);
  for (auto policy : {DecodePolicy::correct(), DecodePolicy::correct(DecodePolicy::Band::OneSigma)}) {
    cfg.policy = policy;
    const auto p = run_point(cfg, CodeSpec::repetition(1));
    EXPECT_EQ(p.mitigation.logical_counts, point.mitigation.logical_counts);
  }
}

TEST(Harness, NoiselessRunsScorePerfectly) {
  for (auto strategy : {Strategy::DM, Strategy::DSM, Strategy::SS}) {
    for (auto backend : {Backend::MonteCarlo, Backend::Exact}) {
      auto cfg = cascade_config();
      cfg.circuit = "qubits 2\nh 0\ncx 0 1\ns 1\nh 1";
      cfg.init = "";
      cfg.sweep = {1, 2};
      cfg.noise = NoiseModel::noiseless();
      cfg.strategy = strategy;
      cfg.backend = backend;
      for (const auto& r : run_experiment(cfg)) {
        EXPECT_NEAR(r.sso, 1.0, backend == Backend::Exact ? 1e-12 : 1e-3) << r.strategy << " d=" << r.d;
        EXPECT_NEAR(r.post_rate, 1.0, 1e-12);
        EXPECT_EQ(r.shots, backend == Backend::Exact ? 0u : cfg.shots);
      }
    }
  }
}

TEST(Harness, SteaneNoiselessGroverIsExact) {
  ExperimentConfig cfg;
  cfg.circuit = "qubits 2\nh 0\nh 1\ncz 0 1\nh 0\nh 1\nx 0\nx 1\ncz 0 1\nx 0\nx 1\nh 0\nh 1";
  cfg.code = "steane";
  cfg.backend = Backend::Exact;
  const auto point = run_point(cfg, CodeSpec::steane());
  EXPECT_NEAR(point.ideal.at("11"), 1.0, 1e-12);
  EXPECT_NEAR(point.mitigation.logical_distribution().at("11"), 1.0, 1e-12);
}

TEST(Harness, CircuitsWithTheirOwnMeasurements) {
  ExperimentConfig cfg;
  cfg.circuit = "qubits 2\nclbits 2\nh 0\nmeasure 0 -> 0\ncondx 0 1\nmeasure 1 -> 1";
  cfg.code = "rep:3";
  cfg.backend = Backend::Exact;
  const auto point = run_point(cfg, CodeSpec::repetition(3));
  EXPECT_NEAR(point.mitigation.logical_distribution().at("00"), 0.5, 1e-12);
  EXPECT_NEAR(point.mitigation.logical_distribution().at("11"), 0.5, 1e-12);
  cfg.strategy = Strategy::DSM;
  EXPECT_THROW(run_point(cfg, CodeSpec::repetition(3)), ConfigError);
}

TEST(Harness, ExactBackendRefusesLargeNoisyRegisters) {
  ExperimentConfig cfg;
  cfg.circuit = "qubits 2\ncz 0 1";
  cfg.code = "steane";
  cfg.backend = Backend::Exact;
  cfg.noise.p2 = 0.01;
  EXPECT_THROW(run_experiment(cfg), SimulationError);
}

TEST(Harness, CsvGolden) {
  const std::vector<RunRecord> records{
      {1, "rep:1", "dm", "postselect", "mc", 100000, 100000, 1, 0.85419, 4, 362.5, ""},
      {2, "rep:2", "dm", "correct-1sigma", "exact", 0, 0.940539920272, 0.940539920272, 0.966988790897, 1, 0.05, ""}};
  std::ostringstream out;
  write_csv(records, out);
  EXPECT_EQ(out.str(),
            "d,strategy,policy,backend,shots,accepted,post_rate,sso,seed,wall_ms\n"
            "1,dm,postselect,mc,100000,100000,1,0.85419,4,362.5\n"
            "2,dm,correct-1sigma,exact,0,0.940539920272,0.940539920272,0.966988790897,1,0.05\n");
  std::ostringstream js;
  write_json(records, js);
  EXPECT_EQ(nlohmann::json::parse(js.str()).get<std::vector<RunRecord>>(), records);
}

TEST(Repro, ScenarioShapes) {
  EXPECT_EQ(repro_scenarios().size(), 6u);
  const auto fig4 = repro_configs("fig4");
  ASSERT_EQ(fig4.size(), 1u);
  EXPECT_EQ(fig4[0].configs.size(), 3u);
  EXPECT_EQ(gate_census(fig4[0].configs[0].load_circuit()), (GateCensus{21, 0}));
  const auto hdw = repro_configs("hdw35");
  ASSERT_EQ(hdw.size(), 2u);
  for (const auto& g : hdw) {
    for (const auto& cfg : g.configs) {
      EXPECT_EQ(census_c(cfg.load_circuit()), 35u);
      EXPECT_EQ(cfg.label, "simulated analog");
    }
  }
  EXPECT_EQ(repro_configs("fig5").size(), 3u);
  EXPECT_EQ(census_c(repro_configs("fig7a")[0].configs[0].load_circuit()), 18u);
  EXPECT_EQ(census_c(repro_configs("fig7b")[0].configs[0].load_circuit()), 6u);
  EXPECT_EQ(repro_configs("fig4", 123, 2)[0].configs[0].shots, 123u);
  EXPECT_THROW(repro_configs("fig9"), ConfigError);
}

TEST(Repro, FigureSevenOrderings) {
  const auto h = repro("fig7a")[0].records;
  const auto s = repro("fig7b")[0].records;
  ASSERT_EQ(h.size(), 5u);
  ASSERT_EQ(s.size(), 5u);
  for (std::size_t i = 1; i < h.size(); ++i) EXPECT_LE(h[i].sso, h[0].sso) << "d=" << h[i].d;
  EXPECT_GE(s[2].sso, s[0].sso);
  for (std::size_t i = 0; i < h.size(); ++i) EXPECT_EQ(h[i].d, i + 1);
}

}  // namespace
}  // namespace ftqem
