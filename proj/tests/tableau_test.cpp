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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "ftqem/density_matrix.hpp"
#include "ftqem/error.hpp"
#include "ftqem/tableau.hpp"
#include "random_circuits.hpp"

namespace ftqem {
namespace {

TEST(Tableau, StartsInAllZeros) {
  Tableau t(3);
  EXPECT_TRUE(t.is_valid());
  EXPECT_EQ(t.expectation(PauliString::parse("ZII")), 1);
  EXPECT_EQ(t.expectation(PauliString::parse("-IZI")), -1);
  EXPECT_EQ(t.expectation(PauliString::parse("XII")), 0);
}

TEST(Tableau, BellStateStabilizers) {
  Tableau t(2);
  const std::size_t q0[1] = {0}, q01[2] = {0, 1};
  t.apply(GateKind::H, q0);
  t.apply(GateKind::CX, q01);
  EXPECT_EQ(t.expectation(PauliString::parse("XX")), 1);
  EXPECT_EQ(t.expectation(PauliString::parse("ZZ")), 1);
  EXPECT_EQ(t.expectation(PauliString::parse("YY")), -1);
  EXPECT_FALSE(t.is_deterministic(0));
  const int m = t.measure(0, 1);
  EXPECT_EQ(m, 1);
  EXPECT_TRUE(t.is_deterministic(1));
  EXPECT_EQ(t.measure(1, 0), 1);
  EXPECT_TRUE(t.is_valid());
}

TEST(Tableau, SignTrackingThroughPhaseGates) {
  Tableau t(1);
  const std::size_t q[1] = {0};
  t.apply(GateKind::H, q);
  t.apply(GateKind::S, q);
  EXPECT_EQ(t.expectation(PauliString::parse("Y")), 1);
  t.apply(GateKind::SDag, q);
  t.apply(GateKind::SDag, q);
  EXPECT_EQ(t.expectation(PauliString::parse("Y")), -1);
  t.apply(GateKind::X, q);
  EXPECT_EQ(t.expectation(PauliString::parse("Y")), 1);
}

TEST(Tableau, MatchesPauliConjugation) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    testing::RandomCircuitOptions opt;
    opt.qubits = 4;
    opt.gates = 30;
    opt.measure_all = false;
    auto c = testing::random_clifford(rng, opt);
    Tableau t(4);
    for (const auto& g : c.gates()) t.apply(g.kind, g.qubits);
    ASSERT_TRUE(t.is_valid());
    for (std::size_t q = 0; q < 4; ++q) {
      auto z = PauliString(4);
      z.set_letter(q, 'Z');
      EXPECT_EQ(t.expectation(z.conjugated_by(c)), 1);
    }
  }
}

TEST(Tableau, WideRegistersSpanSeveralWords) {
  Tableau t(130);
  const std::size_t h[1] = {0};
  t.apply(GateKind::H, h);
  for (std::size_t q = 1; q < 130; ++q) {
    const std::size_t cx[2] = {q - 1, q};
    t.apply(GateKind::CX, cx);
  }
  const int first = t.measure(0, 1);
  for (std::size_t q = 1; q < 130; ++q) EXPECT_EQ(t.measure(q, 0), first);
}

TEST(Trajectories, NoiselessBellGivesOnlyCorrelatedOutcomes) {
  Circuit c(2, 2);
  c.h(0).cx(0, 1).measure(0, 0).measure(1, 1);
  const std::uint64_t shots = 10000;
  for (auto engine : {TrajectoryEngine::Frame, TrajectoryEngine::Tableau}) {
    auto h = run_trajectories(c, NoiseModel::noiseless(), shots, 11, {1, engine});
    EXPECT_EQ(h.shots, shots);
    EXPECT_EQ(h.at("00") + h.at("11"), shots);
    const double sigma = std::sqrt(shots * 0.25);
    EXPECT_LT(std::abs(static_cast<double>(h.at("00")) - shots / 2.0), 4 * sigma);
  }
}

TEST(Trajectories, DeterministicAcrossThreadCounts) {
  Circuit c(3, 3);
  c.h(0).cx(0, 1).cx(1, 2).measure(0, 0).measure(1, 1).measure(2, 2);
  NoiseModel m;
  m.p1 = 0.05;
  m.p2 = 0.1;
  auto a = run_trajectories(c, m, 20000, 99, {1});
  auto b = run_trajectories(c, m, 20000, 99, {8});
  EXPECT_EQ(a, b);
  auto c2 = run_trajectories(c, m, 20000, 100, {1});
  EXPECT_NE(a, c2);
}

TEST(Trajectories, RejectsConditionOnUnmeasuredBit) {
  Circuit c(1, 1);
  c.condx(0, 0);
  EXPECT_THROW(run_trajectories(c, NoiseModel::noiseless(), 10, 1), CircuitError);
}

// Per-outcome 4 sigma agreement between sampled and exact probabilities.
void expect_agreement(const OutcomeHistogram& h, const OutcomeDistribution& exact) {
  const auto n = static_cast<double>(h.shots);
  for (const auto& [key, p] : exact.probs) {
    const double sigma = std::sqrt(n * p * (1 - p));
    EXPECT_LE(std::abs(static_cast<double>(h.at(key)) - n * p), std::max(4 * sigma, 3.0))
        << key << " p=" << p;
  }
  for (const auto& [key, count] : h.counts) EXPECT_GT(exact.at(key), 0.0) << key;
}

TEST(Trajectories, FrameEngineMatchesDensityMatrix) {
  std::mt19937_64 rng(2024);
  NoiseModel m;
  m.p1 = 0.01;
  m.p2 = 0.02;
  m.p_meas = 0.01;
  for (int trial = 0; trial < 6; ++trial) {
    testing::RandomCircuitOptions opt;
    opt.qubits = 3 + trial % 3;
    opt.gates = 25;
    opt.mid_circuit = true;
    auto c = testing::random_clifford(rng, opt);
    auto exact = run_dm(c, m);
    auto sampled = run_trajectories(c, m, 40000, 5 + trial);
    expect_agreement(sampled, exact);
  }
}

TEST(Trajectories, TableauEngineMatchesDensityMatrix) {
  std::mt19937_64 rng(77);
  NoiseModel m;
  m.p1 = 0.03;
  m.p2 = 0.05;
  for (int trial = 0; trial < 4; ++trial) {
    testing::RandomCircuitOptions opt;
    opt.qubits = 3;
    opt.gates = 15;
    opt.mid_circuit = true;
    auto c = testing::random_clifford(rng, opt);
    auto exact = run_dm(c, m);
    auto sampled = run_trajectories(c, m, 20000, 31 + trial, {1, TrajectoryEngine::Tableau});
    expect_agreement(sampled, exact);
  }
}

TEST(Trajectories, LogicalFaultSitesFollowTheRate) {
  Circuit c(3, 3);
  c.add(GateKind::LogicalFault, {0, 1, 2});
  for (std::size_t q = 0; q < 3; ++q) c.measure(q, q);
  NoiseModel m;
  m.p1 = 0.5;
  m.kappa = 1.0;
  auto exact = run_dm(c, m);
  EXPECT_NEAR(exact.at("111"), 2.0 / 3.0 * 0.125, 1e-15);
  expect_agreement(run_trajectories(c, m, 30000, 3), exact);
}

TEST(Enumeration, MatchesDensityMatrixOnNoiselessCircuits) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    testing::RandomCircuitOptions opt;
    opt.qubits = 4;
    opt.gates = 25;
    opt.mid_circuit = true;
    auto c = testing::random_clifford(rng, opt);
    auto a = enumerate_outcomes(c);
    auto b = run_dm(c, NoiseModel::noiseless());
    b.prune(1e-14);
    ASSERT_EQ(a.probs.size(), b.probs.size());
    for (const auto& [key, p] : b.probs) EXPECT_NEAR(a.at(key), p, 1e-12) << key;
  }
}

}  // namespace
}  // namespace ftqem
