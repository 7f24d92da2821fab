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

#include <random>

#include "exact_helpers.hpp"
#include "ftqem/codes.hpp"
#include "ftqem/error.hpp"
#include "ftqem/mitigation.hpp"
#include "ftqem/tableau.hpp"
#include "random_circuits.hpp"

namespace ftqem {
namespace {

using testing::distributions_near;
using testing::exact_noiseless;

Tableau run_unitary(const Circuit& c) {
  Tableau t(c.num_qubits());
  for (const auto& g : c.gates()) t.apply(g.kind, g.qubits);
  return t;
}

TEST(CodeSpec, ParseAndShape) {
  EXPECT_EQ(CodeSpec::parse("rep:3"), CodeSpec::repetition(3));
  EXPECT_EQ(CodeSpec::parse("steane").block_size(), 7u);
  EXPECT_TRUE(CodeSpec::parse("rep:1").is_unencoded());
  EXPECT_THROW(CodeSpec::parse("rep:0"), ConfigError);
  EXPECT_THROW(CodeSpec::parse("rep:x"), ConfigError);
  EXPECT_THROW(CodeSpec::parse("surface"), ConfigError);
}

TEST(StabilizerGenerators, Repetition) {
  const auto g = stabilizer_generators(CodeSpec::repetition(3));
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0], PauliString::parse("ZZI"));
  EXPECT_EQ(g[1], PauliString::parse("IZZ"));
  EXPECT_TRUE(stabilizer_generators(CodeSpec::repetition(1)).empty());
}

TEST(StabilizerGenerators, SteaneWeightFourAndCommuting) {
  const auto code = CodeSpec::steane();
  const auto g = stabilizer_generators(code);
  ASSERT_EQ(g.size(), 6u);
  std::size_t x_type = 0, z_type = 0;
  for (const auto& a : g) {
    EXPECT_EQ(a.weight(), 4u);
    x_type += a.is_x_type();
    z_type += a.is_z_type();
    for (const auto& b : g) EXPECT_TRUE(a.commutes_with(b)) << a.to_string() << " " << b.to_string();
    EXPECT_TRUE(a.commutes_with(logical_x(code)));
    EXPECT_TRUE(a.commutes_with(logical_z(code)));
  }
  EXPECT_EQ(x_type, 3u);
  EXPECT_EQ(z_type, 3u);
  EXPECT_FALSE(logical_x(code).commutes_with(logical_z(code)));
}

TEST(StatePrep, RepetitionExamples) {
  const auto one = state_prep(CodeSpec::repetition(3), "1");
  ASSERT_EQ(one.size(), 3u);
  for (std::size_t q = 0; q < 3; ++q) {
    EXPECT_EQ(one.gates()[q].kind, GateKind::X);
    EXPECT_EQ(one.gates()[q].qubits, (std::vector<std::size_t>{q}));
  }
  const auto two = state_prep(CodeSpec::repetition(2), "11");
  EXPECT_EQ(two.num_qubits(), 4u);
  EXPECT_EQ(two.size(), 4u);
  EXPECT_TRUE(state_prep(CodeSpec::repetition(4), "0").empty());
}

TEST(StatePrep, EveryGeneratorHasEigenvaluePlusOne) {
  for (const auto& code : {CodeSpec::repetition(2), CodeSpec::repetition(3), CodeSpec::repetition(5),
                           CodeSpec::steane()}) {
    for (std::string basis : {"0", "1", "01", "10", "11"}) {
      for (auto kind : {LayoutKind::Interleaved, LayoutKind::Blocked}) {
        const auto prep = state_prep(code, basis, kind);
        const auto t = run_unitary(prep);
        const auto layout = make_layout(code, basis.size(), kind);
        for (const auto& g : embedded_generators(code, layout, prep.num_qubits())) {
          EXPECT_EQ(t.expectation(g), 1) << code.name() << " " << basis << " " << g.to_string();
        }
        for (std::size_t j = 0; j < basis.size(); ++j) {
          PauliString zl(prep.num_qubits());
          const auto local = logical_z(code);
          for (std::size_t k = 0; k < layout[j].size(); ++k) zl.set_letter(layout[j][k], local.letter(k));
          EXPECT_EQ(t.expectation(zl), basis[j] == '0' ? 1 : -1) << code.name() << " " << basis;
        }
      }
    }
  }
}

TEST(StatePrep, RejectsNonBinaryBasis) {
  EXPECT_THROW(state_prep(CodeSpec::repetition(3), "2"), ConfigError);
}

TEST(DecodingCircuit, RepetitionExamples) {
  auto run = [](const CodeSpec& code, std::string_view input) {
    Circuit c(code.block_size(), code.block_size());
    for (std::size_t q = 0; q < input.size(); ++q) {
      if (input[q] == '1') c.x(q);
    }
    c.append(decoding_circuit(code));
    for (std::size_t q = 0; q < code.block_size(); ++q) c.measure(q, q);
    return run_dm(c, NoiseModel::noiseless());
  };
  EXPECT_DOUBLE_EQ(run(CodeSpec::repetition(3), "111").at("100"), 1.0);
  EXPECT_DOUBLE_EQ(run(CodeSpec::repetition(2), "00").at("00"), 1.0);
}

TEST(DecodingCircuit, GeneratorsMoveOffThePrimaryPosition) {
  for (const auto& code : {CodeSpec::repetition(2), CodeSpec::repetition(3), CodeSpec::repetition(6),
                           CodeSpec::steane()}) {
    const auto B = code.block_size();
    const auto dec = decoding_circuit(code);
    std::vector<PauliString> singles;
    for (std::size_t q = 0; q < B; ++q) {
      if (q != code.primary_position()) singles.push_back(PauliString::on(B, 'Z', std::vector<std::size_t>{q}));
    }
    for (const auto& g : stabilizer_generators(code)) {
      if (!g.is_z_type()) continue;
      const auto h = g.conjugated_by(dec);
      EXPECT_TRUE(h.is_z_type()) << code.name() << " " << h.to_string();
      EXPECT_TRUE(in_group(h, singles)) << code.name() << " " << g.to_string() << " -> " << h.to_string();
    }
  }
}

TEST(DecodingCircuit, StarGeneratorsBecomeSingleQubitZ) {
  for (std::size_t d : {2, 3, 5}) {
    const auto dec = decoding_circuit(CodeSpec::repetition(d));
    for (std::size_t k = 1; k < d; ++k) {
      const std::vector<std::size_t> support{0, k};
      const auto h = PauliString::on(d, 'Z', support).conjugated_by(dec);
      EXPECT_EQ(h, PauliString::on(d, 'Z', std::vector<std::size_t>{k}));
    }
  }
  EXPECT_EQ(PauliString::parse("ZZI").conjugated_by(decoding_circuit(CodeSpec::repetition(3))),
            PauliString::parse("IZI"));
}

TEST(DecodingCircuit, InvertsTheEncoder) {
  for (const auto& code : {CodeSpec::repetition(3), CodeSpec::steane()}) {
    auto c = encoding_circuit(code);
    c.append(decoding_circuit(code));
    for (std::size_t q = 0; q < code.block_size(); ++q) {
      const auto z = PauliString::on(code.block_size(), 'Z', std::vector<std::size_t>{q});
      const auto x = PauliString::on(code.block_size(), 'X', std::vector<std::size_t>{q});
      EXPECT_EQ(z.conjugated_by(c), z);
      EXPECT_EQ(x.conjugated_by(c), x);
    }
  }
}

TEST(SsExtraction, Examples) {
  const auto code = CodeSpec::repetition(2);
  const auto gen = stabilizer_generators(code)[0];
  auto parity_one = [&](std::string_view prep) {
    Circuit c(2);
    for (std::size_t q = 0; q < 2; ++q) {
      if (prep[q] == '1') c.x(q);
      if (prep[q] == '+') c.h(q);
    }
    c.append(ss_extraction_circuit(code, gen));
    const auto dist = run_dm(c, NoiseModel::noiseless());
    return dist.at("01") + dist.at("10");
  };
  EXPECT_NEAR(parity_one("00"), 0.0, 1e-12);
  EXPECT_NEAR(parity_one("10"), 1.0, 1e-12);
  EXPECT_NEAR(parity_one("++"), 0.5, 1e-12);
  EXPECT_THROW(ss_extraction_circuit(CodeSpec::repetition(3), PauliString::parse("ZZZ")), UnsupportedGate);
}

TEST(CompileLogical, InterleavedAndBlockedCx) {
  Circuit cx(2);
  cx.cx(0, 1);
  for (auto mode : {HadamardMode::NonFT, HadamardMode::FTGadget, HadamardMode::IdealizedAncilla}) {
    const auto blocked = compile_logical(CodeSpec::repetition(2), cx, mode, LayoutKind::Blocked);
    ASSERT_EQ(blocked.physical.size(), 2u);
    EXPECT_EQ(blocked.physical.gates()[0].qubits, (std::vector<std::size_t>{0, 2}));
    EXPECT_EQ(blocked.physical.gates()[1].qubits, (std::vector<std::size_t>{1, 3}));
    const auto inter = compile_logical(CodeSpec::repetition(2), cx, mode, LayoutKind::Interleaved);
    EXPECT_EQ(inter.layout, (std::vector<std::vector<std::size_t>>{{0, 2}, {1, 3}}));
    EXPECT_EQ(inter.physical.gates()[0].qubits, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(inter.physical.gates()[1].qubits, (std::vector<std::size_t>{2, 3}));
  }
}

TEST(CompileLogical, DistanceOneIsPassthrough) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    testing::RandomCircuitOptions opt;
    opt.mid_circuit = true;
    const auto c = testing::random_clifford(rng, opt);
    EXPECT_EQ(compile_logical(CodeSpec::repetition(1), c, HadamardMode::FTGadget).physical, c);
  }
}

TEST(CompileLogical, FtGadgetStructure) {
  Circuit h(1);
  h.h(0);
  const auto enc = compile_logical(CodeSpec::repetition(3), h, HadamardMode::FTGadget);
  EXPECT_EQ(enc.ancillas.gadget_qubits.size(), 3u);
  EXPECT_EQ(enc.ancillas.gadget_clbits.size(), 3u);
  EXPECT_EQ(enc.layout[0], enc.ancillas.gadget_qubits);
  std::size_t measures = 0, conds = 0, cross = 0;
  for (const auto& g : enc.physical.gates()) {
    measures += g.kind == GateKind::Measure;
    conds += g.kind == GateKind::CondX;
    if (g.qubits.size() == 2 && (g.qubits[0] < 3) != (g.qubits[1] < 3)) ++cross;
  }
  EXPECT_EQ(measures, 3u);
  EXPECT_EQ(conds, 9u);
  EXPECT_GE(cross, 1u);
}

TEST(CompileLogical, SteaneRejectsNonFtHadamard) {
  Circuit h(1);
  h.h(0);
  EXPECT_THROW(compile_logical(CodeSpec::steane(), h, HadamardMode::NonFT), ConfigError);
  Circuit f(1);
  f.add(GateKind::LogicalFault, {0});
  EXPECT_THROW(compile_logical(CodeSpec::repetition(3), f, HadamardMode::FTGadget), UnsupportedGate);
}

TEST(CompileLogical, TransversalGatesStayBetweenBlocks) {
  std::mt19937_64 rng(8);
  for (const auto& code : {CodeSpec::repetition(2), CodeSpec::repetition(3), CodeSpec::steane()}) {
    for (int trial = 0; trial < 20; ++trial) {
      testing::RandomCircuitOptions opt;
      opt.qubits = 3;
      opt.hadamards = false;
      opt.measure_all = false;
      const auto logical = testing::random_clifford(rng, opt);
      const auto enc = compile_logical(code, logical, HadamardMode::FTGadget);
      std::vector<std::size_t> owner(enc.physical.num_qubits());
      for (std::size_t j = 0; j < enc.layout.size(); ++j) {
        for (auto q : enc.layout[j]) owner[q] = j;
      }
      for (const auto& g : enc.physical.gates()) {
        if (g.qubits.size() == 2) EXPECT_NE(owner[g.qubits[0]], owner[g.qubits[1]]);
      }
    }
  }
}

TEST(CompileLogical, LayoutJsonSidecar) {
  Circuit cx(2);
  cx.cx(0, 1);
  const auto j = layout_json(compile_logical(CodeSpec::repetition(2), cx, HadamardMode::FTGadget));
  EXPECT_EQ(j.at("layout").at("0"), nlohmann::json({0, 2}));
  EXPECT_EQ(j.at("layout").at("1"), nlohmann::json({1, 3}));
  EXPECT_TRUE(j.contains("ancillas"));
}

OutcomeDistribution encoded_logical(const CodeSpec& code, const Circuit& logical, HadamardMode mode) {
  auto enc = compile_logical(code, logical, mode);
  auto physical = state_prep(code, std::string(logical.num_qubits(), '0'));
  physical.append(enc.physical);
  enc.physical = physical;
  const auto dist = exact_noiseless(enc.physical, enc.ancillas.gadget_clbits);
  const auto result = mitigate(dist, readout_from_measurements(enc), DecodePolicy::post_select());
  EXPECT_NEAR(result.post_rate(), 1.0, 1e-12);
  return result.logical_distribution();
}

struct EquivalenceCase {
  CodeSpec code;
  HadamardMode mode;
};

class NoiselessEquivalence : public ::testing::TestWithParam<EquivalenceCase> {};

TEST_P(NoiselessEquivalence, EncodedMatchesUnencoded) {
  const auto [code, mode] = GetParam();
  std::mt19937_64 rng(1000 + code.block_size() * 10 + static_cast<int>(mode));
  const int trials = code.kind() == CodeKind::Steane ? 6 : 12;
  for (int trial = 0; trial < trials; ++trial) {
    testing::RandomCircuitOptions opt;
    opt.qubits = 2 + trial % 2;
    opt.gates = code.kind() == CodeKind::Steane ? 8 : 12;
    opt.mid_circuit = trial % 3 == 2;
    const auto logical = testing::random_clifford(rng, opt);
    const auto want = run_dm(logical, NoiseModel::noiseless());
    EXPECT_TRUE(distributions_near(encoded_logical(code, logical, mode), want, 1e-12))
        << code.name() << "\n" << serialize_circuit(logical);
  }
}

TEST(NoiselessEquivalenceSingle, OneLogicalQubit) {
  std::mt19937_64 rng(77);
  for (const auto& code : {CodeSpec::repetition(2), CodeSpec::repetition(3)}) {
    for (auto mode : {HadamardMode::NonFT, HadamardMode::FTGadget, HadamardMode::IdealizedAncilla}) {
      for (int trial = 0; trial < 5; ++trial) {
        Circuit logical(1, 1);
        for (int k = 0; k < 8; ++k) {
          static constexpr GateKind kinds[] = {GateKind::H, GateKind::S, GateKind::SDag,
                                               GateKind::X, GateKind::Y, GateKind::Z};
          logical.add(kinds[rng() % 6], {0});
        }
        logical.measure(0, 0);
        EXPECT_TRUE(distributions_near(encoded_logical(code, logical, mode),
                                       run_dm(logical, NoiseModel::noiseless()), 1e-12))
            << serialize_circuit(logical);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(
    Codes, NoiselessEquivalence,
    ::testing::Values(EquivalenceCase{CodeSpec::repetition(1), HadamardMode::FTGadget},
                      EquivalenceCase{CodeSpec::repetition(2), HadamardMode::NonFT},
                      EquivalenceCase{CodeSpec::repetition(2), HadamardMode::FTGadget},
                      EquivalenceCase{CodeSpec::repetition(2), HadamardMode::IdealizedAncilla},
                      EquivalenceCase{CodeSpec::repetition(3), HadamardMode::NonFT},
                      EquivalenceCase{CodeSpec::repetition(3), HadamardMode::FTGadget},
                      EquivalenceCase{CodeSpec::repetition(3), HadamardMode::IdealizedAncilla},
                      EquivalenceCase{CodeSpec::steane(), HadamardMode::FTGadget},
                      EquivalenceCase{CodeSpec::steane(), HadamardMode::IdealizedAncilla}));

TEST(CensusC, Examples) {
  Circuit cascade(2);
  for (int k = 0; k < 21; ++k) cascade.cx(0, 1);
  EXPECT_EQ(census_c(cascade), 21u);
  Circuit hs(1);
  for (int k = 0; k < 6; ++k) hs.h(0);
  EXPECT_EQ(census_c(hs), 18u);
  Circuit ss(1);
  for (int k = 0; k < 3; ++k) ss.s(0).sdg(0);
  EXPECT_EQ(census_c(ss), 6u);
}

}  // namespace
}  // namespace ftqem
