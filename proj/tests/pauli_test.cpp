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

#include "ftqem/circuit.hpp"
#include "ftqem/error.hpp"
#include "ftqem/pauli.hpp"
#include "ftqem/tableau.hpp"
#include "random_circuits.hpp"

namespace ftqem {
namespace {

PauliString P(std::string_view s) { return PauliString::parse(s); }

TEST(PauliString, ParseAndPrint) {
  EXPECT_EQ(P("ZZI").to_string(), "+ZZI");
  EXPECT_EQ(P("-iXYZ").to_string(), "-iXYZ");
  EXPECT_EQ(P("-iXYZ").phase(), 3);
  EXPECT_EQ(P("+XX").weight(), 2u);
  EXPECT_EQ(P("IZIZ").support(), (std::vector<std::size_t>{1, 3}));
  EXPECT_TRUE(P("ZIZ").is_z_type());
  EXPECT_FALSE(P("ZXZ").is_z_type());
  EXPECT_TRUE(P("XIX").is_x_type());
  EXPECT_THROW(P("XQ"), ConfigError);
}

TEST(PauliString, SingleQubitProducts) {
  EXPECT_EQ(P("X") * P("Y"), P("iZ"));
  EXPECT_EQ(P("Y") * P("X"), P("-iZ"));
  EXPECT_EQ(P("Z") * P("X"), P("iY"));
  EXPECT_EQ(P("X") * P("X"), P("I"));
  EXPECT_EQ(P("XZ") * P("ZX"), P("YY"));
}

TEST(PauliString, Commutation) {
  EXPECT_TRUE(P("ZZ").commutes_with(P("XX")));
  EXPECT_FALSE(P("ZI").commutes_with(P("XX")));
  EXPECT_TRUE(P("ZZI").commutes_with(P("IZZ")));
}

TEST(PauliString, ConjugationByCliffords) {
  Circuit h(1);
  h.h(0);
  EXPECT_EQ(P("X").conjugated_by(h), P("Z"));
  EXPECT_EQ(P("Y").conjugated_by(h), P("-Y"));
  Circuit s(1);
  s.s(0);
  EXPECT_EQ(P("X").conjugated_by(s), P("Y"));
  EXPECT_EQ(P("Y").conjugated_by(s), P("-X"));
  Circuit cx(2);
  cx.cx(0, 1);
  EXPECT_EQ(P("XI").conjugated_by(cx), P("XX"));
  EXPECT_EQ(P("IZ").conjugated_by(cx), P("ZZ"));
  Circuit cz(2);
  cz.cz(0, 1);
  EXPECT_EQ(P("XI").conjugated_by(cz), P("XZ"));
  Circuit m(1, 1);
  m.measure(0, 0);
  EXPECT_THROW(P("X").conjugated_by(m), UnsupportedGate);
}

TEST(PauliString, ConjugationPreservesProductsOnRandomCircuits) {
  std::mt19937_64 rng(3);
  const char letters[] = "IXYZ";
  for (int trial = 0; trial < 100; ++trial) {
    testing::RandomCircuitOptions opt;
    opt.qubits = 4;
    opt.gates = 25;
    opt.measure_all = false;
    const auto c = testing::random_clifford(rng, opt);
    PauliString a(4), b(4);
    for (std::size_t q = 0; q < 4; ++q) {
      a.set_letter(q, letters[rng() % 4]);
      b.set_letter(q, letters[rng() % 4]);
    }
    EXPECT_EQ((a * b).conjugated_by(c), a.conjugated_by(c) * b.conjugated_by(c));
    EXPECT_EQ(a.commutes_with(b), a.conjugated_by(c).commutes_with(b.conjugated_by(c)));
  }
}

TEST(PauliString, ConjugationMatchesTableauStabilizers) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    testing::RandomCircuitOptions opt;
    opt.qubits = 3;
    opt.gates = 20;
    opt.measure_all = false;
    const auto c = testing::random_clifford(rng, opt);
    Tableau t(3);
    for (const auto& g : c.gates()) t.apply(g.kind, g.qubits);
    for (std::size_t q = 0; q < 3; ++q) {
      const auto z = PauliString::on(3, 'Z', std::vector<std::size_t>{q}).conjugated_by(c);
      EXPECT_EQ(t.expectation(z), 1);
    }
  }
}

TEST(InGroup, RepetitionGroup) {
  const std::vector<PauliString> gens{P("ZZI"), P("IZZ")};
  EXPECT_TRUE(in_group(P("ZIZ"), gens));
  EXPECT_TRUE(in_group(P("III"), gens));
  EXPECT_FALSE(in_group(P("-ZIZ"), gens));
  EXPECT_FALSE(in_group(P("ZII"), gens));
  EXPECT_FALSE(in_group(P("XXX"), gens));
}

}  // namespace
}  // namespace ftqem
