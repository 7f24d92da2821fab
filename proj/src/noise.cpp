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

#include "ftqem/noise.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ftqem/error.hpp"

namespace ftqem {

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::size_t pauli_count(std::size_t arity) { return std::size_t{1} << (2 * arity); }

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ConfigError(std::string("noise: ") + name + " must lie in [0, 1], got " + std::to_string(p));
  }
}

}  // namespace

NoiseConvention parse_noise_convention(std::string_view text) {
  if (text == "pauli") return NoiseConvention::Pauli;
  if (text == "mixing") return NoiseConvention::Mixing;
  throw ConfigError("unknown noise convention '" + std::string(text) + "' (expected pauli|mixing)");
}

std::string_view to_string(NoiseConvention convention) {
  return convention == NoiseConvention::Pauli ? "pauli" : "mixing";
}

void NoiseModel::validate() const {
  check_probability(p1, "p1");
  check_probability(p2, "p2");
  check_probability(p_meas, "p_meas");
  if (!(kappa >= 0.0)) throw ConfigError("noise: kappa must be >= 0");
}

double NoiseModel::fault_probability(std::size_t arity) const {
  const double p = arity == 1 ? p1 : arity == 2 ? p2 : 0.0;
  if (arity == 0) return 0.0;
  if (convention == NoiseConvention::Pauli) return p;
  const auto n = static_cast<double>(pauli_count(arity));
  return p * (n - 1.0) / n;
}

double NoiseModel::mixing_weight(std::size_t arity) const {
  const double p = arity == 1 ? p1 : arity == 2 ? p2 : 0.0;
  if (arity == 0) return 0.0;
  if (convention == NoiseConvention::Mixing) return p;
  const auto n = static_cast<double>(pauli_count(arity));
  return p * n / (n - 1.0);
}

double NoiseModel::logical_fault_rate(std::size_t d) const {
  const double p = std::max(p1, p2);
  return std::min(1.0, kappa * std::pow(p, static_cast<double>(d)));
}

void to_json(nlohmann::json& j, const NoiseModel& model) {
  j = {{"p1", model.p1},
       {"p2", model.p2},
       {"p_meas", model.p_meas},
       {"kappa", model.kappa},
       {"convention", std::string(to_string(model.convention))}};
}

void from_json(const nlohmann::json& j, NoiseModel& model) {
  if (!j.is_object()) throw ConfigError("noise: expected a JSON object");
  model = NoiseModel{};
  for (const auto& [key, value] : j.items()) {
    if (key == "p1") model.p1 = value.get<double>();
    else if (key == "p2") model.p2 = value.get<double>();
    else if (key == "p_meas") model.p_meas = value.get<double>();
    else if (key == "kappa") model.kappa = value.get<double>();
    else if (key == "convention") model.convention = parse_noise_convention(value.get<std::string>());
    else throw ConfigError("noise: unknown field '" + key + "'");
  }
  model.validate();
}

PauliString PauliChannel::pauli(std::size_t index) const {
  static constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};
  PauliString p(arity);
  for (std::size_t k = 0; k < arity; ++k) {
    p.set_letter(arity - 1 - k, kLetters[(index >> (2 * k)) & 3]);
  }
  return p;
}

double PauliChannel::total() const {
  double s = 0.0;
  for (auto w : weights) s += w;
  return s;
}

PauliChannel depolarizing_channel(std::size_t arity, double p, NoiseConvention convention) {
  if (arity != 1 && arity != 2) throw ConfigError("depolarizing channel: arity must be 1 or 2");
  check_probability(p, "p");
  const auto n = pauli_count(arity);
  NoiseModel m;
  m.p1 = m.p2 = p;
  m.convention = convention;
  const double fault = m.fault_probability(arity);
  PauliChannel ch{arity, std::vector<double>(n, fault / static_cast<double>(n - 1))};
  ch.weights[0] = 1.0 - fault;
  return ch;
}

Rng trajectory_rng(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(seed ^ splitmix64(index)));
}

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t noise_arity(const Gate& gate) {
  if (gate.noiseless) return 0;
  switch (gate.kind) {
    case GateKind::CX:
    case GateKind::CZ:
      return 2;
    case GateKind::Measure:
    case GateKind::LogicalFault:
      return 0;
    default:
      return 1;
  }
}

std::size_t sample_fault_index(std::size_t arity, const NoiseModel& model, Rng& rng) {
  const double pf = model.fault_probability(arity);
  if (pf <= 0.0) return 0;
  if (uniform01(rng) >= pf) return 0;
  const auto nontrivial = pauli_count(arity) - 1;
  return 1 + static_cast<std::size_t>(rng() % nontrivial);
}

std::optional<PauliFault> sample_fault(const Gate& gate, std::size_t location,
                                       const NoiseModel& model, Rng& rng) {
  const auto arity = noise_arity(gate);
  if (arity == 0) return std::nullopt;
  const auto index = sample_fault_index(arity, model, rng);
  if (index == 0) return std::nullopt;
  PauliChannel shape{arity, {}};
  return PauliFault{location, shape.pauli(index)};
}

int sample_logical_fault(std::size_t d, const NoiseModel& model, Rng& rng) {
  const double rate = model.logical_fault_rate(d);
  if (rate <= 0.0) return 0;
  if (uniform01(rng) >= rate) return 0;
  return 1 + static_cast<int>(rng() % 3);
}

}  // namespace ftqem
