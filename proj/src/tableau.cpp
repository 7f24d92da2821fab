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

#include "ftqem/tableau.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <thread>
#include <unordered_map>

#include "ftqem/error.hpp"

namespace ftqem {

Tableau::Tableau(std::size_t num_qubits)
    : n_(num_qubits),
      words_((num_qubits + 63) / 64),
      x_((2 * num_qubits + 1) * words_, 0),
      z_((2 * num_qubits + 1) * words_, 0),
      r_(2 * num_qubits + 1, 0) {
  for (std::size_t q = 0; q < n_; ++q) {
    xrow(q)[q >> 6] |= std::uint64_t{1} << (q & 63);
    zrow(n_ + q)[q >> 6] |= std::uint64_t{1} << (q & 63);
  }
}

void Tableau::apply(GateKind kind, std::span<const std::size_t> qubits) {
  for (auto q : qubits) {
    if (q >= n_) throw SimulationError("tableau: qubit " + std::to_string(q) + " out of range");
  }
  const std::size_t rows = 2 * n_;
  if (kind == GateKind::CX || kind == GateKind::CZ) {
    const auto a = qubits[0], b = qubits[1];
    const auto wa = a >> 6, wb = b >> 6;
    const auto sa = a & 63, sb = b & 63;
    for (std::size_t r = 0; r < rows; ++r) {
      auto* x = xrow(r);
      auto* z = zrow(r);
      const unsigned xa = (x[wa] >> sa) & 1, za = (z[wa] >> sa) & 1;
      const unsigned xb = (x[wb] >> sb) & 1, zb = (z[wb] >> sb) & 1;
      if (kind == GateKind::CX) {
        r_[r] ^= static_cast<std::uint8_t>(xa & zb & (xb ^ za ^ 1));
        x[wb] ^= std::uint64_t{xa} << sb;
        z[wa] ^= std::uint64_t{zb} << sa;
      } else {
        r_[r] ^= static_cast<std::uint8_t>(xa & xb & (za ^ zb));
        z[wa] ^= std::uint64_t{xb} << sa;
        z[wb] ^= std::uint64_t{xa} << sb;
      }
    }
    return;
  }
  if (qubit_arity(kind) != 1 || !is_unitary(kind)) {
    throw UnsupportedGate("tableau: '" + std::string(mnemonic(kind)) + "' is not a unitary gate");
  }
  const auto q = qubits[0];
  const auto w = q >> 6, s = q & 63;
  const std::uint64_t bit = std::uint64_t{1} << s;
  for (std::size_t r = 0; r < rows; ++r) {
    auto& x = xrow(r)[w];
    auto& z = zrow(r)[w];
    const unsigned xv = (x >> s) & 1, zv = (z >> s) & 1;
    switch (kind) {
      case GateKind::X:
        r_[r] ^= static_cast<std::uint8_t>(zv);
        break;
      case GateKind::Z:
        r_[r] ^= static_cast<std::uint8_t>(xv);
        break;
      case GateKind::Y:
        r_[r] ^= static_cast<std::uint8_t>(xv ^ zv);
        break;
      case GateKind::H:
        r_[r] ^= static_cast<std::uint8_t>(xv & zv);
        if (xv != zv) {
          x ^= bit;
          z ^= bit;
        }
        break;
      case GateKind::S:
        r_[r] ^= static_cast<std::uint8_t>(xv & zv);
        if (xv) z ^= bit;
        break;
      case GateKind::SDag:
        r_[r] ^= static_cast<std::uint8_t>(xv & (zv ^ 1));
        if (xv) z ^= bit;
        break;
      default:
        break;
    }
  }
}

void Tableau::apply_pauli(const PauliString& pauli) {
  if (pauli.size() != n_) throw SimulationError("tableau: Pauli length mismatch");
  std::vector<std::uint64_t> px(words_, 0), pz(words_, 0);
  for (std::size_t q = 0; q < n_; ++q) {
    if (pauli.x(q)) px[q >> 6] |= std::uint64_t{1} << (q & 63);
    if (pauli.z(q)) pz[q >> 6] |= std::uint64_t{1} << (q & 63);
  }
  for (std::size_t r = 0; r < 2 * n_; ++r) {
    unsigned parity = 0;
    for (std::size_t w = 0; w < words_; ++w) {
      parity += std::popcount((xrow(r)[w] & pz[w]) ^ (zrow(r)[w] & px[w]));
    }
    r_[r] ^= static_cast<std::uint8_t>(parity & 1);
  }
}

int Tableau::product_phase(std::size_t i, std::size_t h) const {
  int sum = 0;
  for (std::size_t w = 0; w < words_; ++w) {
    const auto x1 = xrow(i)[w], z1 = zrow(i)[w];
    const auto x2 = xrow(h)[w], z2 = zrow(h)[w];
    const auto y1 = x1 & z1, xo1 = x1 & ~z1, zo1 = ~x1 & z1;
    const auto y2 = x2 & z2, xo2 = x2 & ~z2, zo2 = ~x2 & z2;
    const auto pos = (y1 & zo2) | (xo1 & y2) | (zo1 & xo2);
    const auto neg = (y1 & xo2) | (xo1 & zo2) | (zo1 & y2);
    sum += std::popcount(pos) - std::popcount(neg);
  }
  return ((sum % 4) + 4) % 4;
}

void Tableau::rowsum(std::size_t h, std::size_t i) {
  const int total = (2 * r_[h] + 2 * r_[i] + product_phase(i, h)) % 4;
  r_[h] = total == 2 ? 1 : 0;
  for (std::size_t w = 0; w < words_; ++w) {
    xrow(h)[w] ^= xrow(i)[w];
    zrow(h)[w] ^= zrow(i)[w];
  }
}

void Tableau::set_row_zero(std::size_t r) {
  std::fill_n(xrow(r), words_, 0);
  std::fill_n(zrow(r), words_, 0);
  r_[r] = 0;
}

bool Tableau::is_deterministic(std::size_t q) const {
  for (std::size_t p = n_; p < 2 * n_; ++p) {
    if (xbit(p, q)) return false;
  }
  return true;
}

int Tableau::measure(std::size_t q, int coin) {
  if (q >= n_) throw SimulationError("tableau: qubit " + std::to_string(q) + " out of range");
  std::size_t p = 2 * n_;
  for (std::size_t i = n_; i < 2 * n_; ++i) {
    if (xbit(i, q)) {
      p = i;
      break;
    }
  }
  if (p < 2 * n_) {
    for (std::size_t i = 0; i < 2 * n_; ++i) {
      if (i != p && xbit(i, q)) rowsum(i, p);
    }
    std::copy_n(xrow(p), words_, xrow(p - n_));
    std::copy_n(zrow(p), words_, zrow(p - n_));
    r_[p - n_] = r_[p];
    set_row_zero(p);
    zrow(p)[q >> 6] |= std::uint64_t{1} << (q & 63);
    r_[p] = static_cast<std::uint8_t>(coin & 1);
    return coin & 1;
  }
  const std::size_t scratch = 2 * n_;
  set_row_zero(scratch);
  for (std::size_t i = 0; i < n_; ++i) {
    if (xbit(i, q)) rowsum(scratch, i + n_);
  }
  return r_[scratch];
}

int Tableau::reset(std::size_t q, int coin) {
  const int m = measure(q, coin);
  if (m) {
    const std::size_t qs[1] = {q};
    apply(GateKind::X, qs);
  }
  return m;
}

PauliString Tableau::row(std::size_t r) const {
  PauliString p(n_);
  for (std::size_t q = 0; q < n_; ++q) {
    const bool x = xbit(r, q), z = zbit(r, q);
    p.set_letter(q, x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I'));
  }
  p.set_phase(2 * r_[r]);
  return p;
}

int Tableau::expectation(const PauliString& pauli) const {
  if (pauli.size() != n_) throw SimulationError("tableau: Pauli length mismatch");
  PauliString acc(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const auto s = stabilizer(i);
    if (!s.commutes_with(pauli)) return 0;
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (!destabilizer(i).commutes_with(pauli)) acc = stabilizer(i) * acc;
  }
  for (std::size_t q = 0; q < n_; ++q) {
    if (acc.letter(q) != pauli.letter(q)) return 0;
  }
  const int diff = ((pauli.phase() - acc.phase()) % 4 + 4) % 4;
  if (diff == 0) return 1;
  if (diff == 2) return -1;
  return 0;
}

bool Tableau::is_valid() const {
  auto anticommute = [&](std::size_t a, std::size_t b) {
    unsigned parity = 0;
    for (std::size_t w = 0; w < words_; ++w) {
      parity += std::popcount((xrow(a)[w] & zrow(b)[w]) ^ (zrow(a)[w] & xrow(b)[w]));
    }
    return (parity & 1) != 0;
  };
  for (std::size_t a = 0; a < 2 * n_; ++a) {
    for (std::size_t b = a + 1; b < 2 * n_; ++b) {
      const bool expected = b == a + n_;
      if (a < n_ && b >= n_ ? anticommute(a, b) != expected : anticommute(a, b)) return false;
    }
  }
  return true;
}

namespace {

using FastCounts = std::unordered_map<std::string, std::uint64_t>;

inline void flip_bit(std::vector<std::uint64_t>& v, std::size_t q) {
  v[q >> 6] ^= std::uint64_t{1} << (q & 63);
}
inline bool get_bit(const std::vector<std::uint64_t>& v, std::size_t q) {
  return (v[q >> 6] >> (q & 63)) & 1;
}
inline void set_bit(std::vector<std::uint64_t>& v, std::size_t q, bool value) {
  const auto m = std::uint64_t{1} << (q & 63);
  v[q >> 6] = value ? (v[q >> 6] | m) : (v[q >> 6] & ~m);
}

/// Letter code (I=0, X=1, Y=2, Z=3) of operand `k` in a fault index.
inline unsigned fault_letter(std::size_t index, std::size_t arity, std::size_t k) {
  return static_cast<unsigned>((index >> (2 * (arity - 1 - k))) & 3);
}

struct Prepared {
  std::vector<std::size_t> noise;  // noise arity per gate
  std::vector<std::uint8_t> ref;   // reference outcome (Measure) or record bit (Cond)
};

Prepared prepare(const Circuit& circuit, bool with_reference) {
  const auto& gates = circuit.gates();
  Prepared p{std::vector<std::size_t>(gates.size()), std::vector<std::uint8_t>(gates.size(), 0)};
  for (std::size_t k = 0; k < gates.size(); ++k) {
    p.noise[k] = noise_arity(gates[k]);
    if (!is_unitary(gates[k].kind)) {
      switch (gates[k].kind) {
        case GateKind::Measure:
        case GateKind::Reset:
        case GateKind::CondX:
        case GateKind::CondZ:
        case GateKind::LogicalFault:
          break;
        default:
          throw UnsupportedGate("tableau: unsupported gate '" +
                                std::string(mnemonic(gates[k].kind)) + "'");
      }
    }
  }
  if (!with_reference) return p;
  Tableau t(circuit.num_qubits());
  std::string record(circuit.num_clbits(), '0');
  for (std::size_t k = 0; k < gates.size(); ++k) {
    const auto& g = gates[k];
    switch (g.kind) {
      case GateKind::Measure: {
        const int m = t.measure(g.qubits[0], 0);
        p.ref[k] = static_cast<std::uint8_t>(m);
        record[g.clbits[0]] = static_cast<char>('0' + m);
        break;
      }
      case GateKind::Reset:
        t.reset(g.qubits[0], 0);
        break;
      case GateKind::CondX:
      case GateKind::CondZ:
        p.ref[k] = record[g.clbits[0]] == '1';
        if (p.ref[k]) {
          t.apply(g.kind == GateKind::CondX ? GateKind::X : GateKind::Z, g.qubits);
        }
        break;
      case GateKind::LogicalFault:
        break;
      default:
        t.apply(g.kind, g.qubits);
    }
  }
  return p;
}

class FrameShot {
 public:
  FrameShot(const Circuit& circuit, const NoiseModel& model, const Prepared& prep)
      : circuit_(circuit), model_(model), prep_(prep),
        words_((circuit.num_qubits() + 63) / 64), fx_(words_), fz_(words_) {}

  void run(Rng& rng, std::string& record) {
    std::fill(fx_.begin(), fx_.end(), 0);
    for (auto& w : fz_) w = rng();
    record.assign(circuit_.num_clbits(), '0');
    const auto& gates = circuit_.gates();
    for (std::size_t k = 0; k < gates.size(); ++k) {
      const auto& g = gates[k];
      const auto* q = g.qubits.data();
      switch (g.kind) {
        case GateKind::H: {
          const bool x = get_bit(fx_, q[0]), z = get_bit(fz_, q[0]);
          set_bit(fx_, q[0], z);
          set_bit(fz_, q[0], x);
          break;
        }
        case GateKind::S:
        case GateKind::SDag:
          if (get_bit(fx_, q[0])) flip_bit(fz_, q[0]);
          break;
        case GateKind::CX:
          if (get_bit(fx_, q[0])) flip_bit(fx_, q[1]);
          if (get_bit(fz_, q[1])) flip_bit(fz_, q[0]);
          break;
        case GateKind::CZ: {
          const bool xa = get_bit(fx_, q[0]), xb = get_bit(fx_, q[1]);
          if (xb) flip_bit(fz_, q[0]);
          if (xa) flip_bit(fz_, q[1]);
          break;
        }
        case GateKind::Measure: {
          int m = prep_.ref[k] ^ static_cast<int>(get_bit(fx_, q[0]));
          if (!g.noiseless && model_.p_meas > 0.0 && uniform01(rng) < model_.p_meas) m ^= 1;
          record[g.clbits[0]] = static_cast<char>('0' + m);
          set_bit(fz_, q[0], rng() >> 63);
          break;
        }
        case GateKind::Reset:
          set_bit(fx_, q[0], false);
          set_bit(fz_, q[0], rng() >> 63);
          break;
        case GateKind::CondX:
          if ((record[g.clbits[0]] == '1') != (prep_.ref[k] != 0)) flip_bit(fx_, q[0]);
          break;
        case GateKind::CondZ:
          if ((record[g.clbits[0]] == '1') != (prep_.ref[k] != 0)) flip_bit(fz_, q[0]);
          break;
        case GateKind::LogicalFault:
          if (!g.noiseless) {
            const int f = sample_logical_fault(g.qubits.size(), model_, rng);
            if (f == 1 || f == 2) {
              for (auto qq : g.qubits) flip_bit(fx_, qq);
            }
            if (f == 2 || f == 3) flip_bit(fz_, q[0]);
          }
          break;
        default:
          break;
      }
      const auto arity = prep_.noise[k];
      if (arity == 0) continue;
      const auto index = sample_fault_index(arity, model_, rng);
      if (index == 0) continue;
      for (std::size_t j = 0; j < arity; ++j) {
        const auto letter = fault_letter(index, arity, j);
        if (letter == 1 || letter == 2) flip_bit(fx_, q[j]);
        if (letter == 2 || letter == 3) flip_bit(fz_, q[j]);
      }
    }
  }

 private:
  const Circuit& circuit_;
  const NoiseModel& model_;
  const Prepared& prep_;
  std::size_t words_;
  std::vector<std::uint64_t> fx_;
  std::vector<std::uint64_t> fz_;
};

void tableau_shot(const Circuit& circuit, const NoiseModel& model, const Prepared& prep, Rng& rng,
                  std::string& record) {
  Tableau t(circuit.num_qubits());
  record.assign(circuit.num_clbits(), '0');
  auto coin = [&](std::size_t q) { return t.is_deterministic(q) ? 0 : static_cast<int>(rng() >> 63); };
  const auto& gates = circuit.gates();
  for (std::size_t k = 0; k < gates.size(); ++k) {
    const auto& g = gates[k];
    switch (g.kind) {
      case GateKind::Measure: {
        int m = t.measure(g.qubits[0], coin(g.qubits[0]));
        if (!g.noiseless && model.p_meas > 0.0 && uniform01(rng) < model.p_meas) m ^= 1;
        record[g.clbits[0]] = static_cast<char>('0' + m);
        break;
      }
      case GateKind::Reset:
        t.reset(g.qubits[0], coin(g.qubits[0]));
        break;
      case GateKind::CondX:
      case GateKind::CondZ:
        if (record[g.clbits[0]] == '1') {
          t.apply(g.kind == GateKind::CondX ? GateKind::X : GateKind::Z, g.qubits);
        }
        break;
      case GateKind::LogicalFault:
        if (!g.noiseless) {
          const int f = sample_logical_fault(g.qubits.size(), model, rng);
          if (f == 1 || f == 2) {
            for (auto q : g.qubits) t.apply(GateKind::X, std::span(&q, 1));
          }
          if (f == 2 || f == 3) t.apply(GateKind::Z, std::span(g.qubits.data(), 1));
        }
        break;
      default:
        t.apply(g.kind, g.qubits);
    }
    const auto arity = prep.noise[k];
    if (arity == 0) continue;
    const auto index = sample_fault_index(arity, model, rng);
    if (index == 0) continue;
    static constexpr GateKind kLetters[4] = {GateKind::Id, GateKind::X, GateKind::Y, GateKind::Z};
    for (std::size_t j = 0; j < arity; ++j) {
      const auto letter = fault_letter(index, arity, j);
      if (letter != 0) t.apply(kLetters[letter], std::span(g.qubits.data() + j, 1));
    }
  }
}

}  // namespace

OutcomeHistogram run_trajectories(const Circuit& circuit, const NoiseModel& model,
                                  std::uint64_t shots, std::uint64_t seed,
                                  const TrajectoryOptions& options) {
  circuit.validate();
  model.validate();
  const bool frame = options.engine == TrajectoryEngine::Frame;
  const Prepared prep = prepare(circuit, frame);

  std::size_t threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
  threads = std::max<std::size_t>(1, std::min<std::uint64_t>(threads, std::max<std::uint64_t>(shots, 1)));

  std::vector<FastCounts> partial(threads);
  auto worker = [&](std::size_t t) {
    const std::uint64_t begin = shots * t / threads;
    const std::uint64_t end = shots * (t + 1) / threads;
    FrameShot frame_shot(circuit, model, prep);
    std::string record;
    auto& counts = partial[t];
    for (std::uint64_t k = begin; k < end; ++k) {
      Rng rng = trajectory_rng(seed, k);
      if (frame) frame_shot.run(rng, record);
      else tableau_shot(circuit, model, prep, rng, record);
      ++counts[record];
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  OutcomeHistogram hist;
  hist.num_clbits = circuit.num_clbits();
  for (const auto& counts : partial) {
    for (const auto& [key, n] : counts) hist.add(key, n);
  }
  return hist;
}

OutcomeDistribution enumerate_outcomes(const Circuit& circuit, std::size_t max_branches) {
  circuit.validate();
  prepare(circuit, false);
  struct Branch {
    Tableau tableau;
    std::string record;
    double weight;
  };
  std::vector<Branch> branches;
  branches.push_back({Tableau(circuit.num_qubits()), std::string(circuit.num_clbits(), '0'), 1.0});
  for (const auto& g : circuit.gates()) {
    if (g.kind == GateKind::Measure || g.kind == GateKind::Reset) {
      std::vector<Branch> next;
      for (auto& b : branches) {
        const auto q = g.qubits[0];
        const bool random = !b.tableau.is_deterministic(q);
        const int outcomes = random ? 2 : 1;
        for (int o = 0; o < outcomes; ++o) {
          Branch nb = (o + 1 == outcomes) ? std::move(b) : b;
          const int m = g.kind == GateKind::Measure ? nb.tableau.measure(q, o) : nb.tableau.reset(q, o);
          if (g.kind == GateKind::Measure) nb.record[g.clbits[0]] = static_cast<char>('0' + m);
          if (random) nb.weight *= 0.5;
          next.push_back(std::move(nb));
        }
      }
      branches = std::move(next);
      if (branches.size() > max_branches) {
        throw SimulationError("stabilizer enumeration: branch count exceeds the cap");
      }
      continue;
    }
    for (auto& b : branches) {
      switch (g.kind) {
        case GateKind::CondX:
        case GateKind::CondZ:
          if (b.record[g.clbits[0]] == '1') {
            b.tableau.apply(g.kind == GateKind::CondX ? GateKind::X : GateKind::Z, g.qubits);
          }
          break;
        case GateKind::LogicalFault:
          break;
        default:
          b.tableau.apply(g.kind, g.qubits);
      }
    }
  }
  OutcomeDistribution out{circuit.num_clbits(), {}};
  for (const auto& b : branches) out.probs[b.record] += b.weight;
  return out;
}

}  // namespace ftqem
