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

#include "ftqem/density_matrix.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "ftqem/error.hpp"

namespace ftqem {

namespace {

using cplx = std::complex<double>;

constexpr double kInvSqrt2 = 0.70710678118654752440;

int parity_sign(std::uint64_t v) { return (std::popcount(v) & 1) ? -1 : 1; }

std::uint64_t mask_of(std::span<const std::size_t> qubits) {
  std::uint64_t m = 0;
  for (auto q : qubits) m |= std::uint64_t{1} << q;
  return m;
}

}  // namespace

DensityState::DensityState(std::size_t num_qubits) : DensityState(basis(num_qubits, 0)) {}

DensityState DensityState::basis(std::size_t num_qubits, std::uint64_t index) {
  if (num_qubits > 30) throw SimulationError("density matrix: register too large");
  const auto dim = std::size_t{1} << num_qubits;
  if (index >= dim) throw SimulationError("density matrix: basis index out of range");
  Matrix rho = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  rho(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
  return DensityState(num_qubits, std::move(rho));
}

DensityState DensityState::from_matrix(Matrix rho) {
  const auto dim = static_cast<std::size_t>(rho.rows());
  if (rho.rows() != rho.cols() || dim == 0 || (dim & (dim - 1)) != 0) {
    throw SimulationError("density matrix: expected a square matrix of power-of-two size");
  }
  return DensityState(static_cast<std::size_t>(std::countr_zero(dim)), std::move(rho));
}

void DensityState::apply_1q(std::size_t q, const cplx u[4]) {
  const auto d = static_cast<Eigen::Index>(dim());
  const Eigen::Index m = Eigen::Index{1} << q;
  // rows: rho <- U rho
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      if (i & m) continue;
      const cplx a = rho_(i, j), b = rho_(i | m, j);
      rho_(i, j) = u[0] * a + u[1] * b;
      rho_(i | m, j) = u[2] * a + u[3] * b;
    }
  }
  // columns: rho <- rho U^dag
  for (Eigen::Index j = 0; j < d; ++j) {
    if (j & m) continue;
    for (Eigen::Index i = 0; i < d; ++i) {
      const cplx a = rho_(i, j), b = rho_(i, j | m);
      rho_(i, j) = a * std::conj(u[0]) + b * std::conj(u[1]);
      rho_(i, j | m) = a * std::conj(u[2]) + b * std::conj(u[3]);
    }
  }
}

void DensityState::apply_unitary(GateKind kind, std::span<const std::size_t> qubits) {
  for (auto q : qubits) {
    if (q >= n_) throw SimulationError("density matrix: qubit " + std::to_string(q) + " out of range");
  }
  const auto d = static_cast<Eigen::Index>(dim());
  switch (kind) {
    case GateKind::Id:
      return;
    case GateKind::X:
      return apply_pauli(mask_of(qubits), 0);
    case GateKind::Z:
      return apply_pauli(0, mask_of(qubits));
    case GateKind::Y:
      return apply_pauli(mask_of(qubits), mask_of(qubits));
    case GateKind::H: {
      const cplx u[4] = {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
      return apply_1q(qubits[0], u);
    }
    case GateKind::S: {
      const cplx u[4] = {1.0, 0.0, 0.0, cplx(0.0, 1.0)};
      return apply_1q(qubits[0], u);
    }
    case GateKind::SDag: {
      const cplx u[4] = {1.0, 0.0, 0.0, cplx(0.0, -1.0)};
      return apply_1q(qubits[0], u);
    }
    case GateKind::CX: {
      const Eigen::Index c = Eigen::Index{1} << qubits[0];
      const Eigen::Index t = Eigen::Index{1} << qubits[1];
      auto perm = [&](Eigen::Index i) { return (i & c) ? (i ^ t) : i; };
      Matrix out(d, d);
      for (Eigen::Index j = 0; j < d; ++j) {
        const auto pj = perm(j);
        for (Eigen::Index i = 0; i < d; ++i) out(i, j) = rho_(perm(i), pj);
      }
      rho_ = std::move(out);
      return;
    }
    case GateKind::CZ: {
      const Eigen::Index both = (Eigen::Index{1} << qubits[0]) | (Eigen::Index{1} << qubits[1]);
      for (Eigen::Index j = 0; j < d; ++j) {
        const bool sj = (j & both) == both;
        for (Eigen::Index i = 0; i < d; ++i) {
          if (sj != ((i & both) == both)) rho_(i, j) = -rho_(i, j);
        }
      }
      return;
    }
    default:
      throw UnsupportedGate("density matrix: '" + std::string(mnemonic(kind)) + "' is not unitary");
  }
}

void DensityState::apply_pauli(std::uint64_t xmask, std::uint64_t zmask) {
  if (xmask == 0 && zmask == 0) return;
  const auto d = static_cast<Eigen::Index>(dim());
  const auto x = static_cast<Eigen::Index>(xmask);
  Matrix out(d, d);
  for (Eigen::Index b = 0; b < d; ++b) {
    const auto sb = parity_sign(static_cast<std::uint64_t>(b ^ x) & zmask);
    for (Eigen::Index a = 0; a < d; ++a) {
      const auto sa = parity_sign(static_cast<std::uint64_t>(a ^ x) & zmask);
      out(a, b) = static_cast<double>(sa * sb) * rho_(a ^ x, b ^ x);
    }
  }
  rho_ = std::move(out);
}

void DensityState::depolarize(std::span<const std::size_t> qubits, double lambda) {
  if (lambda == 0.0) return;
  const auto d = static_cast<Eigen::Index>(dim());
  const auto m = static_cast<Eigen::Index>(mask_of(qubits));
  std::vector<Eigen::Index> subsets;
  for (Eigen::Index b = m;; b = (b - 1) & m) {
    subsets.push_back(b);
    if (b == 0) break;
  }
  const double share = lambda / static_cast<double>(subsets.size());
  for (Eigen::Index jb = 0; jb < d; ++jb) {
    if (jb & m) continue;
    for (Eigen::Index ib = 0; ib < d; ++ib) {
      if (ib & m) continue;
      cplx s = 0.0;
      for (auto b : subsets) s += rho_(ib | b, jb | b);
      for (auto b1 : subsets) {
        for (auto b2 : subsets) {
          auto& e = rho_(ib | b1, jb | b2);
          e *= (1.0 - lambda);
          if (b1 == b2) e += share * s;
        }
      }
    }
  }
}

void DensityState::logical_fault(std::span<const std::size_t> qubits, double rate) {
  if (rate == 0.0 || qubits.empty()) return;
  const auto xm = mask_of(qubits);
  const auto zm = std::uint64_t{1} << qubits.front();
  const Matrix original = rho_;
  Matrix acc = (1.0 - rate) * original;
  const std::uint64_t masks[3][2] = {{xm, 0}, {xm, zm}, {0, zm}};
  for (const auto& mz : masks) {
    rho_ = original;
    apply_pauli(mz[0], mz[1]);
    acc += (rate / 3.0) * rho_;
  }
  rho_ = std::move(acc);
}

void DensityState::reset(std::size_t q) {
  const auto d = static_cast<Eigen::Index>(dim());
  const Eigen::Index m = Eigen::Index{1} << q;
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      if ((i & m) || (j & m)) continue;
      rho_(i, j) += rho_(i | m, j | m);
    }
  }
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      if ((i & m) || (j & m)) rho_(i, j) = 0.0;
    }
  }
}

double DensityState::probability_one(std::size_t q) const {
  const auto d = static_cast<Eigen::Index>(dim());
  const Eigen::Index m = Eigen::Index{1} << q;
  double p = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (i & m) p += rho_(i, i).real();
  }
  return p;
}

double DensityState::project(std::size_t q, int outcome) {
  const double p1 = probability_one(q);
  const double p = outcome ? p1 : trace() - p1;
  if (p <= 0.0) return 0.0;
  const auto d = static_cast<Eigen::Index>(dim());
  const Eigen::Index m = Eigen::Index{1} << q;
  const Eigen::Index keep = outcome ? m : 0;
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      if ((i & m) != keep || (j & m) != keep) rho_(i, j) = 0.0;
      else rho_(i, j) /= p;
    }
  }
  return p;
}

double DensityState::trace() const { return rho_.trace().real(); }

double DensityState::purity() const { return (rho_ * rho_).trace().real(); }

double DensityState::hermiticity_error() const {
  return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityState::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void DensityState::check_valid(double tol) const {
  if (std::abs(trace() - 1.0) > tol) {
    throw SimulationError("density matrix: trace drifted to " + std::to_string(trace()));
  }
  if (hermiticity_error() > tol) throw SimulationError("density matrix: lost Hermiticity");
}

DensityState DensityState::mix(const DensityState& a, double wa, const DensityState& b, double wb) {
  if (a.n_ != b.n_) throw SimulationError("density matrix: mixing states of different sizes");
  return DensityState(a.n_, (wa * a.rho_ + wb * b.rho_) / (wa + wb));
}

namespace {

struct Branch {
  DensityState state;
  std::string record;
  double weight;
};

/// Marks measurements whose qubit and clbit are never touched afterwards.
std::vector<bool> terminal_measurements(const Circuit& circuit) {
  const auto& gates = circuit.gates();
  std::vector<bool> terminal(gates.size(), false);
  std::vector<bool> qubit_used(circuit.num_qubits(), false);
  std::vector<bool> clbit_used(circuit.num_clbits(), false);
  for (std::size_t k = gates.size(); k-- > 0;) {
    const auto& g = gates[k];
    if (g.kind == GateKind::Measure) {
      terminal[k] = !qubit_used[g.qubits[0]] && !clbit_used[g.clbits[0]];
    }
    for (auto q : g.qubits) qubit_used[q] = true;
    for (auto c : g.clbits) clbit_used[c] = true;
  }
  return terminal;
}

void apply_noise(DensityState& state, const Gate& g, const NoiseModel& model) {
  const auto arity = noise_arity(g);
  if (arity == 0) return;
  state.depolarize(g.qubits, model.mixing_weight(arity));
}

void merge_branches(std::vector<Branch>& branches) {
  std::map<std::string, std::size_t> index;
  std::vector<Branch> merged;
  for (auto& b : branches) {
    auto [it, fresh] = index.emplace(b.record, merged.size());
    if (fresh) {
      merged.push_back(std::move(b));
    } else {
      auto& m = merged[it->second];
      m.state = DensityState::mix(m.state, m.weight, b.state, b.weight);
      m.weight += b.weight;
    }
  }
  branches = std::move(merged);
}

}  // namespace

OutcomeDistribution run_dm(const Circuit& circuit, const NoiseModel& model, const DmOptions& options) {
  if (circuit.num_qubits() > options.max_qubits) {
    throw SimulationError("density matrix: " + std::to_string(circuit.num_qubits()) +
                          " qubits exceeds the cap of " + std::to_string(options.max_qubits));
  }
  return run_dm(DensityState(circuit.num_qubits()), circuit, model, options);
}

OutcomeDistribution run_dm(const DensityState& initial, const Circuit& circuit,
                           const NoiseModel& model, const DmOptions& options) {
  if (initial.num_qubits() != circuit.num_qubits()) {
    throw SimulationError("density matrix: initial state size does not match the circuit");
  }
  if (circuit.num_qubits() > options.max_qubits) {
    throw SimulationError("density matrix: register exceeds the qubit cap");
  }
  circuit.validate();
  model.validate();

  const auto terminal = terminal_measurements(circuit);
  const auto& gates = circuit.gates();
  std::vector<bool> discard(circuit.num_clbits(), false);
  for (auto c : options.discard_clbits) {
    if (c >= circuit.num_clbits()) throw SimulationError("density matrix: discarded clbit out of range");
    discard[c] = true;
  }
  // Gate index after which each discarded clbit is dead.
  std::vector<std::vector<std::size_t>> dies_after(gates.size());
  {
    std::vector<bool> seen(circuit.num_clbits(), false);
    for (std::size_t k = gates.size(); k-- > 0;) {
      for (auto c : gates[k].clbits) {
        if (discard[c] && !seen[c]) dies_after[k].push_back(c);
        seen[c] = true;
      }
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> readout;  // (qubit, clbit)
  std::vector<Branch> branches;
  branches.push_back({initial, std::string(circuit.num_clbits(), '0'), 1.0});

  for (std::size_t k = 0; k < gates.size(); ++k) {
    const auto& g = gates[k];
    const double pm = g.noiseless ? 0.0 : model.p_meas;
    if (g.kind == GateKind::Measure && terminal[k]) {
      if (!discard[g.clbits[0]]) readout.emplace_back(g.qubits[0], g.clbits[0]);
      continue;
    }
    if (g.kind == GateKind::Measure) {
      std::vector<Branch> next;
      for (auto& b : branches) {
        for (int outcome = 0; outcome < 2; ++outcome) {
          DensityState s = b.state;
          const double p = s.project(g.qubits[0], outcome);
          if (p <= 0.0) continue;
          for (int flip = 0; flip < 2; ++flip) {
            const double pf = flip ? pm : 1.0 - pm;
            if (pf <= 0.0) continue;
            Branch nb{s, b.record, b.weight * p * pf};
            nb.record[g.clbits[0]] = static_cast<char>('0' + (outcome ^ flip));
            next.push_back(std::move(nb));
          }
        }
      }
      branches = std::move(next);
      for (auto c : dies_after[k]) {
        for (auto& b : branches) b.record[c] = '0';
      }
      merge_branches(branches);
      if (branches.size() > options.max_branches) {
        throw SimulationError("density matrix: branch count exceeds the cap");
      }
      continue;
    }
    for (auto& b : branches) {
      switch (g.kind) {
        case GateKind::Reset:
          b.state.reset(g.qubits[0]);
          break;
        case GateKind::CondX:
          if (b.record[g.clbits[0]] == '1') b.state.apply_unitary(GateKind::X, g.qubits);
          break;
        case GateKind::CondZ:
          if (b.record[g.clbits[0]] == '1') b.state.apply_unitary(GateKind::Z, g.qubits);
          break;
        case GateKind::LogicalFault:
          if (!g.noiseless) b.state.logical_fault(g.qubits, model.logical_fault_rate(g.qubits.size()));
          break;
        default:
          b.state.apply_unitary(g.kind, g.qubits);
      }
      apply_noise(b.state, g, model);
      if (options.check_each_step) b.state.check_valid();
    }
    if (!dies_after[k].empty()) {
      for (auto& b : branches) {
        for (auto c : dies_after[k]) b.record[c] = '0';
      }
      merge_branches(branches);
    }
  }

  OutcomeDistribution out{circuit.num_clbits(), {}};
  for (const auto& b : branches) {
    const auto& rho = b.state.matrix();
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
      const double p = rho(i, i).real() * b.weight;
      if (!(p > 0.0)) continue;
      std::string key = b.record;
      for (auto [q, c] : readout) key[c] = ((i >> q) & 1) ? '1' : '0';
      out.probs[key] += p;
    }
  }
  if (model.p_meas > 0.0) {
    std::vector<std::size_t> flipped;
    for (std::size_t k = 0; k < gates.size(); ++k) {
      if (terminal[k] && !gates[k].noiseless && !discard[gates[k].clbits[0]]) flipped.push_back(gates[k].clbits[0]);
    }
    for (auto c : flipped) {
      std::map<std::string, double> next;
      for (const auto& [key, p] : out.probs) {
        next[key] += (1.0 - model.p_meas) * p;
        auto other = key;
        other[c] = other[c] == '0' ? '1' : '0';
        next[other] += model.p_meas * p;
      }
      out.probs = std::move(next);
    }
  }
  return out;
}

DensityState evolve_dm(DensityState state, const Circuit& circuit, const NoiseModel& model,
                       const DmOptions& options) {
  for (const auto& g : circuit.gates()) {
    switch (g.kind) {
      case GateKind::Measure:
      case GateKind::CondX:
      case GateKind::CondZ:
        throw UnsupportedGate("evolve_dm: circuit must not measure or branch");
      case GateKind::Reset:
        state.reset(g.qubits[0]);
        break;
      case GateKind::LogicalFault:
        if (!g.noiseless) state.logical_fault(g.qubits, model.logical_fault_rate(g.qubits.size()));
        break;
      default:
        state.apply_unitary(g.kind, g.qubits);
    }
    apply_noise(state, g, model);
    if (options.check_each_step) state.check_valid();
  }
  return state;
}

}  // namespace ftqem
