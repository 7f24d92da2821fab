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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ftqem/circuit.hpp"
#include "ftqem/noise.hpp"
#include "ftqem/outcomes.hpp"

namespace ftqem {

/// Dense density operator on n qubits. Qubit q is bit q of the row/column index.
class DensityState {
 public:
  using Matrix = Eigen::MatrixXcd;

  /// |0...0><0...0|
  explicit DensityState(std::size_t num_qubits);
  static DensityState basis(std::size_t num_qubits, std::uint64_t index);
  static DensityState from_matrix(Matrix rho);

  std::size_t num_qubits() const { return n_; }
  std::size_t dim() const { return std::size_t{1} << n_; }
  const Matrix& matrix() const { return rho_; }

  /// Unitary Clifford gates and Id. Throws UnsupportedGate otherwise.
  void apply_unitary(GateKind kind, std::span<const std::size_t> qubits);
  /// rho -> P rho P^dag with P = X^xmask Z^zmask.
  void apply_pauli(std::uint64_t xmask, std::uint64_t zmask);
  /// rho -> (1 - lambda) rho + lambda (Tr_Q rho) (x) I / 2^|Q|.
  void depolarize(std::span<const std::size_t> qubits, double lambda);
  /// X_L (X on all), Z_L (Z on the first), Y_L, each with probability rate / 3.
  void logical_fault(std::span<const std::size_t> qubits, double rate);
  void reset(std::size_t q);

  double probability_one(std::size_t q) const;
  /// Projects qubit q onto |outcome>, renormalizes, returns the probability.
  /// The state is left untouched when the probability is zero.
  double project(std::size_t q, int outcome);

  double trace() const;
  double purity() const;
  double hermiticity_error() const;
  double min_eigenvalue() const;
  /// Throws SimulationError when trace or Hermiticity drift past `tol`.
  void check_valid(double tol = 1e-10) const;

  /// Weighted sum: (wa a + wb b) / (wa + wb).
  static DensityState mix(const DensityState& a, double wa, const DensityState& b, double wb);

 private:
  DensityState(std::size_t n, Matrix rho) : n_(n), rho_(std::move(rho)) {}
  void apply_1q(std::size_t q, const std::complex<double> u[4]);

  std::size_t n_ = 0;
  Matrix rho_;
};

struct DmOptions {
  std::size_t max_qubits = 12;
  std::size_t max_branches = 4096;
  /// Check trace and Hermiticity after every gate and channel.
  bool check_each_step = false;
  /// Clbits that are not reported: each reads as '0' once nothing reads it
  /// again, which lets branches that differ only there merge.
  std::vector<std::size_t> discard_clbits;
};

/// Exact outcome distribution over the classical register. Measurements whose
/// qubit and clbit are never touched again are read off the final diagonal;
/// every other measurement branches, and branches with equal records merge.
OutcomeDistribution run_dm(const Circuit& circuit, const NoiseModel& model,
                           const DmOptions& options = {});
OutcomeDistribution run_dm(const DensityState& initial, const Circuit& circuit,
                           const NoiseModel& model, const DmOptions& options = {});

/// Final (unnormalized-by-branch) state of a circuit without measurements.
DensityState evolve_dm(DensityState state, const Circuit& circuit, const NoiseModel& model,
                       const DmOptions& options = {});

}  // namespace ftqem
