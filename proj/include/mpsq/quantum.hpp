// Copyright 2026 The mpsq Authors
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

#ifndef MPSQ_QUANTUM_HPP
#define MPSQ_QUANTUM_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "mpsq/complex_matrix.hpp"
#include "mpsq/rng.hpp"

namespace mpsq::quantum {

using linalg::CMatrix;
using linalg::Cx;
using linalg::kDefaultTol;

// Pauli matrices. sigma0 is the 2x2 identity.
const CMatrix& sigma0();
const CMatrix& sigma_x();
const CMatrix& sigma_y();
const CMatrix& sigma_z();

// Unit vector in C^dim. The constructor rejects vectors whose Euclidean
// norm differs from 1 by more than tol.
class PureState {
 public:
  explicit PureState(std::vector<Cx> amplitudes, double tol = kDefaultTol);

  std::size_t dim() const { return amplitudes_.size(); }
  const std::vector<Cx>& amplitudes() const { return amplitudes_; }

 private:
  std::vector<Cx> amplitudes_;
};

// Hermitian, PSD, trace-1 matrix. The public constructor checks all three
// invariants (PSD via the Jacobi spectrum).
class DensityMatrix {
 public:
  explicit DensityMatrix(CMatrix mat, double tol = kDefaultTol);

  std::size_t dim() const { return mat_.dim(); }
  const CMatrix& matrix() const { return mat_; }

 private:
  struct Trusted {};
  // Fast path for states produced by collapse, which are PSD by
  // construction; checks Hermiticity and trace only.
  DensityMatrix(CMatrix mat, Trusted);

  friend DensityMatrix collapse(const class PVM&, const DensityMatrix&, double,
                                double);
  CMatrix mat_;
};

// Hermitian involution (eigenvalues in {+1, -1}); the observables of this
// project. A degenerate direction is allowed: sigma0 is a valid value.
class DichotomicObservable {
 public:
  explicit DichotomicObservable(CMatrix op, double tol = kDefaultTol);

  std::size_t dim() const { return op_.dim(); }
  const CMatrix& matrix() const { return op_; }

 private:
  CMatrix op_;
};

// Projection-valued measurement: real outcome labels with orthogonal
// projectors summing to the identity. Outcomes are kept in ascending
// label order; sampling uses the inverse CDF in that order.
class PVM {
 public:
  PVM(std::vector<double> outcomes, std::vector<CMatrix> projectors,
      double tol = kDefaultTol);

  std::size_t dim() const { return projectors_.front().dim(); }
  std::size_t outcome_count() const { return outcomes_.size(); }
  const std::vector<double>& outcomes() const { return outcomes_; }
  const CMatrix& projector(std::size_t index) const { return projectors_[index]; }
  const CMatrix& projector_for(double outcome) const;

 private:
  std::vector<double> outcomes_;
  std::vector<CMatrix> projectors_;
};

DensityMatrix density_from_pure(const PureState& v);

// Spectral PVM {(+1, (I+O)/2), (-1, (I-O)/2)} of a dichotomic observable.
PVM pvm_from_dichotomic(const DichotomicObservable& o);

// Outcome probabilities Tr(P(a) rho), aligned with m.outcomes(). Tiny
// negative traces are clamped to zero; the vector sums to 1 within 1e-9.
std::vector<double> measure_probs(const PVM& m, const DensityMatrix& rho);

// Post-measurement state P rho P / Tr(P rho). Throws std::invalid_argument
// if the outcome probability is <= eps (collapse undefined).
DensityMatrix collapse(const PVM& m, const DensityMatrix& rho, double outcome,
                       double eps = 1e-12);

// Draw an outcome by inverse CDF over ascending labels and collapse.
// Deterministic given the generator state.
std::pair<double, DensityMatrix> sample_measurement(const PVM& m,
                                                    const DensityMatrix& rho,
                                                    SplitMix64& rng);

// (|00> + |11>)/sqrt(2) in the lexicographic basis |00>,|01>,|10>,|11>.
PureState bell_pair();

// Transpose of one tensor factor of a two-qubit state. factor is 1 or 2.
// The result is Hermitian but not necessarily PSD, hence a plain matrix.
CMatrix partial_transpose(const DensityMatrix& rho, int factor);

// Negative partial-transpose witness; decisive for 2x2 systems.
bool is_entangled_2q(const DensityMatrix& rho, double tol = kDefaultTol);

}  // namespace mpsq::quantum

#endif  // MPSQ_QUANTUM_HPP
