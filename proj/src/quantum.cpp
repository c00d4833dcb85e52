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

#include "mpsq/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mpsq::quantum {

using linalg::is_hermitian;
using linalg::is_identity;
using linalg::is_psd;
using linalg::trace_of_product;

const CMatrix& sigma0() {
  static const CMatrix m = CMatrix::identity(2);
  return m;
}

const CMatrix& sigma_x() {
  static const CMatrix m{{Cx(0, 0), Cx(1, 0)}, {Cx(1, 0), Cx(0, 0)}};
  return m;
}

const CMatrix& sigma_y() {
  static const CMatrix m{{Cx(0, 0), Cx(0, -1)}, {Cx(0, 1), Cx(0, 0)}};
  return m;
}

const CMatrix& sigma_z() {
  static const CMatrix m{{Cx(1, 0), Cx(0, 0)}, {Cx(0, 0), Cx(-1, 0)}};
  return m;
}

PureState::PureState(std::vector<Cx> amplitudes, double tol)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty())
    throw std::invalid_argument("PureState: empty amplitude vector");
  double norm2 = 0.0;
  for (const Cx& z : amplitudes_) norm2 += std::norm(z);
  if (std::abs(std::sqrt(norm2) - 1.0) > tol)
    throw std::invalid_argument("PureState: vector is not normalized");
}

DensityMatrix::DensityMatrix(CMatrix mat, double tol) : mat_(std::move(mat)) {
  if (!is_hermitian(mat_, tol))
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (std::abs(mat_.trace() - Cx(1.0, 0.0)) > tol)
    throw std::invalid_argument("DensityMatrix: trace != 1");
  if (!is_psd(mat_, tol))
    throw std::invalid_argument("DensityMatrix: not positive semidefinite");
}

DensityMatrix::DensityMatrix(CMatrix mat, Trusted) : mat_(std::move(mat)) {
  if (!is_hermitian(mat_, 1e-9) || std::abs(mat_.trace() - Cx(1.0, 0.0)) > 1e-9)
    throw std::invalid_argument("DensityMatrix: invalid collapse result");
}

DichotomicObservable::DichotomicObservable(CMatrix op, double tol)
    : op_(std::move(op)) {
  if (!is_hermitian(op_, tol))
    throw std::invalid_argument("DichotomicObservable: not Hermitian");
  if (!is_identity(op_ * op_, tol))
    throw std::invalid_argument("DichotomicObservable: square is not identity");
}

PVM::PVM(std::vector<double> outcomes, std::vector<CMatrix> projectors,
         double tol)
    : outcomes_(std::move(outcomes)), projectors_(std::move(projectors)) {
  if (outcomes_.empty() || outcomes_.size() != projectors_.size())
    throw std::invalid_argument("PVM: outcomes/projectors size mismatch");

  std::vector<std::size_t> idx(outcomes_.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(),
            [this](std::size_t a, std::size_t b) { return outcomes_[a] < outcomes_[b]; });
  std::vector<double> sorted_outcomes;
  std::vector<CMatrix> sorted_projectors;
  sorted_outcomes.reserve(idx.size());
  sorted_projectors.reserve(idx.size());
  for (std::size_t i : idx) {
    sorted_outcomes.push_back(outcomes_[i]);
    sorted_projectors.push_back(std::move(projectors_[i]));
  }
  outcomes_ = std::move(sorted_outcomes);
  projectors_ = std::move(sorted_projectors);

  for (std::size_t i = 1; i < outcomes_.size(); ++i)
    if (outcomes_[i] == outcomes_[i - 1])
      throw std::invalid_argument("PVM: duplicate outcome label");

  const std::size_t n = projectors_.front().dim();
  CMatrix sum(n);
  for (const CMatrix& p : projectors_) {
    if (p.dim() != n) throw std::invalid_argument("PVM: projector dim mismatch");
    if (!is_hermitian(p, tol))
      throw std::invalid_argument("PVM: projector not Hermitian");
    if (!(p * p).approx_equal(p, tol))
      throw std::invalid_argument("PVM: projector not idempotent");
    sum += p;
  }
  if (!is_identity(sum, tol))
    throw std::invalid_argument("PVM: projectors do not sum to identity");
}

const CMatrix& PVM::projector_for(double outcome) const {
  for (std::size_t i = 0; i < outcomes_.size(); ++i)
    if (outcomes_[i] == outcome) return projectors_[i];
  throw std::invalid_argument("PVM: unknown outcome label");
}

DensityMatrix density_from_pure(const PureState& v) {
  const std::size_t n = v.dim();
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = v.amplitudes()[i] * std::conj(v.amplitudes()[j]);
  return DensityMatrix(std::move(m));
}

PVM pvm_from_dichotomic(const DichotomicObservable& o) {
  const CMatrix id = CMatrix::identity(o.dim());
  CMatrix plus = (id + o.matrix()) * Cx(0.5, 0.0);
  CMatrix minus = (id - o.matrix()) * Cx(0.5, 0.0);
  return PVM({1.0, -1.0}, {std::move(plus), std::move(minus)});
}

std::vector<double> measure_probs(const PVM& m, const DensityMatrix& rho) {
  if (m.dim() != rho.dim())
    throw std::invalid_argument("measure_probs: dimension mismatch");
  std::vector<double> probs(m.outcome_count());
  double sum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    double p = trace_of_product(m.projector(i), rho.matrix()).real();
    if (p < 0.0) {
      if (p < -1e-9)
        throw std::runtime_error("measure_probs: negative probability");
      p = 0.0;
    }
    probs[i] = p;
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::runtime_error("measure_probs: probabilities do not sum to 1");
  return probs;
}

DensityMatrix collapse(const PVM& m, const DensityMatrix& rho, double outcome,
                       double eps) {
  if (m.dim() != rho.dim())
    throw std::invalid_argument("collapse: dimension mismatch");
  const CMatrix& p = m.projector_for(outcome);
  const double prob = trace_of_product(p, rho.matrix()).real();
  if (prob <= eps)
    throw std::invalid_argument("collapse: outcome has (near-)zero probability");
  CMatrix post = p * rho.matrix() * p;
  post *= Cx(1.0 / prob, 0.0);
  return DensityMatrix(std::move(post), DensityMatrix::Trusted{});
}

std::pair<double, DensityMatrix> sample_measurement(const PVM& m,
                                                    const DensityMatrix& rho,
                                                    SplitMix64& rng) {
  const std::vector<double> probs = measure_probs(m, rho);
  const double u = rng.next_double();
  double cum = 0.0;
  std::size_t pick = m.outcome_count() - 1;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    cum += probs[i];
    if (u < cum) {
      pick = i;
      break;
    }
  }
  // Guard against landing in a zero-probability tail cell by rounding.
  while (probs[pick] <= 1e-12 && pick > 0) --pick;
  const double outcome = m.outcomes()[pick];
  return {outcome, collapse(m, rho, outcome)};
}

PureState bell_pair() {
  const double r = 1.0 / std::sqrt(2.0);
  return PureState({Cx(r, 0), Cx(0, 0), Cx(0, 0), Cx(r, 0)});
}

CMatrix partial_transpose(const DensityMatrix& rho, int factor) {
  if (rho.dim() != 4)
    throw std::invalid_argument("partial_transpose: state is not two qubits");
  if (factor != 1 && factor != 2)
    throw std::invalid_argument("partial_transpose: factor must be 1 or 2");
  const CMatrix& m = rho.matrix();
  CMatrix out(4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t l = 0; l < 2; ++l) {
          // Entry ((i,k),(j,l)); transposing a factor swaps its row and
          // column digit.
          const Cx src = factor == 1 ? m(2 * j + k, 2 * i + l)
                                     : m(2 * i + l, 2 * j + k);
          out(2 * i + k, 2 * j + l) = src;
        }
  return out;
}

bool is_entangled_2q(const DensityMatrix& rho, double tol) {
  const std::vector<double> evs =
      linalg::hermitian_eigenvalues(partial_transpose(rho, 2), 1e-12);
  return evs.back() < -tol;
}

}  // namespace mpsq::quantum
