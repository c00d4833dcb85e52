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

#include "mpsq/magic_square.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace mpsq::magic {

using linalg::embed_on_factors;
using linalg::FactorShape;
using linalg::hermitian_eigenvalues;
using linalg::kron;
using quantum::DensityMatrix;
using quantum::DichotomicObservable;
using quantum::PVM;
using quantum::sigma0;
using quantum::sigma_x;
using quantum::sigma_y;
using quantum::sigma_z;
using Cx = linalg::Cx;

MPSquare::MPSquare(std::array<CMatrix, 9> entries) : entries_(std::move(entries)) {
  for (const CMatrix& e : entries_)
    if (e.dim() != 4)
      throw std::invalid_argument("MPSquare: entries must be 4x4 (two qubits)");
}

const CMatrix& MPSquare::entry(int row, int col) const {
  if (row < 1 || row > 3 || col < 1 || col > 3)
    throw std::out_of_range("MPSquare: row/col not in 1..3");
  return entries_[static_cast<std::size_t>((row - 1) * 3 + (col - 1))];
}

MPSquare build_square() {
  return MPSquare({
      kron(sigma0(), sigma_z()), kron(sigma_z(), sigma0()), kron(sigma_z(), sigma_z()),
      kron(sigma_x(), sigma0()), kron(sigma0(), sigma_x()), kron(sigma_x(), sigma_x()),
      -kron(sigma_x(), sigma_z()), -kron(sigma_z(), sigma_x()), kron(sigma_y(), sigma_y()),
  });
}

bool ValidationReport::all_pass() const {
  for (const auto& [name, result] : checks)
    if (!result.pass) return false;
  return true;
}

double ValidationReport::max_residual() const {
  double m = 0.0;
  for (const auto& [name, result] : checks) m = std::max(m, result.max_residual);
  return m;
}

const CheckResult& ValidationReport::check(const std::string& name) const {
  for (const auto& [n, result] : checks)
    if (n == name) return result;
  throw std::invalid_argument("ValidationReport: unknown check " + name);
}

ValidationReport validate_square(const MPSquare& sq) {
  constexpr double kTol = 1e-9;
  const CMatrix id = CMatrix::identity(4);
  ValidationReport report;

  double herm = 0.0;
  double invol = 0.0;
  double eig = 0.0;
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      const CMatrix& e = sq.entry(i, j);
      herm = std::max(herm, e.max_abs_diff(e.dagger()));
      invol = std::max(invol, (e * e).max_abs_diff(id));
      if (linalg::is_hermitian(e, kTol)) {
        for (double ev : hermitian_eigenvalues(e))
          eig = std::max(eig, std::min(std::abs(ev - 1.0), std::abs(ev + 1.0)));
      } else {
        eig = std::max(eig, 1.0);
      }
    }
  }

  double row_comm = 0.0;
  double col_comm = 0.0;
  for (int a = 1; a <= 3; ++a) {
    for (int u = 1; u <= 3; ++u) {
      for (int v = u + 1; v <= 3; ++v) {
        const CMatrix& ru = sq.entry(a, u);
        const CMatrix& rv = sq.entry(a, v);
        row_comm = std::max(row_comm, (ru * rv).max_abs_diff(rv * ru));
        const CMatrix& cu = sq.entry(u, a);
        const CMatrix& cv = sq.entry(v, a);
        col_comm = std::max(col_comm, (cu * cv).max_abs_diff(cv * cu));
      }
    }
  }

  double row_prod = 0.0;
  double col_prod = 0.0;
  for (int a = 1; a <= 3; ++a) {
    const CMatrix rp = sq.entry(a, 1) * sq.entry(a, 2) * sq.entry(a, 3);
    row_prod = std::max(row_prod, rp.max_abs_diff(id));
    const CMatrix cp = sq.entry(1, a) * sq.entry(2, a) * sq.entry(3, a);
    col_prod = std::max(col_prod, cp.max_abs_diff(-id));
  }

  const auto add = [&report](const char* name, double residual) {
    report.checks.emplace_back(name, CheckResult{residual <= kTol, residual});
  };
  add("hermitian", herm);
  add("involution", invol);
  add("row_commutation", row_comm);
  add("column_commutation", col_comm);
  add("row_product_identity", row_prod);
  add("column_product_minus_identity", col_prod);
  add("eigenvalues_pm1", eig);
  return report;
}

std::vector<SignTriple> triples_with_product(int target) {
  if (target != 1 && target != -1)
    throw std::invalid_argument("triples_with_product: target must be +1 or -1");
  std::vector<SignTriple> out;
  const int signs[2] = {1, -1};  // lexicographic: + before -
  for (int a : signs)
    for (int b : signs)
      for (int c : signs)
        if (a * b * c == target) out.emplace_back(a, b, c);
  return out;
}

BruteForceResult classical_bruteforce() {
  const std::vector<SignTriple> alice_choices = triples_with_product(1);
  const std::vector<SignTriple> bob_choices = triples_with_product(-1);

  const auto table_from_index = [](const std::vector<SignTriple>& choices, int idx) {
    // Base-4 digits, most significant digit = line 1, so ascending index
    // is lexicographic in the table.
    std::array<SignTriple, 3> t;
    t[0] = choices[static_cast<std::size_t>((idx / 16) % 4)];
    t[1] = choices[static_cast<std::size_t>((idx / 4) % 4)];
    t[2] = choices[static_cast<std::size_t>(idx % 4)];
    return t;
  };

  BruteForceResult result;
  result.pair_count = 0;
  result.max_winning_cells = -1;
  result.every_pair_has_losing_cell = true;

  for (int ai = 0; ai < 64; ++ai) {
    const std::array<SignTriple, 3> alice = table_from_index(alice_choices, ai);
    for (int bi = 0; bi < 64; ++bi) {
      const std::array<SignTriple, 3> bob = table_from_index(bob_choices, bi);
      ++result.pair_count;
      int wins = 0;
      for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
          if (alice[static_cast<std::size_t>(i - 1)].at(j) *
                  bob[static_cast<std::size_t>(j - 1)].at(i) ==
              1)
            ++wins;
      if (wins == 9) result.every_pair_has_losing_cell = false;
      if (wins > result.max_winning_cells) {
        result.max_winning_cells = wins;
        result.maximizers.clear();
      }
      if (wins == result.max_winning_cells)
        result.maximizers.push_back(DetGameStrategy{alice, bob});
    }
  }

  result.max_win_prob = Fraction{result.max_winning_cells, 9};
  return result;
}

MeasurementOrder default_measurement_order() {
  return {{{Agent::alice, 1},
           {Agent::alice, 2},
           {Agent::alice, 3},
           {Agent::bob, 1},
           {Agent::bob, 2},
           {Agent::bob, 3}}};
}

const std::vector<std::size_t>& GameContext::agent_factors(Agent agent) {
  static const std::vector<std::size_t> alice{0, 2};
  static const std::vector<std::size_t> bob{1, 3};
  return agent == Agent::alice ? alice : bob;
}

const quantum::DensityMatrix& two_bell_pairs() {
  static const quantum::DensityMatrix state = [] {
    const auto bell = quantum::bell_pair().amplitudes();
    // kron of the two Bell vectors; pair 1 spans factors (0,1) = (A1,B1),
    // pair 2 spans factors (2,3) = (A2,B2).
    std::vector<Cx> amps(16);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) amps[i * 4 + j] = bell[i] * bell[j];
    return quantum::density_from_pure(quantum::PureState(std::move(amps)));
  }();
  return state;
}

GameContext::GameContext(MPSquare square)
    : square_(std::move(square)), initial_(two_bell_pairs()) {
  const ValidationReport report = validate_square(square_);
  if (!report.all_pass())
    throw std::invalid_argument("GameContext: square fails validation");

  const FactorShape four_qubits = FactorShape::qubits(4);
  alice_pvms_.reserve(9);
  bob_pvms_.reserve(9);
  for (int row = 1; row <= 3; ++row) {
    for (int col = 1; col <= 3; ++col) {
      const CMatrix& e = square_.entry(row, col);
      alice_pvms_.push_back(pvm_from_dichotomic(DichotomicObservable(
          embed_on_factors(e, agent_factors(Agent::alice), four_qubits))));
      bob_pvms_.push_back(pvm_from_dichotomic(DichotomicObservable(
          embed_on_factors(e, agent_factors(Agent::bob), four_qubits))));
    }
  }
}

const PVM& GameContext::pvm(Agent agent, int row, int col) const {
  if (row < 1 || row > 3 || col < 1 || col > 3)
    throw std::out_of_range("GameContext: row/col not in 1..3");
  const std::size_t idx = static_cast<std::size_t>((row - 1) * 3 + (col - 1));
  return agent == Agent::alice ? alice_pvms_[idx] : bob_pvms_[idx];
}

bool round_wins(const RoundOutcome& out, int i, int j) {
  return out.alice.at(j) * out.bob.at(i) == 1;
}

namespace {

const PVM& step_pvm(const GameContext& ctx, int i, int j,
                    const MeasurementStep& step) {
  // Alice measures along row i, Bob along column j.
  return step.agent == Agent::alice ? ctx.pvm(Agent::alice, i, step.line)
                                    : ctx.pvm(Agent::bob, step.line, j);
}

void record_outcome(RoundOutcome& out, const MeasurementStep& step, int value) {
  auto& triple = step.agent == Agent::alice ? out.alice : out.bob;
  triple.s[static_cast<std::size_t>(step.line - 1)] = value;
}

void require_indices(int i, int j) {
  if (i < 1 || i > 3 || j < 1 || j > 3)
    throw std::invalid_argument("round indices must be in 1..3");
}

void expand_branches(const GameContext& ctx, int i, int j,
                     const MeasurementOrder& order, std::size_t depth,
                     const DensityMatrix& state, double prob, RoundOutcome& partial,
                     RoundDistribution& dist) {
  if (depth == order.size()) {
    dist[partial] += prob;
    return;
  }
  const PVM& pvm = step_pvm(ctx, i, j, order[depth]);
  const std::vector<double> probs = quantum::measure_probs(pvm, state);
  for (std::size_t o = 0; o < probs.size(); ++o) {
    if (probs[o] <= 1e-14) continue;
    const double outcome = pvm.outcomes()[o];
    record_outcome(partial, order[depth], outcome > 0 ? 1 : -1);
    expand_branches(ctx, i, j, order, depth + 1,
                    quantum::collapse(pvm, state, outcome), prob * probs[o],
                    partial, dist);
  }
}

}  // namespace

RoundOutcome quantum_round(const GameContext& ctx, int i, int j, SplitMix64& rng,
                           const MeasurementOrder& order) {
  require_indices(i, j);
  RoundOutcome out;
  DensityMatrix state = ctx.initial_state();
  for (const MeasurementStep& step : order) {
    auto [outcome, next] = quantum::sample_measurement(step_pvm(ctx, i, j, step),
                                                       state, rng);
    record_outcome(out, step, outcome > 0 ? 1 : -1);
    state = std::move(next);
  }
  return out;
}

RoundOutcome quantum_round(const GameContext& ctx, int i, int j, SplitMix64& rng) {
  return quantum_round(ctx, i, j, rng, default_measurement_order());
}

RoundDistribution exact_round_distribution(const GameContext& ctx, int i, int j,
                                           const MeasurementOrder& order) {
  require_indices(i, j);
  RoundDistribution dist;
  RoundOutcome partial;
  expand_branches(ctx, i, j, order, 0, ctx.initial_state(), 1.0, partial, dist);
  return dist;
}

RoundDistribution exact_round_distribution(const GameContext& ctx, int i, int j) {
  return exact_round_distribution(ctx, i, j, default_measurement_order());
}

}  // namespace mpsq::magic
