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

#ifndef MPSQ_MAGIC_SQUARE_HPP
#define MPSQ_MAGIC_SQUARE_HPP

#include <array>
#include <map>
#include <string>
#include <vector>

#include "mpsq/quantum.hpp"
#include "mpsq/rng.hpp"
#include "mpsq/sign_triple.hpp"

namespace mpsq::magic {

using linalg::CMatrix;

// The 3x3 grid of signed two-qubit observables behind the magic-square
// game. Entries are stored as raw matrices (signs folded in) so that
// deliberately broken squares can be represented; validate_square reports
// which invariants hold. Rows and columns are addressed 1..3.
class MPSquare {
 public:
  explicit MPSquare(std::array<CMatrix, 9> entries);

  const CMatrix& entry(int row, int col) const;

 private:
  std::array<CMatrix, 9> entries_;
};

// The standard square:
//   s0(x)sz   sz(x)s0   sz(x)sz
//   sx(x)s0   s0(x)sx   sx(x)sx
//  -sx(x)sz  -sz(x)sx   sy(x)sy
// Row operator products are +I4, column products are -I4, and entries
// commute along every row and column.
MPSquare build_square();

struct CheckResult {
  bool pass = false;
  double max_residual = 0.0;
};

// Named checks in a fixed order: hermitian, involution, row_commutation,
// column_commutation, row_product_identity, column_product_minus_identity,
// eigenvalues_pm1.
struct ValidationReport {
  std::vector<std::pair<std::string, CheckResult>> checks;

  bool all_pass() const;
  double max_residual() const;
  const CheckResult& check(const std::string& name) const;
};

ValidationReport validate_square(const MPSquare& sq);

// A deterministic strategy pair for the cooperative game: Alice fills row
// i with alice_rows[i-1] (product +1), Bob fills column j with
// bob_cols[j-1] (product -1).
struct DetGameStrategy {
  std::array<SignTriple, 3> alice_rows;
  std::array<SignTriple, 3> bob_cols;

  friend bool operator==(const DetGameStrategy&, const DetGameStrategy&) = default;
};

struct Fraction {
  long long num = 0;
  long long den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

struct BruteForceResult {
  Fraction max_win_prob;
  int max_winning_cells = 0;
  int pair_count = 0;
  // All maximizers, lexicographic in (alice table, bob table).
  std::vector<DetGameStrategy> maximizers;
  bool every_pair_has_losing_cell = false;
};

// Exhaustive search over all 4^3 * 4^3 deterministic strategy pairs under
// uniformly random (i,j). Exact integer counting; no floats.
BruteForceResult classical_bruteforce();

// The four sign triples with the given product (+1 or -1), lexicographic,
// + before -.
std::vector<SignTriple> triples_with_product(int target);

enum class Agent { alice, bob };

// The shared resource of one round/step: two independent Bell pairs on
// four qubits in factor order (Alice-1, Bob-1, Alice-2, Bob-2).
const quantum::DensityMatrix& two_bell_pairs();

struct MeasurementStep {
  Agent agent;
  int line;  // Alice's column l or Bob's row k, 1..3
};
using MeasurementOrder = std::array<MeasurementStep, 6>;

// Alice's three measurements (l = 1,2,3) followed by Bob's (k = 1,2,3).
MeasurementOrder default_measurement_order();

// Precomputed measurement machinery for the entangled strategy: two Bell
// pairs on four qubits ordered (Alice-1, Bob-1, Alice-2, Bob-2); entry
// (i,l) embedded on Alice's factors {0,2}, entry (k,j) on Bob's {1,3}.
// Construction validates the square and throws on a broken one.
class GameContext {
 public:
  explicit GameContext(MPSquare square = build_square());

  const MPSquare& square() const { return square_; }
  const quantum::DensityMatrix& initial_state() const { return initial_; }
  const quantum::PVM& pvm(Agent agent, int row, int col) const;

  static const std::vector<std::size_t>& agent_factors(Agent agent);

 private:
  MPSquare square_;
  quantum::DensityMatrix initial_;
  std::vector<quantum::PVM> alice_pvms_;
  std::vector<quantum::PVM> bob_pvms_;
};

struct RoundOutcome {
  SignTriple alice;  // Alice's row entries, by column l
  SignTriple bob;    // Bob's column entries, by row k

  friend bool operator==(const RoundOutcome&, const RoundOutcome&) = default;
  friend std::strong_ordering operator<=>(const RoundOutcome&,
                                          const RoundOutcome&) = default;
};

bool round_wins(const RoundOutcome& out, int i, int j);

// One seeded play of the entangled strategy on inputs (i,j). The outcome
// triples always satisfy prod(a) = +1, prod(b) = -1 and a_j * b_i = +1.
RoundOutcome quantum_round(const GameContext& ctx, int i, int j, SplitMix64& rng);
RoundOutcome quantum_round(const GameContext& ctx, int i, int j, SplitMix64& rng,
                           const MeasurementOrder& order);

// Exact outcome distribution of the six-measurement procedure, expanding
// all measurement branches. Probabilities sum to 1 within 1e-12.
using RoundDistribution = std::map<RoundOutcome, double>;
RoundDistribution exact_round_distribution(const GameContext& ctx, int i, int j);
RoundDistribution exact_round_distribution(const GameContext& ctx, int i, int j,
                                           const MeasurementOrder& order);

}  // namespace mpsq::magic

#endif  // MPSQ_MAGIC_SQUARE_HPP
