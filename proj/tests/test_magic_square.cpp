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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "mpsq/magic_square.hpp"
#include "mpsq/rng.hpp"
#include "oracles.hpp"

using namespace mpsq;
using namespace mpsq::magic;
using linalg::CMatrix;
using linalg::Cx;
using linalg::kron;
using quantum::sigma0;
using quantum::sigma_x;
using quantum::sigma_y;
using quantum::sigma_z;

namespace {

// The square as symbolic Pauli pairs (phase_pow 2 encodes the minus sign),
// written down independently of build_square.
oracle::SPauli2 symbolic_entry(int i, int j) {
  static const oracle::SPauli2 grid[3][3] = {
      {{0, 0, 3}, {0, 3, 0}, {0, 3, 3}},
      {{0, 1, 0}, {0, 0, 1}, {0, 1, 1}},
      {{2, 1, 3}, {2, 3, 1}, {0, 2, 2}},
  };
  return grid[i - 1][j - 1];
}

std::array<CMatrix, 9> standard_entries() {
  std::array<CMatrix, 9> entries{
      kron(sigma0(), sigma_z()), kron(sigma_z(), sigma0()), kron(sigma_z(), sigma_z()),
      kron(sigma_x(), sigma0()), kron(sigma0(), sigma_x()), kron(sigma_x(), sigma_x()),
      -kron(sigma_x(), sigma_z()), -kron(sigma_z(), sigma_x()), kron(sigma_y(), sigma_y())};
  return entries;
}

}  // namespace

TEST_SUITE("magic_square") {

TEST_CASE("standard square entries: literal spot checks") {
  const MPSquare sq = build_square();
  // sigma0 (x) sigma_z = diag(1,-1,1,-1)
  const CMatrix want11{{Cx(1, 0), {}, {}, {}},
                       {{}, Cx(-1, 0), {}, {}},
                       {{}, {}, Cx(1, 0), {}},
                       {{}, {}, {}, Cx(-1, 0)}};
  CHECK(sq.entry(1, 1).max_abs_diff(want11) == 0.0);
  // sigma_y (x) sigma_y has +-1 on the anti-diagonal
  CMatrix want33(4);
  want33(0, 3) = Cx(-1, 0);
  want33(1, 2) = Cx(1, 0);
  want33(2, 1) = Cx(1, 0);
  want33(3, 0) = Cx(-1, 0);
  CHECK(sq.entry(3, 3).max_abs_diff(want33) == 0.0);
  // the negated entry -sigma_x (x) sigma_z
  CMatrix want31(4);
  want31(0, 2) = Cx(-1, 0);
  want31(1, 3) = Cx(1, 0);
  want31(2, 0) = Cx(-1, 0);
  want31(3, 1) = Cx(1, 0);
  CHECK(sq.entry(3, 1).max_abs_diff(want31) == 0.0);
}

TEST_CASE("symbolic oracle: row products +I, column products -I, lines commute") {
  for (int a = 1; a <= 3; ++a) {
    oracle::SPauli2 row = symbolic_entry(a, 1);
    row = oracle::pauli2_mul(row, symbolic_entry(a, 2));
    row = oracle::pauli2_mul(row, symbolic_entry(a, 3));
    CHECK(row.phase_pow == 0);
    CHECK(row.l1 == 0);
    CHECK(row.l2 == 0);

    oracle::SPauli2 col = symbolic_entry(1, a);
    col = oracle::pauli2_mul(col, symbolic_entry(2, a));
    col = oracle::pauli2_mul(col, symbolic_entry(3, a));
    CHECK(col.phase_pow == 2);  // -I
    CHECK(col.l1 == 0);
    CHECK(col.l2 == 0);

    for (int u = 1; u <= 3; ++u)
      for (int v = u + 1; v <= 3; ++v) {
        CHECK(oracle::pauli2_commute(symbolic_entry(a, u), symbolic_entry(a, v)));
        CHECK(oracle::pauli2_commute(symbolic_entry(u, a), symbolic_entry(v, a)));
      }
  }
}

TEST_CASE("numeric row and column operator products") {
  const MPSquare sq = build_square();
  const CMatrix id = CMatrix::identity(4);
  for (int a = 1; a <= 3; ++a) {
    CHECK((sq.entry(a, 1) * sq.entry(a, 2) * sq.entry(a, 3)).max_abs_diff(id) <
          1e-12);
    CHECK((sq.entry(1, a) * sq.entry(2, a) * sq.entry(3, a)).max_abs_diff(-id) <
          1e-12);
  }
}

TEST_CASE("validate_square passes on the standard square with tiny residuals") {
  const ValidationReport report = validate_square(build_square());
  CHECK(report.checks.size() == 7);
  CHECK(report.all_pass());
  CHECK(report.max_residual() < 1e-12);
}

TEST_CASE("validate_square flags a sign-flipped corner entry") {
  auto entries = standard_entries();
  entries[8] = -entries[8];  // (3,3)
  const ValidationReport report = validate_square(MPSquare(entries));
  CHECK_FALSE(report.all_pass());
  CHECK_FALSE(report.check("column_product_minus_identity").pass);
  CHECK(report.check("hermitian").pass);
  CHECK(report.check("involution").pass);
  CHECK(report.check("row_commutation").pass);
}

TEST_CASE("validate_square flags a non-commuting replacement entry") {
  auto entries = standard_entries();
  entries[1] = kron(sigma_x(), sigma0());  // (1,2)
  const ValidationReport report = validate_square(MPSquare(entries));
  CHECK_FALSE(report.all_pass());
  CHECK_FALSE(report.check("row_commutation").pass);
}

TEST_CASE("GameContext rejects a broken square") {
  auto entries = standard_entries();
  entries[8] = -entries[8];
  CHECK_THROWS_AS((GameContext(MPSquare(entries))), std::invalid_argument);
}

TEST_CASE("triples_with_product enumerations") {
  const auto plus = triples_with_product(1);
  REQUIRE(plus.size() == 4);
  CHECK(plus[0] == SignTriple(1, 1, 1));
  CHECK(plus[1] == SignTriple(1, -1, -1));
  CHECK(plus[2] == SignTriple(-1, 1, -1));
  CHECK(plus[3] == SignTriple(-1, -1, 1));
  const auto minus = triples_with_product(-1);
  REQUIRE(minus.size() == 4);
  CHECK(minus[0] == SignTriple(1, 1, -1));
  CHECK(minus[1] == SignTriple(1, -1, 1));
  CHECK(minus[2] == SignTriple(-1, 1, 1));
  CHECK(minus[3] == SignTriple(-1, -1, -1));
  for (const SignTriple& t : plus) CHECK(t.product() == 1);
  for (const SignTriple& t : minus) CHECK(t.product() == -1);
}

TEST_CASE("quantum rounds win and satisfy both parity constraints") {
  const GameContext ctx;
  SplitMix64 rng(0xc0ffee);
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      for (int rep = 0; rep < 120; ++rep) {
        const RoundOutcome out = quantum_round(ctx, i, j, rng);
        CHECK(out.alice.product() == 1);
        CHECK(out.bob.product() == -1);
        CHECK(out.alice.at(j) * out.bob.at(i) == 1);
        CHECK(round_wins(out, i, j));
      }
    }
  }
}

TEST_CASE("quantum rounds are deterministic in the seed") {
  const GameContext ctx;
  SplitMix64 a(9001), b(9001);
  for (int rep = 0; rep < 60; ++rep) {
    const int i = rep % 3 + 1;
    const int j = (rep / 3) % 3 + 1;
    CHECK(quantum_round(ctx, i, j, a) == quantum_round(ctx, i, j, b));
  }
}

TEST_CASE("exact distributions: normalized, winning support, order-invariant") {
  const GameContext ctx;
  const MeasurementOrder interleaved{{{Agent::alice, 1},
                                      {Agent::bob, 1},
                                      {Agent::alice, 2},
                                      {Agent::bob, 2},
                                      {Agent::alice, 3},
                                      {Agent::bob, 3}}};
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      const RoundDistribution dist = exact_round_distribution(ctx, i, j);
      double total = 0.0;
      for (const auto& [outcome, p] : dist) {
        CHECK(p > 0.0);
        total += p;
        CHECK(outcome.alice.product() == 1);
        CHECK(outcome.bob.product() == -1);
        CHECK(round_wins(outcome, i, j));
      }
      CHECK(std::abs(total - 1.0) < 1e-12);

      const RoundDistribution inter = exact_round_distribution(ctx, i, j, interleaved);
      REQUIRE(inter.size() == dist.size());
      for (const auto& [outcome, p] : dist)
        CHECK(inter.at(outcome) == doctest::Approx(p).epsilon(1e-9));
    }
  }
}

TEST_CASE("empirical rounds match the exact distribution (TV distance)") {
  const GameContext ctx;
  const int n = 10000;
  SplitMix64 rng(0xf00d);
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      const RoundDistribution exact = exact_round_distribution(ctx, i, j);
      std::map<RoundOutcome, int> counts;
      for (int rep = 0; rep < n; ++rep) ++counts[quantum_round(ctx, i, j, rng)];
      double tv = 0.0;
      for (const auto& [outcome, p] : exact) {
        const auto it = counts.find(outcome);
        const double freq = it == counts.end() ? 0.0 : it->second / double(n);
        tv += std::abs(freq - p);
      }
      for (const auto& [outcome, c] : counts)
        if (!exact.count(outcome)) tv += c / double(n);
      tv /= 2.0;
      CHECK(tv < 5.0 / std::sqrt(double(n)));
    }
  }
}

TEST_CASE("classical brute force: 8/9 over exactly 4096 pairs") {
  const BruteForceResult result = classical_bruteforce();
  CHECK(result.pair_count == 4096);
  CHECK(result.max_winning_cells == 8);
  CHECK(result.max_win_prob.num == 8);
  CHECK(result.max_win_prob.den == 9);
  CHECK(result.max_win_prob.str() == "8/9");
  CHECK(result.every_pair_has_losing_cell);
  CHECK(!result.maximizers.empty());

  // Independent recount of each maximizer's winning cells.
  for (const DetGameStrategy& s : result.maximizers) {
    int wins = 0;
    for (int i = 1; i <= 3; ++i) {
      CHECK(s.alice_rows[static_cast<std::size_t>(i - 1)].product() == 1);
      CHECK(s.bob_cols[static_cast<std::size_t>(i - 1)].product() == -1);
      for (int j = 1; j <= 3; ++j)
        if (s.alice_rows[static_cast<std::size_t>(i - 1)].at(j) *
                s.bob_cols[static_cast<std::size_t>(j - 1)].at(i) ==
            1)
          ++wins;
    }
    CHECK(wins == 8);
  }

  // Lexicographic ordering of the argmax list.
  for (std::size_t k = 1; k < result.maximizers.size(); ++k) {
    const auto& prev = result.maximizers[k - 1];
    const auto& cur = result.maximizers[k];
    const auto key = [](const DetGameStrategy& s) {
      std::array<SignTriple, 6> flat;
      for (int r = 0; r < 3; ++r) flat[static_cast<std::size_t>(r)] = s.alice_rows[static_cast<std::size_t>(r)];
      for (int c = 0; c < 3; ++c) flat[static_cast<std::size_t>(3 + c)] = s.bob_cols[static_cast<std::size_t>(c)];
      return flat;
    };
    CHECK(key(prev) < key(cur));
  }
}

TEST_CASE("mixtures of deterministic strategies cannot beat the maximum") {
  const BruteForceResult result = classical_bruteforce();
  SplitMix64 rng(77);
  const auto alice_choices = triples_with_product(1);
  const auto bob_choices = triples_with_product(-1);
  for (int rep = 0; rep < 50; ++rep) {
    const int k = 2 + int(rng.next_u64() % 5);
    double total_weight = 0.0;
    double mixture_win = 0.0;
    for (int c = 0; c < k; ++c) {
      const double w = rng.next_double_open();
      total_weight += w;
      int wins = 0;
      std::array<SignTriple, 3> a, b;
      for (int r = 0; r < 3; ++r) {
        a[static_cast<std::size_t>(r)] = alice_choices[rng.next_u64() % 4];
        b[static_cast<std::size_t>(r)] = bob_choices[rng.next_u64() % 4];
      }
      for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
          if (a[static_cast<std::size_t>(i - 1)].at(j) *
                  b[static_cast<std::size_t>(j - 1)].at(i) ==
              1)
            ++wins;
      mixture_win += w * wins / 9.0;
    }
    CHECK(mixture_win / total_weight <= result.max_win_prob.value() + 1e-12);
  }
}

}  // TEST_SUITE
