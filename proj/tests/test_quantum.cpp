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
#include <map>

#include "mpsq/quantum.hpp"
#include "mpsq/rng.hpp"
#include "oracles.hpp"

using namespace mpsq;
using namespace mpsq::quantum;
using linalg::CMatrix;
using linalg::Cx;
using linalg::kron;

namespace {

const CMatrix kRhoExample{{Cx(0.25, 0), Cx(0, 0.25)}, {Cx(0, -0.25), Cx(0.75, 0)}};

DensityMatrix random_density(std::size_t n, SplitMix64& rng) {
  const CMatrix a = oracle::random_matrix(n, rng);
  CMatrix m = a * a.dagger();
  m *= Cx(1.0 / m.trace().real(), 0.0);
  return DensityMatrix(std::move(m));
}

DichotomicObservable random_reflection(std::size_t n, SplitMix64& rng) {
  // I - 2 vv* for a random unit vector v.
  std::vector<Cx> v(n);
  double norm2 = 0.0;
  for (Cx& z : v) {
    z = Cx(2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0);
    norm2 += std::norm(z);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  CMatrix m = CMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) -= 2.0 * (v[i] * inv) * std::conj(v[j] * inv);
  return DichotomicObservable(std::move(m));
}

const PureState& plus_state() {
  static const PureState u({Cx(1 / std::sqrt(2.0), 0), Cx(1 / std::sqrt(2.0), 0)});
  return u;
}

PureState tensor(const PureState& a, const PureState& b) {
  std::vector<Cx> amps(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j)
      amps[i * b.dim() + j] = a.amplitudes()[i] * b.amplitudes()[j];
  return PureState(std::move(amps));
}

}  // namespace

TEST_SUITE("quantum") {

TEST_CASE("type invariants are enforced") {
  CHECK_THROWS_AS(PureState({Cx(1, 0), Cx(1, 0)}), std::invalid_argument);
  CHECK_THROWS_AS((DensityMatrix(sigma_x())), std::invalid_argument);       // trace 0
  CHECK_THROWS_AS((DensityMatrix(sigma_z())), std::invalid_argument);       // not PSD
  CHECK_THROWS_AS((DichotomicObservable(kRhoExample)), std::invalid_argument);
  CHECK_NOTHROW((DensityMatrix(kRhoExample)));
  CHECK_NOTHROW((DichotomicObservable(sigma_y())));
}

TEST_CASE("density_from_pure reproduces the textbook matrices") {
  const DensityMatrix zero = density_from_pure(PureState({Cx(1, 0), Cx(0, 0)}));
  CHECK(zero.matrix().max_abs_diff(CMatrix{{Cx(1, 0), {}}, {{}, {}}}) == 0.0);

  const DensityMatrix plus = density_from_pure(plus_state());
  const CMatrix half{{Cx(0.5, 0), Cx(0.5, 0)}, {Cx(0.5, 0), Cx(0.5, 0)}};
  CHECK(plus.matrix().max_abs_diff(half) < 1e-15);

  const DensityMatrix bell = density_from_pure(bell_pair());
  CMatrix corners(4);
  corners(0, 0) = corners(0, 3) = corners(3, 0) = corners(3, 3) = Cx(0.5, 0);
  CHECK(bell.matrix().max_abs_diff(corners) < 1e-15);
}

TEST_CASE("pvm_from_dichotomic gives the spectral projectors") {
  const PVM mu = pvm_from_dichotomic(DichotomicObservable(sigma_x()));
  REQUIRE(mu.outcomes() == std::vector<double>{-1.0, 1.0});
  const CMatrix mu_plus{{Cx(0.5, 0), Cx(0.5, 0)}, {Cx(0.5, 0), Cx(0.5, 0)}};
  const CMatrix mu_minus{{Cx(0.5, 0), Cx(-0.5, 0)}, {Cx(-0.5, 0), Cx(0.5, 0)}};
  CHECK(mu.projector_for(1.0).max_abs_diff(mu_plus) == 0.0);
  CHECK(mu.projector_for(-1.0).max_abs_diff(mu_minus) == 0.0);

  const PVM nu = pvm_from_dichotomic(DichotomicObservable(sigma_y()));
  const CMatrix nu_plus{{Cx(0.5, 0), Cx(0, -0.5)}, {Cx(0, 0.5), Cx(0.5, 0)}};
  const CMatrix nu_minus{{Cx(0.5, 0), Cx(0, 0.5)}, {Cx(0, -0.5), Cx(0.5, 0)}};
  CHECK(nu.projector_for(1.0).max_abs_diff(nu_plus) == 0.0);
  CHECK(nu.projector_for(-1.0).max_abs_diff(nu_minus) == 0.0);

  // Degenerate direction: sigma0 has a zero projector.
  const PVM trivial = pvm_from_dichotomic(DichotomicObservable(sigma0()));
  CHECK(linalg::is_identity(trivial.projector_for(1.0)));
  CHECK(linalg::is_zero(trivial.projector_for(-1.0)));
}

TEST_CASE("projector identities hold exactly") {
  SplitMix64 rng(21);
  for (int rep = 0; rep < 10; ++rep) {
    const PVM pvm = pvm_from_dichotomic(random_reflection(4, rng));
    const CMatrix sum = pvm.projector_for(1.0) + pvm.projector_for(-1.0);
    CHECK(sum.max_abs_diff(CMatrix::identity(4)) < 1e-12);
    CHECK((pvm.projector_for(1.0) * pvm.projector_for(-1.0)).max_abs() < 1e-12);
  }
}

TEST_CASE("measure_probs matches the worked single-qubit example") {
  const PVM mu = pvm_from_dichotomic(DichotomicObservable(sigma_x()));
  const auto probs = measure_probs(mu, DensityMatrix(kRhoExample));
  // outcomes ascending: index 0 is -1, index 1 is +1
  CHECK(probs[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(probs[1] == doctest::Approx(0.5).epsilon(1e-12));

  const PVM z = pvm_from_dichotomic(DichotomicObservable(sigma_z()));
  const auto zero_probs =
      measure_probs(z, density_from_pure(PureState({Cx(1, 0), Cx(0, 0)})));
  CHECK(zero_probs[1] == doctest::Approx(1.0));
  CHECK(zero_probs[0] == doctest::Approx(0.0));
}

TEST_CASE("probabilities form a distribution for random inputs") {
  SplitMix64 rng(33);
  for (int rep = 0; rep < 20; ++rep) {
    const PVM pvm = pvm_from_dichotomic(random_reflection(4, rng));
    const DensityMatrix rho = random_density(4, rng);
    const auto probs = measure_probs(pvm, rho);
    double sum = 0.0;
    for (double p : probs) {
      CHECK(p >= 0.0);
      CHECK(p <= 1.0 + 1e-12);
      sum += p;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("outcome expectation equals Tr(O rho)") {
  SplitMix64 rng(34);
  for (int rep = 0; rep < 20; ++rep) {
    const DichotomicObservable obs = random_reflection(2, rng);
    const DensityMatrix rho = random_density(2, rng);
    const auto probs = measure_probs(pvm_from_dichotomic(obs), rho);
    const double expectation = -1.0 * probs[0] + 1.0 * probs[1];
    CHECK(expectation ==
          doctest::Approx(linalg::trace_of_product(obs.matrix(), rho.matrix()).real())
              .epsilon(1e-9));
  }
}

TEST_CASE("collapse renormalizes onto the observed eigenspace") {
  const PVM mu = pvm_from_dichotomic(DichotomicObservable(sigma_x()));
  const DensityMatrix rho(kRhoExample);
  // Rank-1 projectors: the post state is the projector itself.
  CHECK(collapse(mu, rho, 1.0).matrix().max_abs_diff(mu.projector_for(1.0)) < 1e-12);
  CHECK(collapse(mu, rho, -1.0).matrix().max_abs_diff(mu.projector_for(-1.0)) < 1e-12);

  const PVM z = pvm_from_dichotomic(DichotomicObservable(sigma_z()));
  const DensityMatrix ket0 = density_from_pure(PureState({Cx(1, 0), Cx(0, 0)}));
  CHECK(collapse(z, ket0, 1.0).matrix().max_abs_diff(ket0.matrix()) < 1e-12);
  CHECK_THROWS_AS(collapse(z, ket0, -1.0), std::invalid_argument);
}

TEST_CASE("collapse output is a valid density matrix") {
  SplitMix64 rng(35);
  for (int rep = 0; rep < 15; ++rep) {
    const PVM pvm = pvm_from_dichotomic(random_reflection(4, rng));
    const DensityMatrix rho = random_density(4, rng);
    for (double outcome : {-1.0, 1.0}) {
      const auto probs = measure_probs(pvm, rho);
      const double p = outcome > 0 ? probs[1] : probs[0];
      if (p < 1e-9) continue;
      const CMatrix post = collapse(pvm, rho, outcome).matrix();
      // Re-check all three invariants through the public constructor.
      CHECK_NOTHROW((DensityMatrix(post)));
    }
  }
}

TEST_CASE("two-qubit product measurement: probabilities and post states") {
  // sigma_x (x) sigma_y on (|0>+|1>)/sqrt2 (x) itself.
  const PureState uu = tensor(plus_state(), plus_state());
  const DichotomicObservable xy(kron(sigma_x(), sigma_y()));
  const PVM beta = pvm_from_dichotomic(xy);
  const DensityMatrix rho = density_from_pure(uu);

  const auto probs = measure_probs(beta, rho);
  CHECK(probs[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(probs[1] == doctest::Approx(0.5).epsilon(1e-12));

  // Lueders rule: the second factor lands in the sigma_y eigenstate with
  // the matching outcome sign, phase-adjusted; checked as density matrices.
  const PureState w_plus({Cx(0.5, -0.5), Cx(0.5, 0.5)});   // +1 eigenstate of sigma_y
  const PureState w_minus({Cx(0.5, 0.5), Cx(0.5, -0.5)});  // -1 eigenstate
  const CMatrix post_plus = collapse(beta, rho, 1.0).matrix();
  const CMatrix post_minus = collapse(beta, rho, -1.0).matrix();
  CHECK(post_plus.max_abs_diff(
            density_from_pure(tensor(plus_state(), w_plus)).matrix()) < 1e-9);
  CHECK(post_minus.max_abs_diff(
            density_from_pure(tensor(plus_state(), w_minus)).matrix()) < 1e-9);
}

TEST_CASE("commuting measurements are order-invariant") {
  const DichotomicObservable a(kron(sigma_z(), sigma0()));
  const DichotomicObservable b(kron(sigma0(), sigma_x()));
  CHECK((a.matrix() * b.matrix()).max_abs_diff(b.matrix() * a.matrix()) == 0.0);
  const PVM pa = pvm_from_dichotomic(a);
  const PVM pb = pvm_from_dichotomic(b);

  SplitMix64 rng(36);
  for (int rep = 0; rep < 10; ++rep) {
    const DensityMatrix rho = random_density(4, rng);
    std::map<std::pair<int, int>, double> ab, ba;
    std::map<std::pair<int, int>, CMatrix> ab_state, ba_state;
    for (double oa : {-1.0, 1.0}) {
      for (double ob : {-1.0, 1.0}) {
        const auto pa_probs = measure_probs(pa, rho);
        const double p1 = oa > 0 ? pa_probs[1] : pa_probs[0];
        if (p1 > 1e-12) {
          const DensityMatrix mid = collapse(pa, rho, oa);
          const auto pb_probs = measure_probs(pb, mid);
          const double p2 = ob > 0 ? pb_probs[1] : pb_probs[0];
          ab[{int(oa), int(ob)}] = p1 * p2;
          if (p2 > 1e-12)
            ab_state.emplace(std::pair<int, int>{int(oa), int(ob)},
                             collapse(pb, mid, ob).matrix());
        } else {
          ab[{int(oa), int(ob)}] = 0.0;
        }
        const auto pb_first = measure_probs(pb, rho);
        const double q1 = ob > 0 ? pb_first[1] : pb_first[0];
        if (q1 > 1e-12) {
          const DensityMatrix mid = collapse(pb, rho, ob);
          const auto pa_probs2 = measure_probs(pa, mid);
          const double q2 = oa > 0 ? pa_probs2[1] : pa_probs2[0];
          ba[{int(oa), int(ob)}] = q1 * q2;
          if (q2 > 1e-12)
            ba_state.emplace(std::pair<int, int>{int(oa), int(ob)},
                             collapse(pa, mid, oa).matrix());
        } else {
          ba[{int(oa), int(ob)}] = 0.0;
        }
      }
    }
    for (const auto& [key, p] : ab)
      CHECK(p == doctest::Approx(ba.at(key)).epsilon(1e-9));
    for (const auto& [key, state] : ab_state)
      if (ba_state.count(key))
        CHECK(state.max_abs_diff(ba_state.at(key)) < 1e-9);
  }
}

TEST_CASE("sampling is deterministic and matches the distribution") {
  const PVM z = pvm_from_dichotomic(DichotomicObservable(sigma_z()));
  const DensityMatrix ket0 = density_from_pure(PureState({Cx(1, 0), Cx(0, 0)}));
  SplitMix64 rng(100);
  for (int rep = 0; rep < 50; ++rep)
    CHECK(sample_measurement(z, ket0, rng).first == 1.0);

  SplitMix64 a(7), b(7);
  const PVM mu = pvm_from_dichotomic(DichotomicObservable(sigma_x()));
  const DensityMatrix rho(kRhoExample);
  for (int rep = 0; rep < 100; ++rep)
    CHECK(sample_measurement(mu, rho, a).first == sample_measurement(mu, rho, b).first);

  SplitMix64 freq_rng(2024);
  const int n = 100000;
  int plus = 0;
  for (int rep = 0; rep < n; ++rep)
    if (sample_measurement(mu, rho, freq_rng).first > 0) ++plus;
  const double sigma = std::sqrt(0.25 / n);
  CHECK(std::abs(plus / double(n) - 0.5) < 3 * sigma);
}

TEST_CASE("bell pair and the entanglement witness") {
  const PureState bell = bell_pair();
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(bell.amplitudes()[0] == Cx(r, 0));
  CHECK(bell.amplitudes()[1] == Cx(0, 0));
  CHECK(bell.amplitudes()[2] == Cx(0, 0));
  CHECK(bell.amplitudes()[3] == Cx(r, 0));

  const DensityMatrix rho = density_from_pure(bell);
  CHECK(is_entangled_2q(rho));

  // Partial transpose swaps the off-diagonal corners into the middle
  // block [[0, 1/2], [1/2, 0]], whose spectrum the 2x2 oracle gives.
  const CMatrix pt = partial_transpose(rho, 2);
  const CMatrix middle{{pt(1, 1), pt(1, 2)}, {pt(2, 1), pt(2, 2)}};
  const auto oracle_ev = oracle::eig2_hermitian(middle);
  CHECK(oracle_ev[1] == doctest::Approx(-0.5).epsilon(1e-14));
  const auto evs = linalg::hermitian_eigenvalues(pt);
  CHECK(evs.back() == doctest::Approx(-0.5).epsilon(1e-9));
}

TEST_CASE("partial transpose fixes product and maximally mixed states") {
  const DensityMatrix p00 = density_from_pure(
      PureState({Cx(1, 0), Cx(0, 0), Cx(0, 0), Cx(0, 0)}));
  CHECK(partial_transpose(p00, 1).max_abs_diff(p00.matrix()) == 0.0);
  CHECK_FALSE(is_entangled_2q(p00));

  const DensityMatrix mixed(CMatrix::identity(4) * Cx(0.25, 0));
  CHECK(partial_transpose(mixed, 1).max_abs_diff(mixed.matrix()) == 0.0);
  CHECK(partial_transpose(mixed, 2).max_abs_diff(mixed.matrix()) == 0.0);
  CHECK_FALSE(is_entangled_2q(mixed));

  SplitMix64 rng(55);
  for (int rep = 0; rep < 10; ++rep) {
    const DensityMatrix a = random_density(2, rng);
    const DensityMatrix b = random_density(2, rng);
    CHECK_FALSE(is_entangled_2q(DensityMatrix(kron(a.matrix(), b.matrix()))));
  }

  CHECK_THROWS_AS(partial_transpose(random_density(2, rng), 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(partial_transpose(p00, 3), std::invalid_argument);
}

}  // TEST_SUITE
