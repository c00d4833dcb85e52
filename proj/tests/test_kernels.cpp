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

#include <cstring>
#include <vector>

#include "mpsq/kernels.hpp"
#include "mpsq/rng.hpp"
#include "oracles.hpp"

using namespace mpsq;
using oracle::random_int_matrix;
using oracle::random_matrix;

namespace {

std::vector<double> flat(const linalg::CMatrix& m) {
  const double* p = reinterpret_cast<const double*>(m.entries().data());
  return std::vector<double>(p, p + 2 * m.dim() * m.dim());
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar backend is always available and selectable") {
  CHECK(kernels::available(kernels::Backend::scalar));
  kernels::select(kernels::Backend::scalar);
  CHECK(std::strcmp(kernels::active().name, "scalar") == 0);
  kernels::select_auto();
}

TEST_CASE("vector backends match scalar on random matrices") {
  SplitMix64 rng(0x5eed);
  for (kernels::Backend b : kernels::available_backends()) {
    if (b == kernels::Backend::scalar) continue;
    const auto& vec = kernels::ops(b);
    const auto& ref = kernels::ops(kernels::Backend::scalar);
    for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 16u, 17u}) {
      for (int rep = 0; rep < 8; ++rep) {
        const auto a = flat(random_matrix(n, rng));
        const auto bm = flat(random_matrix(n, rng));
        std::vector<double> want(2 * n * n), got(2 * n * n);
        ref.matmul(a.data(), bm.data(), want.data(), n);
        vec.matmul(a.data(), bm.data(), got.data(), n);
        for (std::size_t i = 0; i < want.size(); ++i)
          CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-13));

        double want_tr[2], got_tr[2];
        ref.trace_of_product(a.data(), bm.data(), n, want_tr);
        vec.trace_of_product(a.data(), bm.data(), n, got_tr);
        CHECK(got_tr[0] == doctest::Approx(want_tr[0]).epsilon(1e-13));
        CHECK(got_tr[1] == doctest::Approx(want_tr[1]).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("backends agree bit-exactly on small integer inputs") {
  SplitMix64 rng(0xabc);
  for (kernels::Backend b : kernels::available_backends()) {
    if (b == kernels::Backend::scalar) continue;
    const auto& vec = kernels::ops(b);
    const auto& ref = kernels::ops(kernels::Backend::scalar);
    for (std::size_t n : {2u, 4u, 16u}) {
      for (int rep = 0; rep < 16; ++rep) {
        const auto a = flat(random_int_matrix(n, rng));
        const auto bm = flat(random_int_matrix(n, rng));
        std::vector<double> want(2 * n * n), got(2 * n * n);
        ref.matmul(a.data(), bm.data(), want.data(), n);
        vec.matmul(a.data(), bm.data(), got.data(), n);
        CHECK(std::memcmp(want.data(), got.data(), want.size() * sizeof(double)) == 0);
      }
    }
  }
}

TEST_CASE("trace_of_product equals trace of the formed product") {
  SplitMix64 rng(0x77);
  const auto& ops = kernels::active();
  for (std::size_t n : {2u, 4u, 16u}) {
    const auto a = flat(random_matrix(n, rng));
    const auto b = flat(random_matrix(n, rng));
    std::vector<double> prod(2 * n * n);
    ops.matmul(a.data(), b.data(), prod.data(), n);
    double want_re = 0.0, want_im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      want_re += prod[2 * (i * n + i)];
      want_im += prod[2 * (i * n + i) + 1];
    }
    double got[2];
    ops.trace_of_product(a.data(), b.data(), n, got);
    CHECK(got[0] == doctest::Approx(want_re).epsilon(1e-12));
    CHECK(got[1] == doctest::Approx(want_im).epsilon(1e-12));
  }
}

}  // TEST_SUITE
