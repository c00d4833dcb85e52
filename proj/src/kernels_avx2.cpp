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

// AVX2+FMA variants of the complex kernels. This translation unit is
// compiled with -mavx2 -mfma and must only be entered after a runtime
// CPU check (see kernels.cpp).

#include "mpsq/kernels.hpp"

#include <immintrin.h>

namespace mpsq::kernels {

namespace {

// One __m256d holds two interleaved complex values (re0, im0, re1, im1).
// Complex multiply-accumulate of a broadcast scalar (ar + i*ai) against a
// packed pair: fmaddsub gives (ar*br - ai*bi) in even lanes and
// (ar*bi + ai*br) in odd lanes.
inline __m256d cmul_acc(__m256d acc, __m256d ar, __m256d ai, __m256d b) {
  const __m256d bswap = _mm256_permute_pd(b, 0x5);
  return _mm256_add_pd(acc, _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bswap)));
}

}  // namespace

void matmul_avx2(const double* a, const double* b, double* c, std::size_t n) {
  const std::size_t jvec = n & ~std::size_t(1);
  for (std::size_t i = 0; i < n; ++i) {
    const double* arow = a + 2 * i * n;
    for (std::size_t j = 0; j < jvec; j += 2) {
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t k = 0; k < n; ++k) {
        const __m256d ar = _mm256_broadcast_sd(arow + 2 * k);
        const __m256d ai = _mm256_broadcast_sd(arow + 2 * k + 1);
        const __m256d bv = _mm256_loadu_pd(b + 2 * (k * n + j));
        acc = cmul_acc(acc, ar, ai, bv);
      }
      _mm256_storeu_pd(c + 2 * (i * n + j), acc);
    }
    for (std::size_t j = jvec; j < n; ++j) {
      double acc_re = 0.0;
      double acc_im = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double ar = arow[2 * k];
        const double ai = arow[2 * k + 1];
        const double br = b[2 * (k * n + j)];
        const double bi = b[2 * (k * n + j) + 1];
        acc_re += ar * br - ai * bi;
        acc_im += ar * bi + ai * br;
      }
      c[2 * (i * n + j)] = acc_re;
      c[2 * (i * n + j) + 1] = acc_im;
    }
  }
}

void trace_of_product_avx2(const double* a, const double* b, std::size_t n,
                           double* out) {
  // tr(AB) = sum_{i,k} A(i,k) B(k,i). A rows are contiguous in k; the two
  // B elements per step are gathered with 128-bit loads.
  __m256d acc = _mm256_setzero_pd();
  const std::size_t kvec = n & ~std::size_t(1);
  double tail_re = 0.0;
  double tail_im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* arow = a + 2 * i * n;
    for (std::size_t k = 0; k < kvec; k += 2) {
      const __m256d av = _mm256_loadu_pd(arow + 2 * k);
      const __m128d b0 = _mm_loadu_pd(b + 2 * (k * n + i));
      const __m128d b1 = _mm_loadu_pd(b + 2 * ((k + 1) * n + i));
      const __m256d bv = _mm256_set_m128d(b1, b0);
      const __m256d bswap = _mm256_permute_pd(bv, 0x5);
      const __m256d are = _mm256_unpacklo_pd(av, av);
      const __m256d aim = _mm256_unpackhi_pd(av, av);
      acc = _mm256_add_pd(
          acc, _mm256_fmaddsub_pd(are, bv, _mm256_mul_pd(aim, bswap)));
    }
    for (std::size_t k = kvec; k < n; ++k) {
      const double ar = arow[2 * k];
      const double ai = arow[2 * k + 1];
      const double br = b[2 * (k * n + i)];
      const double bi = b[2 * (k * n + i) + 1];
      tail_re += ar * br - ai * bi;
      tail_im += ar * bi + ai * br;
    }
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  out[0] = lanes[0] + lanes[2] + tail_re;
  out[1] = lanes[1] + lanes[3] + tail_im;
}

}  // namespace mpsq::kernels
