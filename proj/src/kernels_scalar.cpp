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

#include "mpsq/kernels.hpp"

namespace mpsq::kernels {

// Reference kernels. Accumulation order (ascending k) is the contract the
// vector backends follow, so cross-backend differences stay at rounding
// level.

void matmul_scalar(const double* a, const double* b, double* c,
                   std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double* arow = a + 2 * i * n;
    for (std::size_t j = 0; j < n; ++j) {
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

void trace_of_product_scalar(const double* a, const double* b, std::size_t n,
                             double* out) {
  double acc_re = 0.0;
  double acc_im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* arow = a + 2 * i * n;
    for (std::size_t k = 0; k < n; ++k) {
      const double ar = arow[2 * k];
      const double ai = arow[2 * k + 1];
      const double br = b[2 * (k * n + i)];
      const double bi = b[2 * (k * n + i) + 1];
      acc_re += ar * br - ai * bi;
      acc_im += ar * bi + ai * br;
    }
  }
  out[0] = acc_re;
  out[1] = acc_im;
}

}  // namespace mpsq::kernels
