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

#ifndef MPSQ_KERNELS_HPP
#define MPSQ_KERNELS_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace mpsq::kernels {

// Low-level arithmetic kernels on interleaved complex buffers.
//
// A complex n x n matrix is a buffer of 2*n*n doubles, row-major, with
// element (i,j) stored as (re, im) at offsets 2*(i*n+j) and 2*(i*n+j)+1.
// std::complex<double> arrays satisfy this layout by the standard's
// array-compatibility guarantee.
//
// The scalar implementations are the reference semantics; vector backends
// must agree with them within a few ulps (bit-exactly on inputs whose
// products and sums are exactly representable, e.g. small integers).

enum class Backend {
  scalar,
  avx2,
};

struct Ops {
  const char* name;
  // c = a * b. c must not alias a or b.
  void (*matmul)(const double* a, const double* b, double* c, std::size_t n);
  // out[0] + i*out[1] = trace(a * b), without forming the product.
  void (*trace_of_product)(const double* a, const double* b, std::size_t n,
                           double* out);
};

bool available(Backend b);
std::vector<Backend> available_backends();
const char* backend_name(Backend b);

// Kernels for a specific backend. Throws std::invalid_argument if the
// backend is not available on this machine.
const Ops& ops(Backend b);

// The active backend: best available at first use, unless overridden by
// select() or by the MPSQ_KERNELS environment variable ("scalar"/"avx2").
const Ops& active();
void select(Backend b);
void select_auto();

}  // namespace mpsq::kernels

#endif  // MPSQ_KERNELS_HPP
