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

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace mpsq::kernels {

void matmul_scalar(const double* a, const double* b, double* c, std::size_t n);
void trace_of_product_scalar(const double* a, const double* b, std::size_t n,
                             double* out);
#ifdef MPSQ_HAVE_AVX2_BACKEND
void matmul_avx2(const double* a, const double* b, double* c, std::size_t n);
void trace_of_product_avx2(const double* a, const double* b, std::size_t n,
                           double* out);
#endif

namespace {

const Ops kScalarOps{"scalar", &matmul_scalar, &trace_of_product_scalar};
#ifdef MPSQ_HAVE_AVX2_BACKEND
const Ops kAvx2Ops{"avx2", &matmul_avx2, &trace_of_product_avx2};
#endif

bool avx2_supported() {
#ifdef MPSQ_HAVE_AVX2_BACKEND
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Ops* detect() {
  if (const char* env = std::getenv("MPSQ_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return &kScalarOps;
#ifdef MPSQ_HAVE_AVX2_BACKEND
    if (std::strcmp(env, "avx2") == 0 && avx2_supported()) return &kAvx2Ops;
#endif
  }
#ifdef MPSQ_HAVE_AVX2_BACKEND
  if (avx2_supported()) return &kAvx2Ops;
#endif
  return &kScalarOps;
}

std::atomic<const Ops*> g_active{nullptr};

}  // namespace

bool available(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
      return avx2_supported();
  }
  return false;
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out{Backend::scalar};
  if (available(Backend::avx2)) out.push_back(Backend::avx2);
  return out;
}

const char* backend_name(Backend b) {
  return b == Backend::scalar ? "scalar" : "avx2";
}

const Ops& ops(Backend b) {
  switch (b) {
    case Backend::scalar:
      return kScalarOps;
    case Backend::avx2:
#ifdef MPSQ_HAVE_AVX2_BACKEND
      if (avx2_supported()) return kAvx2Ops;
#endif
      throw std::invalid_argument("avx2 kernels unavailable on this machine");
  }
  throw std::invalid_argument("unknown kernel backend");
}

const Ops& active() {
  const Ops* current = g_active.load(std::memory_order_acquire);
  if (current == nullptr) {
    current = detect();
    g_active.store(current, std::memory_order_release);
  }
  return *current;
}

void select(Backend b) { g_active.store(&ops(b), std::memory_order_release); }

void select_auto() { g_active.store(detect(), std::memory_order_release); }

}  // namespace mpsq::kernels
