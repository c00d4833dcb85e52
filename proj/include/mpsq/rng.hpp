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

#ifndef MPSQ_RNG_HPP
#define MPSQ_RNG_HPP

#include <cstdint>

namespace mpsq {

// splitmix64 finalizer (Steele, Lea, Flood; same constants as java.util
// SplittableRandom). Used both as the generator step and as a seed hash.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic per-stream seed derivation: hash(seed, index).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(seed ^ mix64(index + 0x9e3779b97f4a7c15ULL));
}

// Minimal splittable 64-bit generator. Everything stochastic in this
// project draws from explicitly seeded SplitMix64 values, so runs are
// bit-reproducible across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  // Uniform in [0, 1), 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in (0, 1); never returns an endpoint.
  double next_double_open() {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
  }

  // Child generator whose stream is independent of (and deterministic in)
  // this generator's current state.
  SplitMix64 fork(std::uint64_t stream_id) const {
    return SplitMix64(derive_seed(state_, stream_id));
  }

 private:
  std::uint64_t state_;
};

}  // namespace mpsq

#endif  // MPSQ_RNG_HPP
