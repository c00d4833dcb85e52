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

#ifndef MPSQ_SIGN_TRIPLE_HPP
#define MPSQ_SIGN_TRIPLE_HPP

#include <array>
#include <compare>
#include <stdexcept>
#include <string>

namespace mpsq {

// A triple of signs in {+1, -1}. Components are addressed 1-based to match
// the game conventions (rows, columns and state components run 1..3
// throughout this project). Lexicographic order ranks + before -.
struct SignTriple {
  std::array<int, 3> s{1, 1, 1};

  constexpr SignTriple() = default;
  constexpr SignTriple(int s1, int s2, int s3) : s{s1, s2, s3} {
    for (int v : s)
      if (v != 1 && v != -1)
        throw std::invalid_argument("SignTriple: components must be +1 or -1");
  }

  constexpr int at(int k) const {
    if (k < 1 || k > 3) throw std::out_of_range("SignTriple: index not in 1..3");
    return s[static_cast<std::size_t>(k - 1)];
  }

  constexpr int product() const { return s[0] * s[1] * s[2]; }

  // "+--" style encoding, used by reports and JSON keys.
  std::string str() const {
    std::string out(3, '+');
    for (int k = 0; k < 3; ++k)
      if (s[static_cast<std::size_t>(k)] < 0) out[static_cast<std::size_t>(k)] = '-';
    return out;
  }

  static SignTriple parse(const std::string& text) {
    if (text.size() != 3) throw std::invalid_argument("SignTriple: bad encoding");
    std::array<int, 3> v{};
    for (int k = 0; k < 3; ++k) {
      const char c = text[static_cast<std::size_t>(k)];
      if (c != '+' && c != '-')
        throw std::invalid_argument("SignTriple: bad encoding");
      v[static_cast<std::size_t>(k)] = c == '+' ? 1 : -1;
    }
    return SignTriple(v[0], v[1], v[2]);
  }

  friend constexpr bool operator==(const SignTriple&, const SignTriple&) = default;

  // + sorts before -.
  friend constexpr std::strong_ordering operator<=>(const SignTriple& a,
                                                    const SignTriple& b) {
    for (int k = 0; k < 3; ++k) {
      const int ra = a.s[static_cast<std::size_t>(k)] > 0 ? 0 : 1;
      const int rb = b.s[static_cast<std::size_t>(k)] > 0 ? 0 : 1;
      if (ra != rb) return ra <=> rb;
    }
    return std::strong_ordering::equal;
  }
};

}  // namespace mpsq

#endif  // MPSQ_SIGN_TRIPLE_HPP
