// Copyright 2026 The M2T Toolkit Authors.
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

#ifndef M2T_DIGEST_H_
#define M2T_DIGEST_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace m2t {

// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view data);

// Stable 64-bit hash of (text, seed) used for seeded choices and split
// ordering. Derived from SHA-256 so it does not depend on std::hash.
uint64_t stable_hash(std::string_view text, uint64_t seed = 0);

// SplitMix64 generator. Its output sequence is fixed by definition, unlike
// the standard distributions, so seeded sampling is reproducible everywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform integer in [0, bound) by rejection; bound must be > 0.
  uint64_t below(uint64_t bound) {
    uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  // Uniform real in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  uint64_t state_;
};

}  // namespace m2t

#endif  // M2T_DIGEST_H_
