// Copyright 2026 The TSLEC Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TSLEC_RNG_HPP_
#define TSLEC_RNG_HPP_

#include <cstdint>

namespace tslec {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// PCG32 (XSH RR variant). Small, fast, and identical output on every
// platform, which the reproducibility contract depends on.
class Pcg32 {
 public:
  Pcg32() { seed(0x853c49e6748fea9bULL, 0xda3e39cb94b95bdbULL); }
  Pcg32(std::uint64_t initstate, std::uint64_t initseq) {
    seed(initstate, initseq);
  }

  void seed(std::uint64_t initstate, std::uint64_t initseq) {
    state_ = 0u;
    inc_ = (initseq << 1u) | 1u;
    next();
    state_ += initstate;
    next();
  }

  std::uint32_t next() {
    std::uint64_t old = state_;
    state_ = old * 6364136223846793005ULL + inc_;
    std::uint32_t xorshifted =
        static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
    std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
    return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
  }

  // Unbiased via rejection sampling.
  std::uint32_t uniform_below(std::uint32_t bound) {
    std::uint32_t threshold = (-bound) % bound;
    for (;;) {
      std::uint32_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(uniform_below(
                    static_cast<std::uint32_t>(hi - lo + 1)));
  }

  double uniform_double() { return next() * 0x1p-32; }

 private:
  std::uint64_t state_;
  std::uint64_t inc_;
};

// Distinct purposes get statistically independent streams from one run seed.
// Keeping goal sampling, environment changes, allocation, the coin stream,
// and per-agent decision draws separate means toggling one mechanism cannot
// perturb the draws of another.
namespace stream {
inline constexpr std::uint64_t kEnvChange = 1;
inline constexpr std::uint64_t kAllocation = 2;
inline constexpr std::uint64_t kCoin = 3;
inline constexpr std::uint64_t kGoalsBase = 0x100;   // + agent index
inline constexpr std::uint64_t kDecideBase = 0x200;  // + agent index
}  // namespace stream

inline Pcg32 substream(std::uint64_t run_seed, std::uint64_t purpose) {
  return Pcg32(splitmix64(run_seed ^ splitmix64(purpose)), purpose);
}

}  // namespace tslec

#endif  // TSLEC_RNG_HPP_
