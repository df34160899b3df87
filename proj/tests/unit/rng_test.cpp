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

#include "tslec/rng.hpp"

#include <set>
#include <vector>

#include "doctest.h"

namespace tslec {
namespace {

TEST_SUITE("rng") {

TEST_CASE("pcg32 matches the reference output for seed (42, 54)") {
  Pcg32 rng(42u, 54u);
  const std::vector<std::uint32_t> expected = {
      0xa15c02b7u, 0x7b47f409u, 0xba1d3330u,
      0x83d2f293u, 0xbfa4784bu, 0xcbed606eu};
  for (std::uint32_t want : expected) CHECK(rng.next() == want);
}

TEST_CASE("same seed, same stream") {
  Pcg32 a(7u, 11u), b(7u, 11u);
  for (int i = 0; i < 1000; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("different sequence constants give different streams") {
  Pcg32 a(7u, 11u), b(7u, 12u);
  int same = 0;
  for (int i = 0; i < 64; ++i)
    if (a.next() == b.next()) ++same;
  CHECK(same < 4);
}

TEST_CASE("uniform_below stays below the bound and hits every value") {
  Pcg32 rng(1u, 2u);
  std::set<std::uint32_t> seen;
  for (int i = 0; i < 1000; ++i) {
    std::uint32_t v = rng.uniform_below(7);
    CHECK(v < 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
}

TEST_CASE("uniform_int covers the closed range") {
  Pcg32 rng(3u, 4u);
  std::set<int> seen;
  for (int i = 0; i < 1000; ++i) {
    int v = rng.uniform_int(1, 6);
    CHECK(v >= 1);
    CHECK(v <= 6);
    seen.insert(v);
  }
  CHECK(seen.size() == 6);
}

TEST_CASE("uniform_double lies in [0, 1)") {
  Pcg32 rng(5u, 6u);
  for (int i = 0; i < 1000; ++i) {
    double v = rng.uniform_double();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("substreams for distinct purposes diverge") {
  Pcg32 env = substream(42, stream::kEnvChange);
  Pcg32 alloc = substream(42, stream::kAllocation);
  Pcg32 coin = substream(42, stream::kCoin);
  int env_alloc = 0, env_coin = 0;
  for (int i = 0; i < 64; ++i) {
    std::uint32_t e = env.next();
    if (e == alloc.next()) ++env_alloc;
    if (e == coin.next()) ++env_coin;
  }
  CHECK(env_alloc < 4);
  CHECK(env_coin < 4);
}

TEST_CASE("substream is deterministic in the run seed") {
  Pcg32 a = substream(99, stream::kGoalsBase + 2);
  Pcg32 b = substream(99, stream::kGoalsBase + 2);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("splitmix64 is a bijection on sampled points") {
  std::set<std::uint64_t> out;
  for (std::uint64_t x = 0; x < 4096; ++x) out.insert(splitmix64(x));
  CHECK(out.size() == 4096);
}

}  // TEST_SUITE

}  // namespace
}  // namespace tslec
