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

#include "tslec/config.hpp"

#include <stdexcept>

#include "doctest.h"

namespace tslec {
namespace {

TEST_SUITE("config") {

TEST_CASE("defaults validate cleanly") {
  SimParams p;
  CHECK(validate(p).empty());
  CHECK(p.env.n_agents == 4);
  CHECK(p.env.n_items == 5);
  CHECK(p.env.quantities == std::vector<int>{4, 3, 2, 3, 2});
  CHECK(p.env.rounds_per_episode == 3);
  CHECK(p.env.episodes == 100);
  CHECK(p.env.change_interval == 25);
  CHECK(p.learning.alpha == doctest::Approx(0.143));
  CHECK(p.learning.gamma == doctest::Approx(0.9));
  CHECK(p.learning.q_max == doctest::Approx(30.0));
  CHECK(p.trust.beta_pos == doctest::Approx(0.1));
  CHECK(p.trust.beta_neg == doctest::Approx(0.05));
  CHECK(p.trust.tau_init == doctest::Approx(0.5));
  CHECK(p.trust.adopt_threshold == doctest::Approx(0.7));
}

TEST_CASE("config text applies keys, skips comments and blanks") {
  SimParams p;
  apply_config_text(p,
                    "# comment\n"
                    "\n"
                    "episodes = 12\n"
                    "alpha=0.25\n"
                    "quantities = 2, 2, 2\n"
                    "n_items = 3\n");
  CHECK(p.env.episodes == 12);
  CHECK(p.learning.alpha == doctest::Approx(0.25));
  CHECK(p.env.quantities == std::vector<int>{2, 2, 2});
  CHECK(p.env.n_items == 3);
  CHECK(validate(p).empty());
}

TEST_CASE("unknown keys and bad values throw") {
  SimParams p;
  CHECK_THROWS_AS(apply_override(p, "no_such_key", "1"), std::runtime_error);
  CHECK_THROWS_AS(apply_override(p, "episodes", "many"), std::runtime_error);
  CHECK_THROWS_AS(apply_override(p, "alpha", "0.1x"), std::runtime_error);
  CHECK_THROWS_AS(apply_override(p, "quantities", ""), std::runtime_error);
}

TEST_CASE("validate catches out-of-range parameters") {
  SimParams p;
  p.env.n_agents = 11;
  CHECK(!validate(p).empty());

  p = SimParams{};
  p.env.n_agents = 1;
  CHECK(!validate(p).empty());

  p = SimParams{};
  p.env.quantities = {4, 3};
  CHECK(!validate(p).empty());

  p = SimParams{};
  p.learning.gamma = 1.0;
  CHECK(!validate(p).empty());

  p = SimParams{};
  p.learning.epsilon_start = 0.01;
  p.learning.epsilon_end = 0.3;
  CHECK(!validate(p).empty());

  p = SimParams{};
  p.trust.beta_pos = 0.05;
  p.trust.beta_neg = 0.05;
  CHECK(!validate(p).empty());

  p = SimParams{};
  p.trust.adopt_threshold = 1.0;
  CHECK(!validate(p).empty());
}

TEST_CASE("config entries round-trip through overrides") {
  SimParams p;
  p.env.episodes = 77;
  p.learning.epsilon_start = 0.21;
  auto entries = config_entries(p);
  CHECK(entries.at("episodes") == "77");

  SimParams q;
  for (const auto& [key, value] : entries) apply_override(q, key, value);
  CHECK(config_entries(q) == entries);
}

}  // TEST_SUITE

}  // namespace
}  // namespace tslec
