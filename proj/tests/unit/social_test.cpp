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

#include "tslec/social.hpp"

#include <vector>

#include "doctest.h"
#include "tslec/rng.hpp"

namespace tslec {
namespace {

Teaching one_entry_teaching(int teacher, std::uint64_t state, Action action,
                            double reward) {
  Teaching t;
  t.teacher = teacher;
  t.entries.push_back({state, action, reward});
  return t;
}

TEST_SUITE("social") {

TEST_CASE("trust gains when the teacher beats the learner's mean") {
  TrustParams p;
  CHECK(update_trust(0.5, 12.0, 10.0, p) == doctest::Approx(0.6));
  // Equal performance is not a win.
  CHECK(update_trust(0.5, 10.0, 10.0, p) == doctest::Approx(0.45));
  CHECK(update_trust(0.5, 8.0, 10.0, p) == doctest::Approx(0.45));
}

TEST_CASE("trust clamps to the unit interval") {
  TrustParams p;
  CHECK(update_trust(0.98, 12.0, 10.0, p) == doctest::Approx(1.0));
  CHECK(update_trust(1.0, 12.0, 10.0, p) == doctest::Approx(1.0));
  CHECK(update_trust(0.02, 5.0, 10.0, p) == doctest::Approx(0.0));
  CHECK(update_trust(0.0, 5.0, 10.0, p) == doctest::Approx(0.0));
}

TEST_CASE("one gain is worth exactly two losses mid-range") {
  TrustParams p;
  double tau = 0.5;
  tau = update_trust(tau, 12.0, 10.0, p);
  CHECK(tau == doctest::Approx(0.6));
  tau = update_trust(tau, 8.0, 10.0, p);
  tau = update_trust(tau, 8.0, 10.0, p);
  CHECK(tau == doctest::Approx(0.5));
}

TEST_CASE("a million random updates never leave the unit interval") {
  TrustParams p;
  Pcg32 rng(11u, 13u);
  double tau = 0.5;
  for (int i = 0; i < 1000000; ++i) {
    double teacher = rng.uniform_double() * 20.0;
    double mean = rng.uniform_double() * 20.0;
    tau = update_trust(tau, teacher, mean, p);
    REQUIRE(tau >= 0.0);
    REQUIRE(tau <= 1.0);
  }
}

TEST_CASE("teaching requires strictly beating the recent mean") {
  CHECK(should_teach(5.0, {4.0, 4.0, 4.0}));
  CHECK_FALSE(should_teach(4.0, {4.0, 4.0, 4.0}));
  CHECK_FALSE(should_teach(3.9, {4.0, 4.0, 4.0}));
  CHECK_FALSE(should_teach(100.0, {}));
}

TEST_CASE("teachings carry the top two rounds by reward") {
  Vocabulary vocab(1);
  std::vector<TraceStep> trace(3);
  for (int r = 0; r < 3; ++r) {
    trace[r].state.round = r + 1;
    trace[r].state.buckets = {2, 2, 2, 2, 2};
  }
  trace[0].action = Action::kAggressive;
  trace[0].reward = 3.0;
  trace[1].action = Action::kCooperative;
  trace[1].reward = 9.0;
  trace[2].action = Action::kBalanced;
  trace[2].reward = 5.0;

  Teaching t = build_teaching(trace, vocab);
  CHECK(t.teacher == 1);
  REQUIRE(t.entries.size() == 2);
  CHECK(t.entries[0].state == trace[1].state.pack());
  CHECK(t.entries[0].action == Action::kCooperative);
  CHECK(t.entries[0].observed_reward == doctest::Approx(9.0));
  CHECK(t.entries[1].state == trace[2].state.pack());
  CHECK(t.entries[1].action == Action::kBalanced);

  // Marker symbols mint in the teacher's own vocabulary.
  CHECK(t.encoded.sender == 1);
  REQUIRE(t.encoded.symbols.size() == 2);
  CHECK(vocab.size() == 2);
  CHECK(vocab.line_size() == 0);
  auto concepts = decode_true(vocab, t.encoded);
  REQUIRE(concepts.size() == 2);
  CHECK(concepts[0] == Concept::strategy_marker(0));
  CHECK(concepts[1] == Concept::strategy_marker(1));
}

TEST_CASE("reward ties keep the earlier round first") {
  Vocabulary vocab(0);
  std::vector<TraceStep> trace(3);
  for (int r = 0; r < 3; ++r) trace[r].state.round = r + 1;
  trace[0].reward = 5.0;
  trace[1].reward = 5.0;
  trace[2].reward = 1.0;

  Teaching t = build_teaching(trace, vocab);
  REQUIRE(t.entries.size() == 2);
  CHECK(t.entries[0].state == trace[0].state.pack());
  CHECK(t.entries[1].state == trace[1].state.pack());
}

TEST_CASE("short traces teach what they have") {
  Vocabulary vocab(0);
  std::vector<TraceStep> one(1);
  one[0].reward = 7.0;
  CHECK(build_teaching(one, vocab).entries.size() == 1);
  CHECK(build_teaching({}, vocab).entries.empty());
}

TEST_CASE("re-teaching reuses the minted marker symbols") {
  Vocabulary vocab(3);
  std::vector<TraceStep> trace(2);
  Teaching a = build_teaching(trace, vocab);
  Teaching b = build_teaching(trace, vocab);
  CHECK(vocab.size() == 2);
  CHECK(a.encoded.symbols[0] == b.encoded.symbols[0]);
  CHECK(a.encoded.symbols[1] == b.encoded.symbols[1]);
}

TEST_CASE("strategy stores keep one entry per teacher and state") {
  StrategyStore store;
  CHECK(store.find(0, 5) == nullptr);
  CHECK(store.find(-1, 5) == nullptr);
  CHECK(store.size() == 0);

  store.put(2, 5, {Action::kCooperative, 9.0, 10});
  REQUIRE(store.find(2, 5) != nullptr);
  CHECK(store.find(2, 5)->action == Action::kCooperative);
  CHECK(store.find(2, 5)->adopted_at == 10);
  CHECK(store.find(2, 6) == nullptr);
  CHECK(store.find(1, 5) == nullptr);
  CHECK(store.size() == 1);
}

TEST_CASE("same-action re-puts refresh reward but keep adoption age") {
  StrategyStore store;
  store.put(2, 5, {Action::kCooperative, 9.0, 10});
  store.put(2, 5, {Action::kCooperative, 12.0, 20});
  CHECK(store.find(2, 5)->observed_reward == doctest::Approx(12.0));
  CHECK(store.find(2, 5)->adopted_at == 10);

  store.put(2, 5, {Action::kBalanced, 8.0, 30});
  CHECK(store.find(2, 5)->action == Action::kBalanced);
  CHECK(store.find(2, 5)->adopted_at == 30);
}

TEST_CASE("adoption needs both trust and a better-performing teacher") {
  TrustParams p;
  Teaching t = one_entry_teaching(2, 7, Action::kCooperative, 14.0);
  std::vector<bool> ok = {true};

  StrategyStore s1;
  auto ev = consider_adoption(s1, t, ok, 0.8, 14.0, 10.0, p, 30, 0);
  REQUIRE(ev.has_value());
  CHECK(ev->episode == 30);
  CHECK(ev->learner == 0);
  CHECK(ev->teacher == 2);
  CHECK(ev->tau_at_adoption == doctest::Approx(0.8));
  CHECK(ev->learner_reward_before == doctest::Approx(10.0));
  CHECK_FALSE(ev->learner_reward_after.has_value());
  CHECK(s1.size() == 1);

  StrategyStore s2;
  CHECK_FALSE(consider_adoption(s2, t, ok, 0.6, 14.0, 10.0, p, 30, 0));
  CHECK(s2.size() == 0);

  StrategyStore s3;
  CHECK_FALSE(consider_adoption(s3, t, ok, 0.9, 8.0, 10.0, p, 30, 0));
  CHECK(s3.size() == 0);
}

TEST_CASE("both adoption gates are strict inequalities") {
  TrustParams p;
  Teaching t = one_entry_teaching(2, 7, Action::kCooperative, 14.0);
  std::vector<bool> ok = {true};
  StrategyStore store;
  CHECK_FALSE(consider_adoption(store, t, ok, 0.7, 14.0, 10.0, p, 1, 0));
  CHECK_FALSE(consider_adoption(store, t, ok, 0.8, 10.0, 10.0, p, 1, 0));
}

TEST_CASE("a gate override replaces the trust check, not the reward check") {
  TrustParams p;
  Teaching t = one_entry_teaching(2, 7, Action::kCooperative, 14.0);
  std::vector<bool> ok = {true};

  StrategyStore s1;
  CHECK(consider_adoption(s1, t, ok, 0.1, 14.0, 10.0, p, 1, 0, true));
  StrategyStore s2;
  CHECK_FALSE(consider_adoption(s2, t, ok, 0.99, 14.0, 10.0, p, 1, 0, false));
  StrategyStore s3;
  CHECK_FALSE(consider_adoption(s3, t, ok, 0.1, 8.0, 10.0, p, 1, 0, true));
}

TEST_CASE("re-adopting identical content is not a new event") {
  TrustParams p;
  Teaching t = one_entry_teaching(2, 7, Action::kCooperative, 14.0);
  std::vector<bool> ok = {true};
  StrategyStore store;

  REQUIRE(consider_adoption(store, t, ok, 0.8, 14.0, 10.0, p, 30, 0));
  t.entries[0].observed_reward = 15.0;
  CHECK_FALSE(consider_adoption(store, t, ok, 0.8, 15.0, 10.0, p, 31, 0));
  // The reward estimate still refreshed; the age did not.
  CHECK(store.find(2, 7)->observed_reward == doctest::Approx(15.0));
  CHECK(store.find(2, 7)->adopted_at == 30);

  // A changed action is new knowledge again.
  t.entries[0].action = Action::kBalanced;
  CHECK(consider_adoption(store, t, ok, 0.8, 15.0, 10.0, p, 32, 0));
  CHECK(store.find(2, 7)->adopted_at == 32);
}

TEST_CASE("only decodable entries merge") {
  TrustParams p;
  Teaching t;
  t.teacher = 1;
  t.entries.push_back({7, Action::kCooperative, 14.0});
  t.entries.push_back({9, Action::kBalanced, 12.0});

  StrategyStore s1;
  CHECK_FALSE(
      consider_adoption(s1, t, {false, false}, 0.9, 14.0, 10.0, p, 1, 0));
  CHECK(s1.size() == 0);

  StrategyStore s2;
  CHECK(consider_adoption(s2, t, {false, true}, 0.9, 14.0, 10.0, p, 1, 0));
  CHECK(s2.size() == 1);
  CHECK(s2.find(1, 7) == nullptr);
  REQUIRE(s2.find(1, 9) != nullptr);
  CHECK(s2.find(1, 9)->action == Action::kBalanced);
}

TEST_CASE("trust matrices start uniform with a zero diagonal") {
  TrustMatrix m(4, 0.5);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(m.get(i, j) == doctest::Approx(i == j ? 0.0 : 0.5));
  CHECK(m.offdiag_mean() == doctest::Approx(0.5));
  CHECK(m.row(1) == std::vector<double>{0.5, 0.0, 0.5, 0.5});
  CHECK(m.flat().size() == 16);
}

TEST_CASE("density counts ordered pairs above the threshold") {
  TrustMatrix m(4, 0.5);
  CHECK(network_density(m, 0.7) == doctest::Approx(0.0));
  CHECK(network_density(m, 0.4) == doctest::Approx(1.0));
  m.set(0, 1, 0.9);
  m.set(1, 0, 0.8);
  CHECK(network_density(m, 0.7) == doctest::Approx(2.0 / 12.0));
  CHECK(network_density(TrustMatrix(1, 0.5), 0.0) == doctest::Approx(0.0));
}

TEST_CASE("transitivity closes mutual-trust triangles") {
  auto link = [](TrustMatrix& m, int i, int j) {
    m.set(i, j, 0.9);
    m.set(j, i, 0.9);
  };

  TrustMatrix none(4, 0.5);
  CHECK(network_transitivity(none, 0.7) == doctest::Approx(0.0));

  // One-directional trust is not an edge.
  TrustMatrix oneway(4, 0.5);
  oneway.set(0, 1, 0.9);
  CHECK(network_transitivity(oneway, 0.7) == doctest::Approx(0.0));

  // Triangle 0-1-2 plus pendant 2-3: one triangle, five triplets.
  TrustMatrix tri(4, 0.5);
  link(tri, 0, 1);
  link(tri, 1, 2);
  link(tri, 0, 2);
  link(tri, 2, 3);
  CHECK(network_transitivity(tri, 0.7) == doctest::Approx(0.6));

  // A star has open triplets only.
  TrustMatrix star(4, 0.5);
  link(star, 0, 1);
  link(star, 0, 2);
  link(star, 0, 3);
  CHECK(network_transitivity(star, 0.7) == doctest::Approx(0.0));

  // The complete graph is perfectly transitive.
  TrustMatrix full(4, 0.5);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) link(full, i, j);
  CHECK(network_transitivity(full, 0.7) == doctest::Approx(1.0));
}

}  // TEST_SUITE

}  // namespace
}  // namespace tslec
