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

#include "tslec/agent.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "doctest.h"
#include "tslec/social.hpp"

namespace tslec {
namespace {

ProposalLine line_at(const Proposal& p, size_t i) {
  REQUIRE(i < p.lines.size());
  return p.lines[i];
}

TEST_SUITE("agent") {

TEST_CASE("state buckets split the pool into per-item thirds") {
  // q = 3: counts 0..3 fall LOW, MED, HIGH, HIGH.
  CHECK(make_state_key({0}, {3}, 1).buckets == std::vector<int>{0});
  CHECK(make_state_key({1}, {3}, 1).buckets == std::vector<int>{1});
  CHECK(make_state_key({2}, {3}, 1).buckets == std::vector<int>{2});
  CHECK(make_state_key({3}, {3}, 1).buckets == std::vector<int>{2});
  // q = 4: 1 is under a third, 2 under two thirds, 3 above.
  CHECK(make_state_key({1}, {4}, 1).buckets == std::vector<int>{0});
  CHECK(make_state_key({2}, {4}, 1).buckets == std::vector<int>{1});
  CHECK(make_state_key({3}, {4}, 1).buckets == std::vector<int>{2});
}

TEST_CASE("packed keys separate rounds and buckets") {
  std::set<std::uint64_t> keys;
  for (int round = 1; round <= 3; ++round)
    for (int b0 = 0; b0 < 3; ++b0)
      for (int b1 = 0; b1 < 3; ++b1) {
        StateKey k;
        k.round = round;
        k.buckets = {b0, b1};
        keys.insert(k.pack());
      }
  CHECK(keys.size() == 27);
}

TEST_CASE("q-table reads optimistic defaults until written") {
  QTable q(30.0);
  CHECK(q.get(5, Action::kCooperative) == doctest::Approx(30.0));
  CHECK(q.max_value(5) == doctest::Approx(30.0));
  CHECK(q.argmax(5) == Action::kAggressive);
  CHECK(q.size() == 0);

  q.set(5, Action::kCooperative, 31.0);
  CHECK(q.argmax(5) == Action::kCooperative);
  q.set(5, Action::kBalanced, 31.0);
  CHECK(q.argmax(5) == Action::kCooperative);
  q.set(5, Action::kAggressive, 31.0);
  CHECK(q.argmax(5) == Action::kAggressive);
}

TEST_CASE("epsilon decays linearly then floors") {
  LearningParams p;
  CHECK(epsilon_at(1, p) == doctest::Approx(0.3));
  CHECK(epsilon_at(31, p) == doctest::Approx(0.175));
  CHECK(epsilon_at(61, p) == doctest::Approx(0.05));
  CHECK(epsilon_at(100, p) == doctest::Approx(0.05));
  for (int e = 2; e <= 100; ++e)
    CHECK(epsilon_at(e, p) <= epsilon_at(e - 1, p));
}

TEST_CASE("q_update matches the closed form to 1e-12 relative") {
  LearningParams params;
  QTable q(params.q_max);
  Pcg32 rng(21u, 8u);
  // Shadow map applying q' = (1-a) q + a (r + g max_next) directly.
  std::map<std::pair<std::uint64_t, int>, double> shadow;
  auto shadow_get = [&](std::uint64_t s, int a) {
    auto it = shadow.find({s, a});
    return it == shadow.end() ? params.q_max : it->second;
  };
  auto shadow_max = [&](std::uint64_t s) {
    double m = shadow_get(s, 0);
    for (int a = 1; a < kNumActions; ++a)
      m = std::max(m, shadow_get(s, a));
    return m;
  };
  for (int step = 0; step < 5000; ++step) {
    std::uint64_t state = rng.uniform_below(20);
    Action action = static_cast<Action>(rng.uniform_below(3));
    double reward = rng.uniform_double() * 20.0;
    std::optional<std::uint64_t> next;
    if (rng.uniform_double() < 0.8) next = rng.uniform_below(20);

    double max_next = next ? shadow_max(*next) : 0.0;
    double expect = (1.0 - params.alpha) *
                        shadow_get(state, static_cast<int>(action)) +
                    params.alpha * (reward + params.gamma * max_next);
    shadow[{state, static_cast<int>(action)}] = expect;

    q_update(q, state, action, reward, next, params);
    double got = q.get(state, action);
    CHECK(std::abs(got - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
  }
}

TEST_CASE("terminal updates use zero future value") {
  LearningParams params;
  params.alpha = 0.5;
  params.gamma = 0.9;
  QTable q(10.0);
  q_update(q, 3, Action::kBalanced, 4.0, std::nullopt, params);
  CHECK(q.get(3, Action::kBalanced) == doctest::Approx(0.5 * 10.0 + 0.5 * 4.0));
}

TEST_CASE("sampled goals stay in the configured range") {
  EnvConfig config;
  Pcg32 rng(5u, 5u);
  for (int i = 0; i < 200; ++i) {
    auto goals = sample_goals(config, rng);
    REQUIRE(goals.size() == 5);
    for (int g : goals) {
      CHECK(g >= 1);
      CHECK(g <= 6);
    }
  }
}

TEST_CASE("aggressive proposals demand the top two items") {
  PoolState pool = reset_episode({4, 3, 2, 3, 2});
  Proposal p = generate_proposal(Action::kAggressive, {6, 1, 1, 1, 5}, pool, 0);
  REQUIRE(p.lines.size() == 2);
  CHECK(line_at(p, 0).intent == Intent::kDemand);
  CHECK(line_at(p, 0).item == 0);
  CHECK(line_at(p, 0).qty == 3);
  CHECK(line_at(p, 1).intent == Intent::kDemand);
  CHECK(line_at(p, 1).item == 4);
  CHECK(line_at(p, 1).qty == 2);
}

TEST_CASE("cooperative proposals offer the bottom item and request the top") {
  PoolState pool = reset_episode({4, 3, 2, 3, 2});
  Proposal p =
      generate_proposal(Action::kCooperative, {6, 1, 1, 1, 5}, pool, 1);
  REQUIRE(p.lines.size() == 2);
  CHECK(line_at(p, 0).intent == Intent::kOffer);
  CHECK(line_at(p, 0).item == 1);  // goal ties resolve to the lowest index
  CHECK(line_at(p, 0).qty == 1);
  CHECK(line_at(p, 1).intent == Intent::kRequest);
  CHECK(line_at(p, 1).item == 0);
  CHECK(line_at(p, 1).qty == 1);
}

TEST_CASE("balanced proposals demand the top and offer the bottom") {
  PoolState pool = reset_episode({4, 3, 2, 3, 2});
  Proposal p = generate_proposal(Action::kBalanced, {6, 1, 1, 1, 5}, pool, 2);
  REQUIRE(p.lines.size() == 2);
  CHECK(line_at(p, 0).intent == Intent::kDemand);
  CHECK(line_at(p, 0).item == 0);
  CHECK(line_at(p, 0).qty == 2);
  CHECK(line_at(p, 1).intent == Intent::kOffer);
  CHECK(line_at(p, 1).item == 1);
  CHECK(line_at(p, 1).qty == 1);
}

TEST_CASE("offer quantities grow with the round, requests on the last") {
  PoolState pool = reset_episode({4, 3, 2, 3, 2});
  pool.round = 2;
  Proposal p =
      generate_proposal(Action::kCooperative, {6, 1, 1, 1, 5}, pool, 0);
  CHECK(line_at(p, 0).qty == 2);  // offer scales with round
  CHECK(line_at(p, 1).qty == 1);  // request still single before round 3

  pool.round = 3;
  p = generate_proposal(Action::kCooperative, {6, 1, 1, 1, 5}, pool, 0);
  CHECK(line_at(p, 0).qty == 3);
  CHECK(line_at(p, 1).qty == 3);

  // Scarce items clip both.
  PoolState thin{{1, 1, 1, 1, 1}, 3};
  p = generate_proposal(Action::kCooperative, {6, 1, 1, 1, 5}, thin, 0);
  CHECK(line_at(p, 0).qty == 1);
  CHECK(line_at(p, 1).qty == 1);
}

TEST_CASE("an empty pool degenerates to a single minimal demand") {
  PoolState pool{{0, 0, 0, 0, 0}, 2};
  for (Action a : {Action::kAggressive, Action::kCooperative,
                   Action::kBalanced}) {
    Proposal p = generate_proposal(a, {6, 1, 1, 1, 5}, pool, 3);
    REQUIRE(p.lines.size() == 1);
    CHECK(line_at(p, 0).intent == Intent::kDemand);
    CHECK(line_at(p, 0).item == 0);
    CHECK(line_at(p, 0).qty == 1);
  }
}

TEST_CASE("aggressive skips exhausted items") {
  PoolState pool{{0, 3, 2, 3, 2}, 1};
  Proposal p = generate_proposal(Action::kAggressive, {6, 1, 1, 1, 5}, pool, 0);
  REQUIRE(p.lines.size() == 2);
  CHECK(line_at(p, 0).item == 4);
  CHECK(line_at(p, 1).item == 1);
}

TEST_CASE("trusted peers are replayed when trust clears the bar") {
  LearningParams learning;
  learning.epsilon_start = 0.0;
  learning.epsilon_end = 0.0;
  TrustParams trust;
  QTable q(30.0);
  StateKey state = make_state_key({4, 3, 2, 3, 2}, {4, 3, 2, 3, 2}, 1);
  StrategyStore observed;
  observed.put(2, state.pack(), {Action::kCooperative, 12.0, 5});
  Pcg32 rng(3u, 9u);

  std::vector<double> trust_row = {0.0, 0.5, 0.9, 0.5};
  SelectResult r = select_action(q, state, trust_row, 0, observed, 50,
                                 learning, trust, rng);
  CHECK(r.source == ActionSource::kTrustedPeer);
  CHECK(r.action == Action::kCooperative);
}

TEST_CASE("trust at the threshold exactly does not qualify") {
  LearningParams learning;
  learning.epsilon_start = 0.0;
  learning.epsilon_end = 0.0;
  TrustParams trust;
  QTable q(30.0);
  StateKey state = make_state_key({4, 3, 2, 3, 2}, {4, 3, 2, 3, 2}, 1);
  StrategyStore observed;
  observed.put(2, state.pack(), {Action::kCooperative, 12.0, 5});
  Pcg32 rng(3u, 9u);

  std::vector<double> trust_row = {0.0, 0.5, 0.7, 0.5};
  SelectResult r = select_action(q, state, trust_row, 0, observed, 50,
                                 learning, trust, rng);
  CHECK(r.source == ActionSource::kExploit);
}

TEST_CASE("a trusted peer without a matching strategy falls through") {
  LearningParams learning;
  learning.epsilon_start = 0.0;
  learning.epsilon_end = 0.0;
  TrustParams trust;
  QTable q(30.0);
  StateKey state = make_state_key({4, 3, 2, 3, 2}, {4, 3, 2, 3, 2}, 1);
  StrategyStore observed;  // empty
  Pcg32 rng(3u, 9u);

  std::vector<double> trust_row = {0.0, 0.95, 0.9, 0.5};
  SelectResult r = select_action(q, state, trust_row, 0, observed, 50,
                                 learning, trust, rng);
  CHECK(r.source == ActionSource::kExploit);
  CHECK(r.action == Action::kAggressive);  // fresh optimism, tie order
}

TEST_CASE("equal trust goes to the peer with the newest entry") {
  LearningParams learning;
  learning.epsilon_start = 0.0;
  learning.epsilon_end = 0.0;
  TrustParams trust;
  QTable q(30.0);
  StateKey state = make_state_key({4, 3, 2, 3, 2}, {4, 3, 2, 3, 2}, 1);
  StrategyStore observed;
  observed.put(1, state.pack(), {Action::kBalanced, 9.0, 3});
  observed.put(3, state.pack(), {Action::kCooperative, 11.0, 7});
  Pcg32 rng(3u, 9u);

  std::vector<double> trust_row = {0.0, 0.9, 0.0, 0.9};
  SelectResult r = select_action(q, state, trust_row, 0, observed, 50,
                                 learning, trust, rng);
  CHECK(r.source == ActionSource::kTrustedPeer);
  CHECK(r.action == Action::kCooperative);
}

TEST_CASE("epsilon one always explores uniformly") {
  LearningParams learning;
  learning.epsilon_start = 1.0;
  learning.epsilon_end = 1.0;
  TrustParams trust;
  QTable q(30.0);
  StateKey state = make_state_key({4, 3, 2, 3, 2}, {4, 3, 2, 3, 2}, 1);
  StrategyStore observed;
  observed.put(2, state.pack(), {Action::kCooperative, 12.0, 5});
  Pcg32 rng(17u, 23u);

  std::vector<double> trust_row = {0.0, 0.5, 0.9, 0.5};
  std::set<Action> seen;
  for (int i = 0; i < 200; ++i) {
    SelectResult r = select_action(q, state, trust_row, 0, observed, 1,
                                   learning, trust, rng);
    CHECK(r.source == ActionSource::kExplore);
    seen.insert(r.action);
  }
  CHECK(seen.size() == 3);
}

TEST_CASE("value shifts blend the shifted goal toward the announcement") {
  AdaptationParams params;
  std::vector<int> goals = {2, 5, 1, 6, 3};
  auto out = adapt_goals_env(goals, {ChangeKind::kValueShift, 0, 9}, params);
  CHECK(out[0] == 4);  // floor(0.7 * 2 + 0.3 * 9)
  for (size_t j = 1; j < goals.size(); ++j) CHECK(out[j] == goals[j]);

  out = adapt_goals_env(goals, {ChangeKind::kScarcity, 1, 0}, params);
  CHECK(out == goals);
  out = adapt_goals_env(goals, {ChangeKind::kAbundance, 1, 0}, params);
  CHECK(out == goals);
}

TEST_CASE("peer adaptation needs a clear out-earner and a baseline") {
  AdaptationParams params;
  std::vector<int> goals = {1, 1, 1, 1, 1};
  std::vector<int> peer = {6, 6, 6, 6, 6};

  auto out = adapt_goals_peer(goals, peer, 0.0, 100.0, params);
  CHECK(out == goals);

  out = adapt_goals_peer(goals, peer, 10.0, 14.0, params);
  CHECK(out == goals);  // 14 <= 1.5 * 10

  out = adapt_goals_peer(goals, peer, 10.0, 16.0, params);
  for (int v : out) CHECK(v == 2);  // floor(0.8 * 1 + 0.2 * 6)
}

}  // TEST_SUITE

}  // namespace
}  // namespace tslec
