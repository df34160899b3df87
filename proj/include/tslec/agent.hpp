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

#ifndef TSLEC_AGENT_HPP_
#define TSLEC_AGENT_HPP_

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "tslec/config.hpp"
#include "tslec/env.hpp"
#include "tslec/rng.hpp"

namespace tslec {

class StrategyStore;

enum class Action : int { kAggressive = 0, kCooperative = 1, kBalanced = 2 };
inline constexpr int kNumActions = 3;

const char* action_name(Action action);

enum class ActionSource : int { kTrustedPeer = 0, kExploit = 1, kExplore = 2 };

// Pool counts discretized into per-item thirds of the configured quantity,
// plus the round index. Raw count vectors would be far too sparse to learn
// in 100 episodes.
struct StateKey {
  std::vector<int> buckets;  // 0 = LOW, 1 = MED, 2 = HIGH
  int round = 1;

  std::uint64_t pack() const {
    std::uint64_t k = static_cast<std::uint64_t>(round);
    for (int b : buckets) k = k * 4 + static_cast<std::uint64_t>(b);
    return k;
  }
};

StateKey make_state_key(const std::vector<int>& remaining,
                        const std::vector<int>& quantities, int round);

// Tabular action values with lazy optimistic initialization: absent
// entries read as q_max.
class QTable {
 public:
  explicit QTable(double q_max) : q_max_(q_max) {}

  double get(std::uint64_t state, Action a) const;
  void set(std::uint64_t state, Action a, double value);
  double max_value(std::uint64_t state) const;
  // Ties resolve in fixed action order, AGGRESSIVE < COOPERATIVE < BALANCED.
  Action argmax(std::uint64_t state) const;
  std::size_t size() const { return table_.size(); }

 private:
  double q_max_;
  std::unordered_map<std::uint64_t, double> table_;
};

std::vector<int> sample_goals(const EnvConfig& config, Pcg32& rng);

double epsilon_at(int episode, const LearningParams& params);

struct SelectResult {
  Action action = Action::kAggressive;
  ActionSource source = ActionSource::kExploit;
};

// Three tiers. Tier 1: when the most-trusted peer clears the trust
// threshold, a draw beats epsilon, and that peer's observed store has a
// strategy for this state, replay it. Tier 2/3: standard epsilon-greedy.
SelectResult select_action(const QTable& q, const StateKey& state,
                           const std::vector<double>& trust_row, int self,
                           const StrategyStore& observed, int episode,
                           const LearningParams& learning,
                           const TrustParams& trust, Pcg32& decide_rng);

// Deterministic by design; styles differ in which lines they emit.
//   AGGRESSIVE:  DEMAND the two highest-goal available items, qty
//                min(3, remaining).
//   COOPERATIVE: OFFER the lowest-goal available item and REQUEST the
//                highest-goal one.
//   BALANCED:    DEMAND the top item (qty min(2, remaining)) and OFFER the
//                bottom one.
// OFFER quantities scale with the round, min(round, remaining, 3), so later
// rounds put more on the table; REQUEST stays at one unit until the final
// round, where it asks for min(3, remaining). Between them the full quantity
// range of the concept space gets exercised. Empty pool degenerates to
// DEMAND(0, 1).
Proposal generate_proposal(Action action, const std::vector<int>& goals,
                           const PoolState& pool, int proposer);

// One-step Q-learning; absent next_state means terminal (max next = 0).
void q_update(QTable& q, std::uint64_t state, Action a, double reward,
              std::optional<std::uint64_t> next_state,
              const LearningParams& params);

// Value shifts pull the shifted item's goal toward the announced value,
// g' = floor(lambda * g + (1 - lambda) * new_value) with lambda_env.
// Other change kinds leave goals untouched.
std::vector<int> adapt_goals_env(const std::vector<int>& goals,
                                 const ChangeEvent& event,
                                 const AdaptationParams& params);

// When the episode's best peer out-earned the agent's recent mean by the
// configured factor, every goal entry blends toward the peer's goals with
// lambda_peer. No-op when the recent mean is zero (no meaningful baseline).
std::vector<int> adapt_goals_peer(const std::vector<int>& goals,
                                  const std::vector<int>& best_peer_goals,
                                  double own_recent_mean,
                                  double best_peer_reward,
                                  const AdaptationParams& params);

}  // namespace tslec

#endif  // TSLEC_AGENT_HPP_
