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

#include <algorithm>
#include <cmath>

#include "tslec/social.hpp"

namespace tslec {

const char* action_name(Action action) {
  switch (action) {
    case Action::kAggressive:
      return "AGGRESSIVE";
    case Action::kCooperative:
      return "COOPERATIVE";
    case Action::kBalanced:
      return "BALANCED";
  }
  return "?";
}

StateKey make_state_key(const std::vector<int>& remaining,
                        const std::vector<int>& quantities, int round) {
  StateKey key;
  key.round = round;
  key.buckets.reserve(remaining.size());
  for (size_t j = 0; j < remaining.size(); ++j) {
    int r = remaining[j], q = quantities[j];
    int b;
    if (3 * r < q)
      b = 0;
    else if (3 * r < 2 * q)
      b = 1;
    else
      b = 2;
    key.buckets.push_back(b);
  }
  return key;
}

double QTable::get(std::uint64_t state, Action a) const {
  auto it = table_.find((state << 2) | static_cast<std::uint64_t>(a));
  return it == table_.end() ? q_max_ : it->second;
}

void QTable::set(std::uint64_t state, Action a, double value) {
  table_[(state << 2) | static_cast<std::uint64_t>(a)] = value;
}

double QTable::max_value(std::uint64_t state) const {
  double best = get(state, Action::kAggressive);
  for (int a = 1; a < kNumActions; ++a)
    best = std::max(best, get(state, static_cast<Action>(a)));
  return best;
}

Action QTable::argmax(std::uint64_t state) const {
  Action best = Action::kAggressive;
  double best_v = get(state, best);
  for (int a = 1; a < kNumActions; ++a) {
    double v = get(state, static_cast<Action>(a));
    if (v > best_v) {
      best_v = v;
      best = static_cast<Action>(a);
    }
  }
  return best;
}

std::vector<int> sample_goals(const EnvConfig& config, Pcg32& rng) {
  std::vector<int> goals(config.n_items);
  for (int& g : goals)
    g = rng.uniform_int(config.goal_value_min, config.goal_value_max);
  return goals;
}

double epsilon_at(int episode, const LearningParams& params) {
  double t = static_cast<double>(episode - 1) / params.epsilon_decay_episodes;
  t = std::min(1.0, std::max(0.0, t));
  return params.epsilon_start + (params.epsilon_end - params.epsilon_start) * t;
}

SelectResult select_action(const QTable& q, const StateKey& state,
                           const std::vector<double>& trust_row, int self,
                           const StrategyStore& observed, int episode,
                           const LearningParams& learning,
                           const TrustParams& trust, Pcg32& decide_rng) {
  double eps = epsilon_at(episode, learning);
  int n = static_cast<int>(trust_row.size());

  // Tier 1: the most-trusted peer's strategy for this state, when trust
  // clears the bar. Exact trust ties go to the peer whose entry for this
  // state is newest (fresh adoptions get played), then to the lowest index.
  double best_tau = -1.0;
  int best_at = -1;
  int teacher = -1;
  for (int j = 0; j < n; ++j) {
    if (j == self) continue;
    const StrategyEntry* e = observed.find(j, state.pack());
    int at = e ? e->adopted_at : -1;
    if (trust_row[j] > best_tau ||
        (trust_row[j] == best_tau && at > best_at)) {
      best_tau = trust_row[j];
      best_at = at;
      teacher = j;
    }
  }

  if (teacher >= 0 && best_tau > trust.adopt_threshold &&
      decide_rng.uniform_double() > eps) {
    const StrategyEntry* entry = observed.find(teacher, state.pack());
    if (entry) return {entry->action, ActionSource::kTrustedPeer};
  }

  if (decide_rng.uniform_double() < eps)
    return {static_cast<Action>(decide_rng.uniform_below(kNumActions)),
            ActionSource::kExplore};
  return {q.argmax(state.pack()), ActionSource::kExploit};
}

namespace {

// Highest-goal available item, ties to the lowest index; -1 if none.
int top_item(const std::vector<int>& goals, const std::vector<int>& remaining,
             int skip = -1) {
  int best = -1;
  for (size_t j = 0; j < goals.size(); ++j) {
    if (static_cast<int>(j) == skip || remaining[j] <= 0) continue;
    if (best < 0 || goals[j] > goals[best]) best = static_cast<int>(j);
  }
  return best;
}

int bottom_item(const std::vector<int>& goals,
                const std::vector<int>& remaining) {
  int best = -1;
  for (size_t j = 0; j < goals.size(); ++j) {
    if (remaining[j] <= 0) continue;
    if (best < 0 || goals[j] < goals[best]) best = static_cast<int>(j);
  }
  return best;
}

int escalated_qty(int round, int remaining, int cap) {
  return std::min(std::min(round, remaining), cap);
}

}  // namespace

Proposal generate_proposal(Action action, const std::vector<int>& goals,
                           const PoolState& pool, int proposer) {
  Proposal p;
  p.proposer = proposer;
  const std::vector<int>& rem = pool.remaining;

  int top = top_item(goals, rem);
  if (top < 0) {
    p.lines.push_back({Intent::kDemand, 0, 1});
    return p;
  }

  switch (action) {
    case Action::kAggressive: {
      p.lines.push_back({Intent::kDemand, top, std::min(3, rem[top])});
      int second = top_item(goals, rem, top);
      if (second >= 0)
        p.lines.push_back({Intent::kDemand, second, std::min(3, rem[second])});
      break;
    }
    case Action::kCooperative: {
      int bottom = bottom_item(goals, rem);
      p.lines.push_back(
          {Intent::kOffer, bottom, escalated_qty(pool.round, rem[bottom], 3)});
      p.lines.push_back(
          {Intent::kRequest, top, pool.round == 3 ? std::min(3, rem[top]) : 1});
      break;
    }
    case Action::kBalanced: {
      p.lines.push_back({Intent::kDemand, top, std::min(2, rem[top])});
      int bottom = bottom_item(goals, rem);
      p.lines.push_back(
          {Intent::kOffer, bottom, escalated_qty(pool.round, rem[bottom], 3)});
      break;
    }
  }
  return p;
}

void q_update(QTable& q, std::uint64_t state, Action a, double reward,
              std::optional<std::uint64_t> next_state,
              const LearningParams& params) {
  double max_next = next_state ? q.max_value(*next_state) : 0.0;
  double old = q.get(state, a);
  q.set(state, a,
        (1.0 - params.alpha) * old +
            params.alpha * (reward + params.gamma * max_next));
}

namespace {

// floor with a hair of tolerance: blends like 0.7*4 + 0.3*4 land a few ulps
// under the exact integer and must not round down through it.
int blend_floor(double lambda, int g, int new_value) {
  if (g == new_value) return g;
  return static_cast<int>(
      std::floor(lambda * g + (1.0 - lambda) * new_value + 1e-9));
}

}  // namespace

std::vector<int> adapt_goals_env(const std::vector<int>& goals,
                                 const ChangeEvent& event,
                                 const AdaptationParams& params) {
  if (event.kind != ChangeKind::kValueShift) return goals;
  std::vector<int> out = goals;
  out[event.item] = blend_floor(params.lambda_env, goals[event.item],
                                event.new_value);
  return out;
}

std::vector<int> adapt_goals_peer(const std::vector<int>& goals,
                                  const std::vector<int>& best_peer_goals,
                                  double own_recent_mean,
                                  double best_peer_reward,
                                  const AdaptationParams& params) {
  if (own_recent_mean == 0.0) return goals;
  if (!(best_peer_reward > params.peer_threshold * own_recent_mean))
    return goals;
  std::vector<int> out(goals.size());
  for (size_t j = 0; j < goals.size(); ++j)
    out[j] = blend_floor(params.lambda_peer, goals[j], best_peer_goals[j]);
  return out;
}

}  // namespace tslec
