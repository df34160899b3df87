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

#ifndef TSLEC_SOCIAL_HPP_
#define TSLEC_SOCIAL_HPP_

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "tslec/agent.hpp"
#include "tslec/config.hpp"
#include "tslec/lexicon.hpp"

namespace tslec {

class TrustMatrix {
 public:
  TrustMatrix(int n, double tau_init)
      : n_(n), tau_(static_cast<size_t>(n) * n, tau_init) {
    for (int i = 0; i < n; ++i) tau_[idx(i, i)] = 0.0;
  }

  double get(int i, int j) const { return tau_[idx(i, j)]; }
  void set(int i, int j, double v) { tau_[idx(i, j)] = v; }
  int size() const { return n_; }

  std::vector<double> row(int i) const {
    return std::vector<double>(tau_.begin() + idx(i, 0),
                               tau_.begin() + idx(i, 0) + n_);
  }
  const std::vector<double>& flat() const { return tau_; }

  double offdiag_mean() const {
    double sum = 0.0;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (i != j) sum += get(i, j);
    return sum / (static_cast<double>(n_) * (n_ - 1));
  }

 private:
  size_t idx(int i, int j) const { return static_cast<size_t>(i) * n_ + j; }
  int n_;
  std::vector<double> tau_;
};

// Asymmetric update: a teacher that beat the learner's recent mean gains
// beta_pos, anyone else loses beta_neg, clamped to [0, 1]. Gaining trust is
// twice as slow as losing it under the defaults.
double update_trust(double tau, double teacher_reward,
                    double learner_recent_mean, const TrustParams& params);

// True iff this episode's reward strictly beats the mean of the (up to 10)
// prior rewards; an agent with no history has nothing proven to teach.
bool should_teach(double episode_reward,
                  const std::vector<double>& recent_rewards);

struct TraceStep {
  StateKey state;
  Action action = Action::kAggressive;
  double reward = 0.0;
  ActionSource source = ActionSource::kExploit;
};

struct TeachingEntry {
  std::uint64_t state = 0;
  Action action = Action::kAggressive;
  double observed_reward = 0.0;
};

struct Teaching {
  int teacher = 0;
  std::vector<TeachingEntry> entries;  // <= 2, sorted by reward descending
  Message encoded;                     // one strategy marker per entry
};

// Top-2 trace steps by round reward (ties to the earlier round), encoded
// through the teacher's vocabulary; marker symbols mint lazily like any
// other concept and so are unknown to listeners until first revealed.
Teaching build_teaching(const std::vector<TraceStep>& trace,
                        Vocabulary& vocab);

struct StrategyEntry {
  Action action = Action::kAggressive;
  double observed_reward = 0.0;
  int adopted_at = 0;
};

// What a learner has adopted, by teacher. One entry per (teacher, state);
// newer teachings overwrite.
class StrategyStore {
 public:
  const StrategyEntry* find(int teacher, std::uint64_t state) const;
  void put(int teacher, std::uint64_t state, const StrategyEntry& entry);
  std::size_t size() const;

 private:
  std::vector<std::unordered_map<std::uint64_t, StrategyEntry>> by_teacher_;
};

struct AdoptionEvent {
  int episode = 0;
  int learner = 0;
  int teacher = 0;
  double tau_at_adoption = 0.0;
  double learner_reward_before = 0.0;  // mean of the prior 5 episodes
  std::optional<double> learner_reward_after;  // next episode, filled later
};

// Gates: the teacher must have beaten the learner's recent mean, and trust
// must clear the adoption threshold (or, under the random-trust baseline,
// the caller passes a coin flip as gate_override). Only entries whose
// marker the learner can decode merge; an event is recorded iff at least
// one merged.
std::optional<AdoptionEvent> consider_adoption(
    StrategyStore& store, const Teaching& teaching,
    const std::vector<bool>& entry_decodable, double tau,
    double teacher_reward, double learner_recent_mean,
    const TrustParams& params, int episode, int learner,
    std::optional<bool> gate_override = std::nullopt);

// Fraction of ordered off-diagonal pairs above the threshold.
double network_density(const TrustMatrix& trust, double threshold);

// Undirected edge iff both directions clear the threshold; returns
// 3 * triangles / connected triplets, 0 when no triplets exist.
double network_transitivity(const TrustMatrix& trust, double threshold);

}  // namespace tslec

#endif  // TSLEC_SOCIAL_HPP_
