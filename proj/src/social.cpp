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

#include <algorithm>
#include <numeric>

namespace tslec {

double update_trust(double tau, double teacher_reward,
                    double learner_recent_mean, const TrustParams& params) {
  if (teacher_reward > learner_recent_mean)
    return std::min(1.0, tau + params.beta_pos);
  return std::max(0.0, tau - params.beta_neg);
}

bool should_teach(double episode_reward,
                  const std::vector<double>& recent_rewards) {
  if (recent_rewards.empty()) return false;
  double mean = std::accumulate(recent_rewards.begin(), recent_rewards.end(),
                                0.0) /
                recent_rewards.size();
  return episode_reward > mean;
}

Teaching build_teaching(const std::vector<TraceStep>& trace,
                        Vocabulary& vocab) {
  Teaching t;
  t.teacher = vocab.owner();
  std::vector<size_t> order(trace.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return trace[a].reward > trace[b].reward;
  });
  size_t take = std::min<size_t>(2, order.size());
  t.encoded.sender = vocab.owner();
  for (size_t k = 0; k < take; ++k) {
    const TraceStep& step = trace[order[k]];
    t.entries.push_back(
        {step.state.pack(), step.action, step.reward});
    auto [sym, created] =
        vocab.encode(Concept::strategy_marker(static_cast<int>(k)));
    (void)created;
    t.encoded.symbols.push_back(sym);
  }
  return t;
}

const StrategyEntry* StrategyStore::find(int teacher,
                                         std::uint64_t state) const {
  if (teacher < 0 || teacher >= static_cast<int>(by_teacher_.size()))
    return nullptr;
  auto it = by_teacher_[teacher].find(state);
  return it == by_teacher_[teacher].end() ? nullptr : &it->second;
}

void StrategyStore::put(int teacher, std::uint64_t state,
                        const StrategyEntry& entry) {
  if (teacher >= static_cast<int>(by_teacher_.size()))
    by_teacher_.resize(teacher + 1);
  auto [it, inserted] = by_teacher_[teacher].try_emplace(state, entry);
  if (inserted) return;
  // Re-teaching the same action refreshes the reward estimate but not the
  // adoption age; only a changed strategy counts as new knowledge.
  int kept_at = it->second.action == entry.action ? it->second.adopted_at
                                                  : entry.adopted_at;
  it->second = entry;
  it->second.adopted_at = kept_at;
}

std::size_t StrategyStore::size() const {
  std::size_t n = 0;
  for (const auto& m : by_teacher_) n += m.size();
  return n;
}

std::optional<AdoptionEvent> consider_adoption(
    StrategyStore& store, const Teaching& teaching,
    const std::vector<bool>& entry_decodable, double tau,
    double teacher_reward, double learner_recent_mean,
    const TrustParams& params, int episode, int learner,
    std::optional<bool> gate_override) {
  bool trust_ok =
      gate_override ? *gate_override : tau > params.adopt_threshold;
  bool perf_ok = teacher_reward > learner_recent_mean;
  if (!trust_ok || !perf_ok) return std::nullopt;

  // Re-teaching identical content refreshes the store but is not a new
  // learning event; only novel or changed strategies count.
  int changed = 0;
  for (size_t k = 0; k < teaching.entries.size(); ++k) {
    if (k < entry_decodable.size() && !entry_decodable[k]) continue;
    const TeachingEntry& e = teaching.entries[k];
    const StrategyEntry* prior = store.find(teaching.teacher, e.state);
    if (!prior || prior->action != e.action) ++changed;
    store.put(teaching.teacher, e.state,
              {e.action, e.observed_reward, episode});
  }
  if (changed == 0) return std::nullopt;

  AdoptionEvent ev;
  ev.episode = episode;
  ev.learner = learner;
  ev.teacher = teaching.teacher;
  ev.tau_at_adoption = tau;
  ev.learner_reward_before = learner_recent_mean;
  return ev;
}

double network_density(const TrustMatrix& trust, double threshold) {
  int n = trust.size();
  if (n < 2) return 0.0;
  int above = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && trust.get(i, j) > threshold) ++above;
  return static_cast<double>(above) / (static_cast<double>(n) * (n - 1));
}

double network_transitivity(const TrustMatrix& trust, double threshold) {
  int n = trust.size();
  std::vector<std::vector<bool>> edge(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (trust.get(i, j) > threshold && trust.get(j, i) > threshold)
        edge[i][j] = edge[j][i] = true;

  long long triangles = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (edge[i][j] && edge[j][k] && edge[i][k]) ++triangles;

  long long triplets = 0;
  for (int v = 0; v < n; ++v) {
    long long deg = 0;
    for (int u = 0; u < n; ++u)
      if (edge[v][u]) ++deg;
    triplets += deg * (deg - 1) / 2;
  }
  if (triplets == 0) return 0.0;
  return static_cast<double>(3 * triangles) / static_cast<double>(triplets);
}

}  // namespace tslec
