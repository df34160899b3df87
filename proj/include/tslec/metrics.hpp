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

#ifndef TSLEC_METRICS_HPP_
#define TSLEC_METRICS_HPP_

#include <cstdint>
#include <map>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tslec/config.hpp"
#include "tslec/env.hpp"
#include "tslec/lexicon.hpp"
#include "tslec/social.hpp"

namespace tslec {

struct EpisodeRecord {
  int episode = 0;
  std::vector<double> rewards;
  double reward_mean = 0.0;
  std::vector<int> vocab_sizes;
  std::vector<double> trust;  // row-major N*N, diagonal 0
  double trust_mean = 0.0;    // off-diagonal mean
  std::vector<double> phi_pairs;  // row-major N*N listener x speaker
  double phi_mean = 0.0;          // 0 when communication is off
  // Agent-rounds played per negotiation action, then per decision source,
  // in enum order.
  std::array<int, 3> action_counts{};
  std::array<int, 3> source_counts{};
  std::optional<ChangeEvent> change;
};

// Everything a finished run leaves behind; all metrics and file outputs
// are pure functions of this.
struct RunRecord {
  std::string condition;
  bool teaching = false;
  bool adaptation = false;
  bool communication = false;
  bool random_trust = false;
  std::uint64_t seed = 0;
  SimParams params;
  std::vector<EpisodeRecord> episodes;
  std::vector<AdoptionEvent> events;
  // Per agent, in creation order.
  std::vector<std::vector<std::pair<Concept, Symbol>>> vocab_entries;
  // Per agent: symbol text -> times emitted.
  std::vector<std::map<std::string, long long>> usage;
  std::vector<std::vector<int>> final_goals;
};

struct MetricsReport {
  int e90 = 0;
  double auc = 0.0;
  std::vector<double> compositionality;  // per agent
  std::vector<double> entropy_bits;
  std::vector<double> compression;
  std::vector<int> vocab_size;
  double coverage = 0.0;  // mean fraction of the line-concept space held
  std::optional<double> phi_before;
  std::optional<double> phi_after;
  std::optional<double> stability;
  double eta_teach = 0.0;
  std::vector<std::pair<double, double>> trust_perf_pairs;
  double density = 0.0;
  double transitivity = 0.0;
};

// First episode whose trailing mean (window 10, shorter at the start)
// reaches 0.9 x final performance, final being the last-10 mean. Returns
// the episode count when never reached.
int episodes_to_90(const std::vector<double>& rewards, int window = 10);

double auc(const std::vector<double>& rewards);

// Shannon entropy (bits) of the empirical usage distribution.
double vocabulary_entropy(const std::vector<long long>& usage_counts);

// Entropy against a naive 8-bit code.
double compression_ratio(double entropy_bits);

// Mean prefix similarity of symbol texts (owner prefix stripped) between
// concept pairs sharing a component, minus the same over pairs sharing
// none, clamped to [0, 1]. Zero is chance level by construction; strategy
// markers are excluded.
double compositionality(
    const std::vector<std::pair<Concept, Symbol>>& entries);

struct StabilityResult {
  double phi_before = 0.0;
  double phi_after = 0.0;
  double stability = 0.0;
};

// Pools the 5 episodes before and after each change that has full windows
// on both sides. Absent when no change qualifies.
std::optional<StabilityResult> stability(
    const std::vector<double>& phi_series,
    const std::vector<int>& change_episodes);

// Fraction of adoption events whose learner did strictly better the next
// episode; events with no next episode are excluded.
double teaching_effectiveness(const std::vector<AdoptionEvent>& events);

std::vector<std::pair<double, double>> trust_performance_pairs(
    const std::vector<AdoptionEvent>& events);

// Fraction of the 3 x M x 3 line-concept space present per vocabulary,
// averaged over agents.
double concept_coverage(const RunRecord& record);

MetricsReport compute_report(const RunRecord& record);

double final_performance(const RunRecord& record, int window = 10);

}  // namespace tslec

#endif  // TSLEC_METRICS_HPP_
