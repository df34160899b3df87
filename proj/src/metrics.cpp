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

#include "tslec/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace tslec {
namespace {

double tail_mean(const std::vector<double>& xs, int window) {
  if (xs.empty()) return 0.0;
  size_t n = std::min<size_t>(window, xs.size());
  double s = 0.0;
  for (size_t i = xs.size() - n; i < xs.size(); ++i) s += xs[i];
  return s / n;
}

}  // namespace

int episodes_to_90(const std::vector<double>& rewards, int window) {
  int n = static_cast<int>(rewards.size());
  if (n == 0) return 0;
  double threshold = 0.9 * tail_mean(rewards, window);
  double running = 0.0;
  for (int i = 0; i < n; ++i) {
    running += rewards[i];
    if (i >= window) running -= rewards[i - window];
    double tm = running / std::min(i + 1, window);
    if (tm >= threshold) return i + 1;
  }
  return n;
}

double auc(const std::vector<double>& rewards) {
  double s = 0.0;
  for (double r : rewards) s += r;
  return s;
}

double vocabulary_entropy(const std::vector<long long>& usage_counts) {
  long long total = 0;
  for (long long c : usage_counts) total += c;
  if (total <= 0) return 0.0;
  double h = 0.0;
  for (long long c : usage_counts) {
    if (c <= 0) continue;
    double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

double compression_ratio(double entropy_bits) { return entropy_bits / 8.0; }

namespace {

std::string counter_hex(const Symbol& s) {
  std::string text = s.text();
  // Strip "@" and the decimal owner digit.
  return text.substr(2);
}

double prefix_similarity(const std::string& a, const std::string& b) {
  size_t lcp = 0;
  size_t limit = std::min(a.size(), b.size());
  while (lcp < limit && a[lcp] == b[lcp]) ++lcp;
  return static_cast<double>(lcp) / std::max(a.size(), b.size());
}

bool shares_component(const Concept& a, const Concept& b) {
  return a.intent == b.intent || a.item == b.item || a.qty == b.qty;
}

}  // namespace

double compositionality(
    const std::vector<std::pair<Concept, Symbol>>& entries) {
  std::vector<std::pair<Concept, std::string>> lines;
  for (const auto& [meaning, symbol] : entries)
    if (meaning.kind == Concept::Kind::kLine)
      lines.emplace_back(meaning, counter_hex(symbol));

  double shared_sum = 0.0, other_sum = 0.0;
  long long shared_n = 0, other_n = 0;
  for (size_t i = 0; i < lines.size(); ++i) {
    for (size_t j = i + 1; j < lines.size(); ++j) {
      double sim = prefix_similarity(lines[i].second, lines[j].second);
      if (shares_component(lines[i].first, lines[j].first)) {
        shared_sum += sim;
        ++shared_n;
      } else {
        other_sum += sim;
        ++other_n;
      }
    }
  }
  if (shared_n == 0 || other_n == 0) return 0.0;
  double score = shared_sum / shared_n - other_sum / other_n;
  return std::min(1.0, std::max(0.0, score));
}

std::optional<StabilityResult> stability(
    const std::vector<double>& phi_series,
    const std::vector<int>& change_episodes) {
  int n = static_cast<int>(phi_series.size());
  double before_sum = 0.0, after_sum = 0.0;
  int before_n = 0, after_n = 0;
  for (int c : change_episodes) {
    // Change applies at the start of episode c: before is c-5..c-1,
    // after is c..c+4, both required in full.
    if (c - 5 < 1 || c + 4 > n) continue;
    for (int e = c - 5; e <= c - 1; ++e) {
      before_sum += phi_series[e - 1];
      ++before_n;
    }
    for (int e = c; e <= c + 4; ++e) {
      after_sum += phi_series[e - 1];
      ++after_n;
    }
  }
  if (before_n == 0) return std::nullopt;
  StabilityResult r;
  r.phi_before = before_sum / before_n;
  r.phi_after = after_sum / after_n;
  r.stability = r.phi_before == 0.0 ? 0.0 : r.phi_after / r.phi_before;
  return r;
}

double teaching_effectiveness(const std::vector<AdoptionEvent>& events) {
  long long improved = 0, counted = 0;
  for (const AdoptionEvent& e : events) {
    if (!e.learner_reward_after) continue;
    ++counted;
    if (*e.learner_reward_after > e.learner_reward_before) ++improved;
  }
  if (counted == 0) return 0.0;
  return static_cast<double>(improved) / static_cast<double>(counted);
}

std::vector<std::pair<double, double>> trust_performance_pairs(
    const std::vector<AdoptionEvent>& events) {
  std::vector<std::pair<double, double>> pairs;
  for (const AdoptionEvent& e : events) {
    if (!e.learner_reward_after) continue;
    pairs.emplace_back(e.tau_at_adoption,
                       *e.learner_reward_after - e.learner_reward_before);
  }
  return pairs;
}

double concept_coverage(const RunRecord& record) {
  int space = 9 * record.params.env.n_items;
  if (space == 0 || record.vocab_entries.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& entries : record.vocab_entries) {
    int lines = 0;
    for (const auto& [meaning, symbol] : entries)
      if (meaning.kind == Concept::Kind::kLine) ++lines;
    sum += static_cast<double>(lines) / space;
  }
  return sum / record.vocab_entries.size();
}

double final_performance(const RunRecord& record, int window) {
  std::vector<double> means;
  means.reserve(record.episodes.size());
  for (const auto& er : record.episodes) means.push_back(er.reward_mean);
  return tail_mean(means, window);
}

MetricsReport compute_report(const RunRecord& record) {
  MetricsReport rep;
  int n_agents = record.params.env.n_agents;

  std::vector<double> rewards, phi;
  std::vector<int> change_episodes;
  rewards.reserve(record.episodes.size());
  for (const auto& er : record.episodes) {
    rewards.push_back(er.reward_mean);
    phi.push_back(er.phi_mean);
    if (er.change) change_episodes.push_back(er.episode);
  }

  rep.e90 = episodes_to_90(rewards);
  rep.auc = auc(rewards);

  for (int i = 0; i < n_agents; ++i) {
    const auto& entries = record.vocab_entries[i];
    rep.vocab_size.push_back(static_cast<int>(entries.size()));
    rep.compositionality.push_back(compositionality(entries));
    std::vector<long long> counts;
    counts.reserve(record.usage[i].size());
    for (const auto& [symbol, count] : record.usage[i])
      counts.push_back(count);
    double h = vocabulary_entropy(counts);
    rep.entropy_bits.push_back(h);
    rep.compression.push_back(compression_ratio(h));
  }
  rep.coverage = concept_coverage(record);

  if (auto st = stability(phi, change_episodes)) {
    rep.phi_before = st->phi_before;
    rep.phi_after = st->phi_after;
    rep.stability = st->stability;
  }

  rep.eta_teach = teaching_effectiveness(record.events);
  rep.trust_perf_pairs = trust_performance_pairs(record.events);

  if (!record.episodes.empty()) {
    const EpisodeRecord& last = record.episodes.back();
    TrustMatrix trust(n_agents, 0.0);
    for (int i = 0; i < n_agents; ++i)
      for (int j = 0; j < n_agents; ++j)
        trust.set(i, j, last.trust[static_cast<size_t>(i) * n_agents + j]);
    double threshold = record.params.trust.adopt_threshold;
    rep.density = network_density(trust, threshold);
    rep.transitivity = network_transitivity(trust, threshold);
  }
  return rep;
}

}  // namespace tslec
