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

#include "tslec/env.hpp"

#include <algorithm>
#include <stdexcept>

namespace tslec {

const char* change_kind_name(ChangeKind kind) {
  switch (kind) {
    case ChangeKind::kValueShift:
      return "VALUE_SHIFT";
    case ChangeKind::kScarcity:
      return "SCARCITY";
    case ChangeKind::kAbundance:
      return "ABUNDANCE";
  }
  return "?";
}

PoolState reset_episode(const std::vector<int>& quantities) {
  return PoolState{quantities, 1};
}

std::optional<ChangeEvent> sample_change(int episode, const EnvConfig& config,
                                         Pcg32& rng) {
  if (episode % config.change_interval != 0) return std::nullopt;
  ChangeEvent ev;
  ev.kind = static_cast<ChangeKind>(rng.uniform_below(3));
  ev.item = static_cast<int>(rng.uniform_below(
      static_cast<std::uint32_t>(config.n_items)));
  if (ev.kind == ChangeKind::kValueShift)
    ev.new_value = rng.uniform_int(config.shift_value_min,
                                   config.shift_value_max);
  return ev;
}

void apply_change(std::vector<int>& quantities, const ChangeEvent& event) {
  switch (event.kind) {
    case ChangeKind::kScarcity:
      quantities[event.item] = (quantities[event.item] + 1) / 2;
      break;
    case ChangeKind::kAbundance:
      quantities[event.item] *= 2;
      break;
    case ChangeKind::kValueShift:
      break;
  }
}

long long utility(const std::vector<int>& goals,
                  const std::vector<int>& allocation) {
  if (goals.size() != allocation.size())
    throw std::invalid_argument("utility: goals/allocation length mismatch");
  long long u = 0;
  for (size_t j = 0; j < goals.size(); ++j)
    u += static_cast<long long>(goals[j]) * allocation[j];
  return u;
}

namespace {

double score_lines(const std::vector<ProposalLine>& lines,
                   const std::vector<int>& scorer_goals,
                   const std::vector<int>& remaining) {
  double score = 0.0;
  for (const ProposalLine& line : lines) {
    double g = scorer_goals[line.item];
    switch (line.intent) {
      case Intent::kOffer:
        score += g * line.qty;
        break;
      case Intent::kDemand:
        score -= g * std::min(line.qty, remaining[line.item]);
        break;
      case Intent::kRequest:
        score -= 0.5 * g * std::min(line.qty, remaining[line.item]);
        break;
    }
  }
  return score;
}

bool demand_contested(const std::vector<ScoredProposal>& proposals,
                      int proposer, int item) {
  for (const ScoredProposal& sp : proposals) {
    if (sp.proposal.proposer == proposer) continue;
    for (const ProposalLine& line : sp.proposal.lines)
      if (line.intent == Intent::kDemand && line.item == item) return true;
  }
  return false;
}

}  // namespace

AllocationResult evaluate_and_allocate(
    const std::vector<ScoredProposal>& proposals, PoolState& pool,
    const std::vector<std::vector<int>>& goals, bool comm_enabled,
    Pcg32& rng) {
  int n_agents = static_cast<int>(goals.size());
  int n_items = static_cast<int>(pool.remaining.size());
  AllocationResult result;
  result.allocations.assign(n_agents, std::vector<int>(n_items, 0));
  result.scores.assign(proposals.size(), 0.0);
  if (proposals.empty()) return result;

  int winner_idx = 0;
  if (comm_enabled) {
    for (size_t p = 0; p < proposals.size(); ++p) {
      double total = 0.0;
      for (int j = 0; j < n_agents; ++j) {
        if (j == proposals[p].proposal.proposer) continue;
        total += score_lines(proposals[p].decoded_lines[j], goals[j],
                             pool.remaining);
      }
      result.scores[p] = total;
    }
    for (size_t p = 1; p < proposals.size(); ++p) {
      bool better = result.scores[p] > result.scores[winner_idx] ||
                    (result.scores[p] == result.scores[winner_idx] &&
                     proposals[p].proposal.proposer <
                         proposals[winner_idx].proposal.proposer);
      if (better) winner_idx = static_cast<int>(p);
    }
  } else {
    winner_idx = static_cast<int>(
        rng.uniform_below(static_cast<std::uint32_t>(proposals.size())));
  }

  const Proposal& win = proposals[winner_idx].proposal;
  result.winner = win.proposer;

  // Winner privilege first: demand lines execute unless another proposal
  // demands the same item this round (a standoff burns the claim). With
  // communication on, the group executes the winner's demands only when it
  // endorses the proposal; without communication no endorsement exists and
  // the drawn winner's demands stand.
  bool winner_endorsed = !comm_enabled || result.scores[winner_idx] > 0.0;
  if (winner_endorsed) {
    for (const ProposalLine& line : win.lines) {
      if (line.intent != Intent::kDemand) continue;
      if (demand_contested(proposals, win.proposer, line.item)) continue;
      int take = std::min(line.qty, pool.remaining[line.item]);
      if (take <= 0) continue;
      result.allocations[win.proposer][line.item] += take;
      pool.remaining[line.item] -= take;
    }
  }

  // Consent economy: an endorsed offer is a pledge of giving. Offers on
  // proposals nobody endorsed lapse unheard.
  std::vector<bool> pledged(n_agents, false);
  for (size_t p = 0; p < proposals.size(); ++p) {
    if (!(result.scores[p] > 0.0)) continue;
    for (const ProposalLine& line : proposals[p].proposal.lines)
      if (line.intent == Intent::kOffer)
        pledged[proposals[p].proposal.proposer] = true;
  }

  // Requests fill from the pool for every endorsed proposal, but only
  // when at least two other agents are pledging this round. Taking pays
  // only where giving is the norm, so requesters in a grabbing crowd get
  // nothing.
  for (size_t p = 0; p < proposals.size(); ++p) {
    if (!(result.scores[p] > 0.0)) continue;
    int proposer = proposals[p].proposal.proposer;
    int givers = 0;
    for (int j = 0; j < n_agents; ++j)
      if (j != proposer && pledged[j]) ++givers;
    if (givers < 2) continue;
    for (const ProposalLine& line : proposals[p].proposal.lines) {
      if (line.intent != Intent::kRequest) continue;
      int take = std::min(line.qty, pool.remaining[line.item]);
      if (take <= 0) continue;
      result.allocations[proposer][line.item] += take;
      pool.remaining[line.item] -= take;
    }
  }
  return result;
}

}  // namespace tslec
