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

#ifndef TSLEC_ENV_HPP_
#define TSLEC_ENV_HPP_

#include <optional>
#include <string>
#include <vector>

#include "tslec/config.hpp"
#include "tslec/lexicon.hpp"
#include "tslec/rng.hpp"

namespace tslec {

struct PoolState {
  std::vector<int> remaining;
  int round = 1;
};

enum class ChangeKind : int { kValueShift = 0, kScarcity = 1, kAbundance = 2 };

const char* change_kind_name(ChangeKind kind);

struct ChangeEvent {
  ChangeKind kind = ChangeKind::kValueShift;
  int item = 0;
  int new_value = 0;  // kValueShift only
};

struct ProposalLine {
  Intent intent = Intent::kDemand;
  int item = 0;
  int qty = 1;
};

struct Proposal {
  int proposer = 0;
  std::vector<ProposalLine> lines;
};

// One per-round entry to the allocator: the true proposal plus what each
// potential scorer managed to decode of it. decoded_lines[j] holds the
// lines agent j understood; scorers see only those.
struct ScoredProposal {
  Proposal proposal;
  std::vector<std::vector<ProposalLine>> decoded_lines;
};

struct AllocationResult {
  std::vector<std::vector<int>> allocations;  // [agent][item]
  int winner = -1;                            // -1 when no proposals
  std::vector<double> scores;                 // total peer score per proposal
};

PoolState reset_episode(const std::vector<int>& quantities);

// A change fires iff episode is a multiple of the interval. Consumes
// randomness only when it fires, so off episodes leave the stream intact.
std::optional<ChangeEvent> sample_change(int episode, const EnvConfig& config,
                                         Pcg32& rng);

// Scarcity halves the base quantity (ceiling), abundance doubles it. Value
// shifts leave quantities alone; goals react in the adaptation phase.
void apply_change(std::vector<int>& quantities, const ChangeEvent& event);

long long utility(const std::vector<int>& goals,
                  const std::vector<int>& allocation);

// Scoring: each agent rates every other agent's decoded proposal as
// sum(OFFER: goal * qty) - sum(DEMAND: goal * min(qty, remaining))
// - 0.5 * sum(REQUEST: goal * min(qty, remaining)); highest total peer
// score wins, ties to the lowest proposer index. With communication off no
// mutual evaluation happens and a uniformly random proposal executes.
//
// Execution:
//   The winner's DEMAND lines yield min(qty, remaining) unless another
//     proposal this round also demands the item, in which case the
//     contested line yields 0. With communication on they also require
//     the winning proposal's peer score to be positive; an unendorsed
//     winner takes nothing. Without communication no endorsement exists
//     and the drawn winner's demands always stand.
//   An OFFER line on a positively scored proposal is a pledge: it marks
//     the proposer as giving this round. Offers on proposals nobody
//     endorsed lapse unheard.
//   REQUEST lines execute, at min(qty, remaining), for every positively
//     scored proposal whose proposer has at least two pledging peers this
//     round, lowest proposer index first. Taking pays only where giving
//     is the norm, so requesters in a grabbing crowd get nothing.
// Every executed line draws from the pool, so conservation holds exactly.
AllocationResult evaluate_and_allocate(const std::vector<ScoredProposal>& proposals,
                                       PoolState& pool,
                                       const std::vector<std::vector<int>>& goals,
                                       bool comm_enabled, Pcg32& rng);

}  // namespace tslec

#endif  // TSLEC_ENV_HPP_
