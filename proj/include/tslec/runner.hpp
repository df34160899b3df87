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

#ifndef TSLEC_RUNNER_HPP_
#define TSLEC_RUNNER_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tslec/config.hpp"
#include "tslec/metrics.hpp"

namespace tslec {

struct Condition {
  std::string name;
  bool teaching = false;
  bool adaptation = false;
  bool communication = false;
  bool random_trust = false;
};

// full, no_teaching, no_adaptation, independent_ql (the ablation matrix).
std::vector<Condition> core_conditions();

// full with the trust gates replaced by fair coins; taus still update so
// the trust-vs-improvement correlation can be read off ungated adoptions.
Condition random_trust_condition();

// Case-insensitive; accepts the names above.
std::optional<Condition> condition_by_name(const std::string& name);

struct SweepConfig {
  std::vector<Condition> conditions;
  int seeds = 30;
  std::uint64_t base_seed = 42;
  SimParams params;
  int jobs = 0;  // 0 = hardware concurrency
};

// One full simulation. Deterministic: the record is a pure function of
// (condition, seed, params).
RunRecord run_simulation(const Condition& condition, std::uint64_t seed,
                         const SimParams& params);

// Seed index k runs every condition with run seed base_seed ^ k, so
// conditions see identical random streams and differ only by their flags.
// Runs execute in parallel; output order is (condition, seed) regardless.
std::vector<RunRecord> run_sweep(const SweepConfig& config);

// Table-shaped per-condition aggregates plus the cross-condition tests.
nlohmann::json summarize(const std::vector<RunRecord>& records);

}  // namespace tslec

#endif  // TSLEC_RUNNER_HPP_
