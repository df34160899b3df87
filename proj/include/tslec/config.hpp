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

#ifndef TSLEC_CONFIG_HPP_
#define TSLEC_CONFIG_HPP_

#include <map>
#include <string>
#include <vector>

namespace tslec {

struct EnvConfig {
  int n_agents = 4;
  int n_items = 5;
  std::vector<int> quantities = {4, 3, 2, 3, 2};
  int rounds_per_episode = 3;
  int episodes = 100;
  int change_interval = 25;
  int goal_value_min = 1;
  int goal_value_max = 6;
  int shift_value_min = 7;
  int shift_value_max = 10;
};

struct LearningParams {
  double alpha = 0.143;
  double gamma = 0.9;
  double epsilon_start = 0.3;
  double epsilon_end = 0.05;
  int epsilon_decay_episodes = 60;
  double q_max = 30.0;
};

struct TrustParams {
  double beta_pos = 0.1;
  double beta_neg = 0.05;
  double tau_init = 0.5;
  double adopt_threshold = 0.7;
  int window = 5;
};

struct AdaptationParams {
  double lambda_env = 0.7;
  double lambda_peer = 0.8;
  double peer_threshold = 1.5;
};

struct SimParams {
  EnvConfig env;
  LearningParams learning;
  TrustParams trust;
  AdaptationParams adaptation;
};

// Violated-constraint descriptions; empty means valid.
std::vector<std::string> validate(const SimParams& params);

// "key = value" lines, '#' comments, blank lines ignored. Unknown keys and
// unparseable values throw std::runtime_error.
void apply_config_text(SimParams& params, const std::string& text);
void apply_config_file(SimParams& params, const std::string& path);
void apply_override(SimParams& params, const std::string& key,
                    const std::string& value);

// Every recognized key with its current value, in key order.
std::map<std::string, std::string> config_entries(const SimParams& params);

}  // namespace tslec

#endif  // TSLEC_CONFIG_HPP_
