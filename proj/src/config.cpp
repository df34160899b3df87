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

#include "tslec/config.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace tslec {
namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

int parse_int(const std::string& key, const std::string& value) {
  size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(value, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error("config key '" + key + "': not an integer: '" +
                             value + "'");
  }
  if (pos != value.size())
    throw std::runtime_error("config key '" + key + "': not an integer: '" +
                             value + "'");
  return v;
}

double parse_double(const std::string& key, const std::string& value) {
  size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error("config key '" + key + "': not a number: '" +
                             value + "'");
  }
  if (pos != value.size())
    throw std::runtime_error("config key '" + key + "': not a number: '" +
                             value + "'");
  return v;
}

std::vector<int> parse_int_list(const std::string& key,
                                const std::string& value) {
  std::vector<int> out;
  std::stringstream ss(value);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(parse_int(key, trim(part)));
  if (out.empty())
    throw std::runtime_error("config key '" + key + "': empty list");
  return out;
}

std::string format_int_list(const std::vector<int>& xs) {
  std::string out;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(xs[i]);
  }
  return out;
}

std::string format_double(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

void apply_override(SimParams& p, const std::string& key,
                    const std::string& value) {
  if (key == "n_agents")
    p.env.n_agents = parse_int(key, value);
  else if (key == "n_items")
    p.env.n_items = parse_int(key, value);
  else if (key == "quantities")
    p.env.quantities = parse_int_list(key, value);
  else if (key == "rounds_per_episode")
    p.env.rounds_per_episode = parse_int(key, value);
  else if (key == "episodes")
    p.env.episodes = parse_int(key, value);
  else if (key == "change_interval")
    p.env.change_interval = parse_int(key, value);
  else if (key == "goal_value_min")
    p.env.goal_value_min = parse_int(key, value);
  else if (key == "goal_value_max")
    p.env.goal_value_max = parse_int(key, value);
  else if (key == "shift_value_min")
    p.env.shift_value_min = parse_int(key, value);
  else if (key == "shift_value_max")
    p.env.shift_value_max = parse_int(key, value);
  else if (key == "alpha")
    p.learning.alpha = parse_double(key, value);
  else if (key == "gamma")
    p.learning.gamma = parse_double(key, value);
  else if (key == "epsilon_start")
    p.learning.epsilon_start = parse_double(key, value);
  else if (key == "epsilon_end")
    p.learning.epsilon_end = parse_double(key, value);
  else if (key == "epsilon_decay_episodes")
    p.learning.epsilon_decay_episodes = parse_int(key, value);
  else if (key == "q_max")
    p.learning.q_max = parse_double(key, value);
  else if (key == "beta_pos")
    p.trust.beta_pos = parse_double(key, value);
  else if (key == "beta_neg")
    p.trust.beta_neg = parse_double(key, value);
  else if (key == "tau_init")
    p.trust.tau_init = parse_double(key, value);
  else if (key == "adopt_threshold")
    p.trust.adopt_threshold = parse_double(key, value);
  else if (key == "trust_window")
    p.trust.window = parse_int(key, value);
  else if (key == "lambda_env")
    p.adaptation.lambda_env = parse_double(key, value);
  else if (key == "lambda_peer")
    p.adaptation.lambda_peer = parse_double(key, value);
  else if (key == "peer_threshold")
    p.adaptation.peer_threshold = parse_double(key, value);
  else
    throw std::runtime_error("unknown config key: '" + key + "'");
}

void apply_config_text(SimParams& params, const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected 'key = value'");
    apply_override(params, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void apply_config_file(SimParams& params, const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  apply_config_text(params, buf.str());
}

std::vector<std::string> validate(const SimParams& p) {
  std::vector<std::string> errs;
  auto req = [&](bool ok, const std::string& msg) {
    if (!ok) errs.push_back(msg);
  };
  req(p.env.n_agents >= 2 && p.env.n_agents <= 10,
      "n_agents must be in [2, 10] (symbol texts carry one decimal owner "
      "digit)");
  req(p.env.n_items >= 1, "n_items must be >= 1");
  req(static_cast<int>(p.env.quantities.size()) == p.env.n_items,
      "quantities length must equal n_items");
  for (int q : p.env.quantities) req(q >= 1, "quantities entries must be >= 1");
  req(p.env.rounds_per_episode >= 1, "rounds_per_episode must be >= 1");
  req(p.env.episodes >= 1, "episodes must be >= 1");
  req(p.env.change_interval >= 1, "change_interval must be >= 1");
  req(p.env.goal_value_min >= 1 && p.env.goal_value_max >= p.env.goal_value_min,
      "goal value range must be a nonempty range of positive integers");
  req(p.env.shift_value_max >= p.env.shift_value_min,
      "shift value range must be nonempty");
  req(p.learning.alpha > 0 && p.learning.alpha <= 1,
      "alpha must be in (0, 1]");
  req(p.learning.gamma >= 0 && p.learning.gamma < 1,
      "gamma must be in [0, 1)");
  req(p.learning.epsilon_end >= 0 &&
          p.learning.epsilon_start >= p.learning.epsilon_end &&
          p.learning.epsilon_start <= 1,
      "need 0 <= epsilon_end <= epsilon_start <= 1");
  req(p.learning.epsilon_decay_episodes >= 1,
      "epsilon_decay_episodes must be >= 1");
  req(p.learning.q_max > 0, "q_max must be positive");
  req(p.trust.beta_pos > p.trust.beta_neg && p.trust.beta_neg > 0,
      "need beta_pos > beta_neg > 0");
  req(p.trust.tau_init >= 0 && p.trust.tau_init <= 1,
      "tau_init must be in [0, 1]");
  req(p.trust.adopt_threshold > 0 && p.trust.adopt_threshold < 1,
      "adopt_threshold must be in (0, 1)");
  req(p.trust.window >= 1, "trust_window must be >= 1");
  req(p.adaptation.lambda_env > 0 && p.adaptation.lambda_env <= 1,
      "lambda_env must be in (0, 1]");
  req(p.adaptation.lambda_peer > 0 && p.adaptation.lambda_peer <= 1,
      "lambda_peer must be in (0, 1]");
  req(p.adaptation.peer_threshold > 1, "peer_threshold must be > 1");
  return errs;
}

std::map<std::string, std::string> config_entries(const SimParams& p) {
  return {
      {"n_agents", std::to_string(p.env.n_agents)},
      {"n_items", std::to_string(p.env.n_items)},
      {"quantities", format_int_list(p.env.quantities)},
      {"rounds_per_episode", std::to_string(p.env.rounds_per_episode)},
      {"episodes", std::to_string(p.env.episodes)},
      {"change_interval", std::to_string(p.env.change_interval)},
      {"goal_value_min", std::to_string(p.env.goal_value_min)},
      {"goal_value_max", std::to_string(p.env.goal_value_max)},
      {"shift_value_min", std::to_string(p.env.shift_value_min)},
      {"shift_value_max", std::to_string(p.env.shift_value_max)},
      {"alpha", format_double(p.learning.alpha)},
      {"gamma", format_double(p.learning.gamma)},
      {"epsilon_start", format_double(p.learning.epsilon_start)},
      {"epsilon_end", format_double(p.learning.epsilon_end)},
      {"epsilon_decay_episodes",
       std::to_string(p.learning.epsilon_decay_episodes)},
      {"q_max", format_double(p.learning.q_max)},
      {"beta_pos", format_double(p.trust.beta_pos)},
      {"beta_neg", format_double(p.trust.beta_neg)},
      {"tau_init", format_double(p.trust.tau_init)},
      {"adopt_threshold", format_double(p.trust.adopt_threshold)},
      {"trust_window", std::to_string(p.trust.window)},
      {"lambda_env", format_double(p.adaptation.lambda_env)},
      {"lambda_peer", format_double(p.adaptation.lambda_peer)},
      {"peer_threshold", format_double(p.adaptation.peer_threshold)},
  };
}

}  // namespace tslec
