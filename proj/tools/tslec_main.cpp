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

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tslec/io.hpp"
#include "tslec/runner.hpp"

namespace {

struct CommonArgs {
  std::string out_dir = "./out";
  std::string config_path;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, CommonArgs* args) {
  cmd->add_option("--out-dir", args->out_dir, "Output directory")
      ->envname("TSLEC_OUT_DIR")
      ->capture_default_str();
  cmd->add_option("--config", args->config_path,
                  "Config file of key = value lines");
  cmd->add_option("--set", args->overrides,
                  "Parameter override key=value (repeatable)")
      ->type_size(1);
}

tslec::SimParams make_params(const CommonArgs& args,
                             std::optional<int> episodes) {
  tslec::SimParams params;
  if (!args.config_path.empty())
    tslec::apply_config_file(params, args.config_path);
  for (const std::string& kv : args.overrides) {
    size_t eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--set expects key=value, got: " + kv);
    tslec::apply_override(params, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (episodes) params.env.episodes = *episodes;
  auto errors = tslec::validate(params);
  if (!errors.empty()) throw std::invalid_argument(errors.front());
  return params;
}

std::string short3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

int cmd_run(const CommonArgs& common, const std::string& condition_name,
            std::uint64_t seed, std::optional<int> episodes) {
  auto condition = tslec::condition_by_name(condition_name);
  if (!condition)
    throw std::invalid_argument("unknown condition: " + condition_name);
  tslec::SimParams params = make_params(common, episodes);
  tslec::RunRecord record = tslec::run_simulation(*condition, seed, params);
  tslec::write_run_files(common.out_dir, record);

  const tslec::EpisodeRecord& last = record.episodes.back();
  double vocab_mean = 0.0;
  for (int v : last.vocab_sizes) vocab_mean += v;
  if (!last.vocab_sizes.empty()) vocab_mean /= last.vocab_sizes.size();
  std::cout << record.condition << " seed=" << record.seed
            << " final=" << short3(tslec::final_performance(record))
            << " vocab=" << short3(vocab_mean)
            << " trust=" << short3(last.trust_mean)
            << " phi=" << short3(last.phi_mean)
            << " events=" << record.events.size() << " -> " << common.out_dir
            << "\n";
  return 0;
}

int cmd_sweep(const CommonArgs& common, int seeds, std::uint64_t base_seed,
              int jobs, bool random_trust, std::optional<int> episodes) {
  tslec::SweepConfig config;
  config.conditions = tslec::core_conditions();
  if (random_trust)
    config.conditions.push_back(tslec::random_trust_condition());
  config.seeds = seeds;
  config.base_seed = base_seed;
  config.jobs = jobs;
  config.params = make_params(common, episodes);

  std::vector<tslec::RunRecord> records = tslec::run_sweep(config);
  for (const tslec::RunRecord& record : records)
    tslec::write_run_files(common.out_dir, record);
  nlohmann::json summary = tslec::summarize(records);
  tslec::write_json(std::filesystem::path(common.out_dir) / "summary.json",
                    summary);

  for (const auto& row : summary.at("conditions")) {
    std::cout << row.at("name").get<std::string>()
              << ": final=" << short3(row.at("final").at("mean").get<double>())
              << " (sd " << short3(row.at("final").at("std").get<double>())
              << ") e90=" << short3(row.at("e90").at("mean").get<double>())
              << " events=" << row.at("adoption_events").get<long long>()
              << "\n";
  }
  std::cout << records.size() << " runs + summary.json -> " << common.out_dir
            << "\n";
  return 0;
}

int cmd_report(const CommonArgs& common) {
  std::vector<tslec::RunRecord> records = tslec::load_runs(common.out_dir);
  if (records.empty())
    throw std::runtime_error("no run records in " + common.out_dir);
  tslec::write_json(std::filesystem::path(common.out_dir) / "report.json",
                    tslec::report_json(records));
  std::cout << "report.json over " << records.size() << " runs -> "
            << common.out_dir << "\n";
  return 0;
}

int cmd_plots(const CommonArgs& common) {
  std::vector<tslec::RunRecord> records = tslec::load_runs(common.out_dir);
  if (records.empty())
    throw std::runtime_error("no run records in " + common.out_dir);
  tslec::write_plot_csvs(common.out_dir, records);
  std::cout << "7 plot csv files over " << records.size() << " runs -> "
            << common.out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic negotiation simulator with emergent "
               "vocabularies, trust-gated teaching and goal adaptation"};
  app.require_subcommand(1);

  CommonArgs run_args, sweep_args, report_args, plots_args;

  CLI::App* run = app.add_subcommand("run", "Execute one (condition, seed)");
  add_common(run, &run_args);
  std::string condition = "full";
  std::uint64_t seed = 42;
  int run_episodes = 0;
  run->add_option("--condition", condition, "Condition name")
      ->capture_default_str();
  run->add_option("--seed", seed, "Run seed")->capture_default_str();
  run->add_option("--episodes", run_episodes, "Override episode count");

  CLI::App* sweep =
      app.add_subcommand("sweep", "Run all conditions over many seeds");
  add_common(sweep, &sweep_args);
  int seeds = 30, jobs = 0, sweep_episodes = 0;
  std::uint64_t base_seed = 42;
  bool random_trust = false;
  sweep->add_option("--seeds", seeds, "Seeds per condition")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep->add_option("--base-seed", base_seed, "Base seed; run k uses base^k")
      ->capture_default_str();
  sweep->add_option("--jobs", jobs, "Worker threads, 0 = hardware")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sweep->add_flag("--random-trust", random_trust,
                  "Include the random-trust baseline condition");
  sweep->add_option("--episodes", sweep_episodes, "Override episode count");

  CLI::App* report = app.add_subcommand(
      "report", "Recompute metrics from stored records, no simulation");
  add_common(report, &report_args);

  CLI::App* plots =
      app.add_subcommand("plots", "Emit plot-ready csv files from records");
  add_common(plots, &plots_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed())
      return cmd_run(run_args, condition, seed,
                     run->count("--episodes")
                         ? std::optional<int>(run_episodes)
                         : std::nullopt);
    if (sweep->parsed())
      return cmd_sweep(sweep_args, seeds, base_seed, jobs, random_trust,
                       sweep->count("--episodes")
                           ? std::optional<int>(sweep_episodes)
                           : std::nullopt);
    if (report->parsed()) return cmd_report(report_args);
    if (plots->parsed()) return cmd_plots(plots_args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
