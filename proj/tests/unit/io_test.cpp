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

#include "tslec/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "tslec/runner.hpp"

namespace tslec {
namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() / ("tslec_test_" + tag)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

long long line_count(const std::string& text) {
  long long n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

std::string first_line(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

RunRecord short_run(const std::string& condition, std::uint64_t seed) {
  SimParams params;
  params.env.episodes = 12;
  auto c = condition_by_name(condition);
  REQUIRE(c.has_value());
  return run_simulation(*c, seed, params);
}

TEST_SUITE("io") {

TEST_CASE("run stems combine condition and seed") {
  RunRecord r;
  r.condition = "full";
  r.seed = 42;
  CHECK(run_stem(r) == "full_42");
}

TEST_CASE("runs survive a json round trip unchanged") {
  RunRecord run = short_run("full", 9);
  nlohmann::json doc = run_to_json(run);
  CHECK(doc["schema"] == "tslec-run-v1");
  RunRecord loaded = run_from_json(doc);
  CHECK(run_to_json(loaded) == doc);

  nlohmann::json bad = doc;
  bad["schema"] = "something-else";
  CHECK_THROWS_AS(run_from_json(bad), std::runtime_error);
}

TEST_CASE("per-run files carry the documented headers and row counts") {
  TempDir dir("run_files");
  RunRecord run = short_run("full", 5);
  write_run_files(dir.path, run);

  const std::string stem = run_stem(run);
  std::string episodes = slurp(dir.path / (stem + "_episodes.csv"));
  CHECK(first_line(episodes) ==
        "episode,reward_mean,vocab_mean,trust_mean,phi_mean");
  CHECK(line_count(episodes) == 1 + 12);

  std::string events = slurp(dir.path / (stem + "_events.csv"));
  CHECK(first_line(events) == "episode,learner,teacher,tau,before,after");
  CHECK(line_count(events) ==
        1 + static_cast<long long>(run.events.size()));

  std::string vocab = slurp(dir.path / (stem + "_vocab.tsv"));
  CHECK(first_line(vocab) == "owner\tsymbol\tintent\titem\tqty");
  long long entries = 0;
  for (const auto& v : run.vocab_entries)
    entries += static_cast<long long>(v.size());
  CHECK(line_count(vocab) == 1 + entries);

  RunRecord loaded = run_from_json(read_json(dir.path / (stem + "_run.json")));
  CHECK(run_to_json(loaded) == run_to_json(run));
}

TEST_CASE("loading a directory returns every run sorted by file name") {
  TempDir dir("load_runs");
  RunRecord a = short_run("independent_ql", 1);
  RunRecord b = short_run("full", 1);
  write_run_files(dir.path, a);
  write_run_files(dir.path, b);

  std::ofstream(dir.path / "notes.txt") << "ignored\n";
  std::ofstream(dir.path / "summary.json") << "{}\n";

  auto loaded = load_runs(dir.path);
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0].condition == "full");
  CHECK(loaded[1].condition == "independent_ql");
  CHECK(run_to_json(loaded[0]) == run_to_json(b));
  CHECK(run_to_json(loaded[1]) == run_to_json(a));

  CHECK_THROWS_AS(load_runs(dir.path / "missing"), std::runtime_error);
}

TEST_CASE("json files round trip through write and read") {
  TempDir dir("json_rw");
  nlohmann::json doc = {{"a", 1}, {"b", {1, 2, 3}}, {"c", "text"}};
  write_json(dir.path / "doc.json", doc);
  CHECK(read_json(dir.path / "doc.json") == doc);
  CHECK_THROWS_AS(read_json(dir.path / "absent.json"), std::runtime_error);
}

TEST_CASE("reports recompute metrics per run without simulating") {
  std::vector<RunRecord> runs = {short_run("full", 2),
                                 short_run("no_teaching", 2)};
  nlohmann::json doc = report_json(runs);
  CHECK(doc["schema"] == "tslec-report-v1");
  REQUIRE(doc["runs"].size() == 2);
  for (size_t i = 0; i < runs.size(); ++i) {
    const auto& row = doc["runs"][i];
    CHECK(row["condition"] == runs[i].condition);
    CHECK(row["seed"] == runs[i].seed);
    CHECK(row["final"].get<double>() ==
          doctest::Approx(final_performance(runs[i])));
    CHECK(row["e90"].get<int>() >= 1);
    CHECK(row["coverage"].get<double>() >= 0.0);
    CHECK(row["coverage"].get<double>() <= 1.0);
    CHECK(row["adoption_events"].get<long long>() ==
          static_cast<long long>(runs[i].events.size()));
    // 12 episodes never reach the first scheduled change.
    CHECK(row["stability"].is_null());
  }
  CHECK(doc["notes"].size() == 1);
}

TEST_CASE("plot csvs cover every figure input") {
  TempDir dir("plots");
  std::vector<RunRecord> runs = {
      short_run("full", 1), short_run("full", 2),
      short_run("independent_ql", 1), short_run("independent_ql", 2)};
  write_plot_csvs(dir.path, runs);

  std::string learning = slurp(dir.path / "learning_curves.csv");
  CHECK(first_line(learning) == "condition,episode,reward_mean,ci_low,ci_high");
  CHECK(line_count(learning) == 1 + 2 * 12);

  std::string vocab = slurp(dir.path / "vocab_growth.csv");
  CHECK(first_line(vocab) == "condition,episode,vocab_mean");
  CHECK(line_count(vocab) == 1 + 2 * 12);

  std::string trust = slurp(dir.path / "trust.csv");
  CHECK(first_line(trust) == "condition,episode,trust_mean");
  CHECK(line_count(trust) == 1 + 2 * 12);

  std::string comp = slurp(dir.path / "compositionality.csv");
  CHECK(first_line(comp) == "condition,seed,agent,compositionality");
  CHECK(line_count(comp) == 1 + 4 * 4);

  std::string box = slurp(dir.path / "performance_box.csv");
  CHECK(first_line(box) == "condition,min,q1,median,q3,max");
  CHECK(line_count(box) == 1 + 2);

  std::string bars = slurp(dir.path / "ablation_bars.csv");
  CHECK(first_line(bars) == "condition,mean,std,ci_low,ci_high");
  CHECK(line_count(bars) == 1 + 2);

  std::string efficiency = slurp(dir.path / "efficiency_matrix.csv");
  CHECK(first_line(efficiency) ==
        "condition,e90_mean,e90_std,auc_mean,auc_std");
  CHECK(line_count(efficiency) == 1 + 2);
}

}  // TEST_SUITE

}  // namespace
}  // namespace tslec
