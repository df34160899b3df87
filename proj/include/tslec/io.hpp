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

#ifndef TSLEC_IO_HPP_
#define TSLEC_IO_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "tslec/metrics.hpp"

namespace tslec {

// File-name stem shared by all files of one run: "<condition>_<seed>".
std::string run_stem(const RunRecord& record);

nlohmann::json run_to_json(const RunRecord& record);
RunRecord run_from_json(const nlohmann::json& doc);

// Writes <stem>_episodes.csv, <stem>_events.csv, <stem>_vocab.tsv and
// <stem>_run.json into dir, creating it if needed.
void write_run_files(const std::filesystem::path& dir,
                     const RunRecord& record);

// Loads every *_run.json under dir (non-recursive), sorted by file name.
std::vector<RunRecord> load_runs(const std::filesystem::path& dir);

void write_json(const std::filesystem::path& file, const nlohmann::json& doc);
nlohmann::json read_json(const std::filesystem::path& file);

// Per-run recomputed metrics, no simulation.
nlohmann::json report_json(const std::vector<RunRecord>& records);

// Emits learning_curves.csv, vocab_growth.csv, compositionality.csv,
// trust.csv, performance_box.csv, ablation_bars.csv, efficiency_matrix.csv.
void write_plot_csvs(const std::filesystem::path& dir,
                     const std::vector<RunRecord>& records);

}  // namespace tslec

#endif  // TSLEC_IO_HPP_
