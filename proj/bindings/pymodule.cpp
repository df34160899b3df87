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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tslec/io.hpp"
#include "tslec/runner.hpp"
#include "tslec/stats.hpp"

namespace py = pybind11;

namespace {

tslec::SimParams params_from_overrides(
    const std::map<std::string, std::string>& overrides) {
  tslec::SimParams params;
  for (const auto& [key, value] : overrides)
    tslec::apply_override(params, key, value);
  auto errors = tslec::validate(params);
  if (!errors.empty()) throw std::invalid_argument(errors.front());
  return params;
}

tslec::Condition condition_or_throw(const std::string& name) {
  auto condition = tslec::condition_by_name(name);
  if (!condition)
    throw std::invalid_argument("unknown condition: " + name);
  return *condition;
}

}  // namespace

PYBIND11_MODULE(_tslec, m) {
  m.doc() = "Deterministic negotiation simulator with emergent "
            "vocabularies, trust-gated teaching and goal adaptation";

  m.def(
      "run_json",
      [](const std::string& condition, std::uint64_t seed,
         const std::map<std::string, std::string>& overrides) {
        tslec::RunRecord record = tslec::run_simulation(
            condition_or_throw(condition), seed,
            params_from_overrides(overrides));
        return tslec::run_to_json(record).dump();
      },
      py::arg("condition"), py::arg("seed"),
      py::arg("overrides") = std::map<std::string, std::string>{},
      "One full run; returns the run record as a json string.");

  m.def(
      "sweep_summary_json",
      [](const std::vector<std::string>& conditions, int seeds,
         std::uint64_t base_seed, int jobs,
         const std::map<std::string, std::string>& overrides) {
        tslec::SweepConfig config;
        for (const std::string& name : conditions)
          config.conditions.push_back(condition_or_throw(name));
        config.seeds = seeds;
        config.base_seed = base_seed;
        config.jobs = jobs;
        config.params = params_from_overrides(overrides);
        return tslec::summarize(tslec::run_sweep(config)).dump();
      },
      py::arg("conditions"), py::arg("seeds") = 30,
      py::arg("base_seed") = 42, py::arg("jobs") = 0,
      py::arg("overrides") = std::map<std::string, std::string>{},
      "Sweep the named conditions; returns the summary as a json string.");

  m.def("condition_names", [] {
    std::vector<std::string> names;
    for (const tslec::Condition& c : tslec::core_conditions())
      names.push_back(c.name);
    names.push_back(tslec::random_trust_condition().name);
    return names;
  });

  m.def(
      "welch_t_test",
      [](const std::vector<double>& a, const std::vector<double>& b) {
        tslec::TestResult r = tslec::welch_t_test(a, b);
        return py::make_tuple(r.statistic, r.p_value);
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "cohens_d",
      [](const std::vector<double>& a, const std::vector<double>& b) {
        return tslec::cohens_d(a, b);
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "pearson_r",
      [](const std::vector<std::pair<double, double>>& pairs) {
        tslec::TestResult r = tslec::pearson_r(pairs);
        return py::make_tuple(r.statistic, r.p_value);
      },
      py::arg("pairs"));

  m.def(
      "one_way_anova",
      [](const std::vector<std::vector<double>>& groups) {
        tslec::TestResult r = tslec::one_way_anova(groups);
        return py::make_tuple(r.statistic, r.p_value);
      },
      py::arg("groups"));

  m.def(
      "chi_square_2x2",
      [](long long a, long long b, long long c, long long d) {
        tslec::TestResult r = tslec::chi_square_2x2(a, b, c, d);
        return py::make_tuple(r.statistic, r.p_value);
      },
      py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"));

  m.def("sign_test_p", &tslec::sign_test_p, py::arg("wins"), py::arg("n"));

  m.def(
      "update_trust",
      [](double tau, double teacher_reward, double learner_recent_mean,
         double beta_pos, double beta_neg) {
        tslec::TrustParams params;
        params.beta_pos = beta_pos;
        params.beta_neg = beta_neg;
        return tslec::update_trust(tau, teacher_reward, learner_recent_mean,
                                   params);
      },
      py::arg("tau"), py::arg("teacher_reward"),
      py::arg("learner_recent_mean"), py::arg("beta_pos") = 0.1,
      py::arg("beta_neg") = 0.05);

  m.def(
      "utility",
      [](const std::vector<int>& goals, const std::vector<int>& allocation) {
        return tslec::utility(goals, allocation);
      },
      py::arg("goals"), py::arg("allocation"));

  m.def("episodes_to_90", &tslec::episodes_to_90, py::arg("rewards"),
        py::arg("window") = 10);

  m.def("vocabulary_entropy", &tslec::vocabulary_entropy,
        py::arg("usage_counts"));

  py::class_<tslec::Vocabulary>(m, "Vocabulary")
      .def(py::init<int, int>(), py::arg("owner"), py::arg("n_items") = 5)
      .def(
          "encode",
          [](tslec::Vocabulary& v, const std::string& intent, int item,
             int qty) {
            auto parsed = tslec::intent_from_name(intent);
            if (!parsed)
              throw std::invalid_argument("unknown intent: " + intent);
            auto [symbol, created] =
                v.encode(tslec::Concept::line(*parsed, item, qty));
            return py::make_tuple(symbol.text(), created);
          },
          py::arg("intent"), py::arg("item"), py::arg("qty"))
      .def(
          "decode",
          [](const tslec::Vocabulary& v,
             const std::string& text) -> py::object {
            auto symbol = tslec::parse_symbol(text);
            if (!symbol) return py::none();
            auto meaning = v.decode(*symbol);
            if (!meaning || meaning->kind != tslec::Concept::Kind::kLine)
              return py::none();
            return py::make_tuple(tslec::intent_name(meaning->intent),
                                  meaning->item, meaning->qty);
          },
          py::arg("text"))
      .def("size", &tslec::Vocabulary::size)
      .def("line_size", &tslec::Vocabulary::line_size);
}
