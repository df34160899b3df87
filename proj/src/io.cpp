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

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tslec/stats.hpp"

namespace tslec {
namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

void write_text(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + file.string());
}

double vec_mean(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / xs.size();
}

nlohmann::json concept_to_json(const Concept& c) {
  nlohmann::json out;
  if (c.kind == Concept::Kind::kStrategy) {
    out["intent"] = "STRATEGY";
    out["item"] = c.slot;
    out["qty"] = 0;
  } else {
    out["intent"] = intent_name(c.intent);
    out["item"] = c.item;
    out["qty"] = c.qty;
  }
  return out;
}

Concept concept_from_json(const nlohmann::json& j) {
  std::string intent = j.at("intent").get<std::string>();
  if (intent == "STRATEGY")
    return Concept::strategy_marker(j.at("item").get<int>());
  auto parsed = intent_from_name(intent);
  if (!parsed) throw std::runtime_error("unknown intent: " + intent);
  return Concept::line(*parsed, j.at("item").get<int>(),
                       j.at("qty").get<int>());
}

std::optional<ChangeKind> change_kind_from_name(const std::string& name) {
  for (ChangeKind k : {ChangeKind::kValueShift, ChangeKind::kScarcity,
                       ChangeKind::kAbundance})
    if (name == change_kind_name(k)) return k;
  return std::nullopt;
}

std::vector<double> reward_series(const RunRecord& r) {
  std::vector<double> out;
  for (const EpisodeRecord& er : r.episodes) out.push_back(er.reward_mean);
  return out;
}

// Type-7 quantile on a sorted sample.
double quantile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return 0.0;
  if (sorted.size() == 1) return sorted.front();
  double h = p * (sorted.size() - 1);
  size_t lo = static_cast<size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  double frac = h - lo;
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

struct Group {
  std::string name;
  std::vector<const RunRecord*> runs;
};

std::vector<Group> group_by_condition(const std::vector<RunRecord>& records) {
  std::vector<Group> groups;
  for (const RunRecord& r : records) {
    Group* g = nullptr;
    for (Group& existing : groups)
      if (existing.name == r.condition) g = &existing;
    if (!g) {
      groups.push_back({r.condition, {}});
      g = &groups.back();
    }
    g->runs.push_back(&r);
  }
  return groups;
}

}  // namespace

std::string run_stem(const RunRecord& record) {
  return record.condition + "_" + std::to_string(record.seed);
}

nlohmann::json run_to_json(const RunRecord& record) {
  nlohmann::json doc;
  doc["schema"] = "tslec-run-v1";
  doc["condition"] = record.condition;
  doc["teaching"] = record.teaching;
  doc["adaptation"] = record.adaptation;
  doc["communication"] = record.communication;
  doc["random_trust"] = record.random_trust;
  doc["seed"] = record.seed;

  const SimParams& p = record.params;
  doc["params"] = {
      {"env",
       {{"n_agents", p.env.n_agents},
        {"n_items", p.env.n_items},
        {"quantities", p.env.quantities},
        {"rounds_per_episode", p.env.rounds_per_episode},
        {"episodes", p.env.episodes},
        {"change_interval", p.env.change_interval},
        {"goal_value_min", p.env.goal_value_min},
        {"goal_value_max", p.env.goal_value_max},
        {"shift_value_min", p.env.shift_value_min},
        {"shift_value_max", p.env.shift_value_max}}},
      {"learning",
       {{"alpha", p.learning.alpha},
        {"gamma", p.learning.gamma},
        {"epsilon_start", p.learning.epsilon_start},
        {"epsilon_end", p.learning.epsilon_end},
        {"epsilon_decay_episodes", p.learning.epsilon_decay_episodes},
        {"q_max", p.learning.q_max}}},
      {"trust",
       {{"beta_pos", p.trust.beta_pos},
        {"beta_neg", p.trust.beta_neg},
        {"tau_init", p.trust.tau_init},
        {"adopt_threshold", p.trust.adopt_threshold},
        {"window", p.trust.window}}},
      {"adaptation",
       {{"lambda_env", p.adaptation.lambda_env},
        {"lambda_peer", p.adaptation.lambda_peer},
        {"peer_threshold", p.adaptation.peer_threshold}}}};

  nlohmann::json episodes = nlohmann::json::array();
  for (const EpisodeRecord& er : record.episodes) {
    nlohmann::json e;
    e["episode"] = er.episode;
    e["rewards"] = er.rewards;
    e["reward_mean"] = er.reward_mean;
    e["vocab_sizes"] = er.vocab_sizes;
    e["trust"] = er.trust;
    e["trust_mean"] = er.trust_mean;
    e["phi_pairs"] = er.phi_pairs;
    e["phi_mean"] = er.phi_mean;
    e["action_counts"] = er.action_counts;
    e["source_counts"] = er.source_counts;
    if (er.change) {
      e["change"] = {{"kind", change_kind_name(er.change->kind)},
                     {"item", er.change->item},
                     {"new_value", er.change->new_value}};
    } else {
      e["change"] = nullptr;
    }
    episodes.push_back(e);
  }
  doc["episodes"] = episodes;

  nlohmann::json events = nlohmann::json::array();
  for (const AdoptionEvent& ev : record.events) {
    nlohmann::json e;
    e["episode"] = ev.episode;
    e["learner"] = ev.learner;
    e["teacher"] = ev.teacher;
    e["tau"] = ev.tau_at_adoption;
    e["before"] = ev.learner_reward_before;
    if (ev.learner_reward_after)
      e["after"] = *ev.learner_reward_after;
    else
      e["after"] = nullptr;
    events.push_back(e);
  }
  doc["events"] = events;

  nlohmann::json vocab = nlohmann::json::array();
  for (const auto& entries : record.vocab_entries) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [meaning, symbol] : entries) {
      nlohmann::json row = concept_to_json(meaning);
      row["symbol"] = symbol.text();
      rows.push_back(row);
    }
    vocab.push_back(rows);
  }
  doc["vocab"] = vocab;
  doc["usage"] = record.usage;
  doc["final_goals"] = record.final_goals;
  return doc;
}

RunRecord run_from_json(const nlohmann::json& doc) {
  if (doc.at("schema").get<std::string>() != "tslec-run-v1")
    throw std::runtime_error("unsupported run schema");
  RunRecord r;
  r.condition = doc.at("condition").get<std::string>();
  r.teaching = doc.at("teaching").get<bool>();
  r.adaptation = doc.at("adaptation").get<bool>();
  r.communication = doc.at("communication").get<bool>();
  r.random_trust = doc.at("random_trust").get<bool>();
  r.seed = doc.at("seed").get<std::uint64_t>();

  const nlohmann::json& pj = doc.at("params");
  const nlohmann::json& env = pj.at("env");
  r.params.env.n_agents = env.at("n_agents").get<int>();
  r.params.env.n_items = env.at("n_items").get<int>();
  r.params.env.quantities = env.at("quantities").get<std::vector<int>>();
  r.params.env.rounds_per_episode = env.at("rounds_per_episode").get<int>();
  r.params.env.episodes = env.at("episodes").get<int>();
  r.params.env.change_interval = env.at("change_interval").get<int>();
  r.params.env.goal_value_min = env.at("goal_value_min").get<int>();
  r.params.env.goal_value_max = env.at("goal_value_max").get<int>();
  r.params.env.shift_value_min = env.at("shift_value_min").get<int>();
  r.params.env.shift_value_max = env.at("shift_value_max").get<int>();
  const nlohmann::json& lp = pj.at("learning");
  r.params.learning.alpha = lp.at("alpha").get<double>();
  r.params.learning.gamma = lp.at("gamma").get<double>();
  r.params.learning.epsilon_start = lp.at("epsilon_start").get<double>();
  r.params.learning.epsilon_end = lp.at("epsilon_end").get<double>();
  r.params.learning.epsilon_decay_episodes =
      lp.at("epsilon_decay_episodes").get<int>();
  r.params.learning.q_max = lp.at("q_max").get<double>();
  const nlohmann::json& tp = pj.at("trust");
  r.params.trust.beta_pos = tp.at("beta_pos").get<double>();
  r.params.trust.beta_neg = tp.at("beta_neg").get<double>();
  r.params.trust.tau_init = tp.at("tau_init").get<double>();
  r.params.trust.adopt_threshold = tp.at("adopt_threshold").get<double>();
  r.params.trust.window = tp.at("window").get<int>();
  const nlohmann::json& ap = pj.at("adaptation");
  r.params.adaptation.lambda_env = ap.at("lambda_env").get<double>();
  r.params.adaptation.lambda_peer = ap.at("lambda_peer").get<double>();
  r.params.adaptation.peer_threshold = ap.at("peer_threshold").get<double>();

  for (const nlohmann::json& e : doc.at("episodes")) {
    EpisodeRecord er;
    er.episode = e.at("episode").get<int>();
    er.rewards = e.at("rewards").get<std::vector<double>>();
    er.reward_mean = e.at("reward_mean").get<double>();
    er.vocab_sizes = e.at("vocab_sizes").get<std::vector<int>>();
    er.trust = e.at("trust").get<std::vector<double>>();
    er.trust_mean = e.at("trust_mean").get<double>();
    er.phi_pairs = e.at("phi_pairs").get<std::vector<double>>();
    er.phi_mean = e.at("phi_mean").get<double>();
    er.action_counts = e.at("action_counts").get<std::array<int, 3>>();
    er.source_counts = e.at("source_counts").get<std::array<int, 3>>();
    if (!e.at("change").is_null()) {
      ChangeEvent ce;
      std::string kind = e.at("change").at("kind").get<std::string>();
      auto parsed = change_kind_from_name(kind);
      if (!parsed) throw std::runtime_error("unknown change kind: " + kind);
      ce.kind = *parsed;
      ce.item = e.at("change").at("item").get<int>();
      ce.new_value = e.at("change").at("new_value").get<int>();
      er.change = ce;
    }
    r.episodes.push_back(er);
  }

  for (const nlohmann::json& e : doc.at("events")) {
    AdoptionEvent ev;
    ev.episode = e.at("episode").get<int>();
    ev.learner = e.at("learner").get<int>();
    ev.teacher = e.at("teacher").get<int>();
    ev.tau_at_adoption = e.at("tau").get<double>();
    ev.learner_reward_before = e.at("before").get<double>();
    if (!e.at("after").is_null())
      ev.learner_reward_after = e.at("after").get<double>();
    r.events.push_back(ev);
  }

  for (const nlohmann::json& rows : doc.at("vocab")) {
    std::vector<std::pair<Concept, Symbol>> entries;
    for (const nlohmann::json& row : rows) {
      auto symbol = parse_symbol(row.at("symbol").get<std::string>());
      if (!symbol) throw std::runtime_error("bad symbol in vocab");
      entries.emplace_back(concept_from_json(row), *symbol);
    }
    r.vocab_entries.push_back(std::move(entries));
  }
  r.usage =
      doc.at("usage").get<std::vector<std::map<std::string, long long>>>();
  r.final_goals = doc.at("final_goals").get<std::vector<std::vector<int>>>();
  return r;
}

void write_run_files(const std::filesystem::path& dir,
                     const RunRecord& record) {
  std::filesystem::create_directories(dir);
  const std::string stem = run_stem(record);

  std::ostringstream episodes;
  episodes << "episode,reward_mean,vocab_mean,trust_mean,phi_mean\n";
  for (const EpisodeRecord& er : record.episodes) {
    double vocab_mean = 0.0;
    for (int v : er.vocab_sizes) vocab_mean += v;
    if (!er.vocab_sizes.empty()) vocab_mean /= er.vocab_sizes.size();
    episodes << er.episode << ',' << fixed6(er.reward_mean) << ','
             << fixed6(vocab_mean) << ',' << fixed6(er.trust_mean) << ','
             << fixed6(er.phi_mean) << '\n';
  }
  write_text(dir / (stem + "_episodes.csv"), episodes.str());

  std::ostringstream events;
  events << "episode,learner,teacher,tau,before,after\n";
  for (const AdoptionEvent& ev : record.events) {
    events << ev.episode << ',' << ev.learner << ',' << ev.teacher << ','
           << fixed6(ev.tau_at_adoption) << ','
           << fixed6(ev.learner_reward_before) << ',';
    if (ev.learner_reward_after) events << fixed6(*ev.learner_reward_after);
    events << '\n';
  }
  write_text(dir / (stem + "_events.csv"), events.str());

  std::ostringstream vocab;
  vocab << "owner\tsymbol\tintent\titem\tqty\n";
  for (size_t i = 0; i < record.vocab_entries.size(); ++i) {
    for (const auto& [meaning, symbol] : record.vocab_entries[i]) {
      vocab << i << '\t' << symbol.text() << '\t';
      if (meaning.kind == Concept::Kind::kStrategy)
        vocab << "STRATEGY\t" << meaning.slot << "\t0\n";
      else
        vocab << intent_name(meaning.intent) << '\t' << meaning.item << '\t'
              << meaning.qty << '\n';
    }
  }
  write_text(dir / (stem + "_vocab.tsv"), vocab.str());

  write_text(dir / (stem + "_run.json"), run_to_json(record).dump() + "\n");
}

std::vector<RunRecord> load_runs(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw std::runtime_error("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string name = entry.path().filename().string();
    if (name.size() > 9 && name.ends_with("_run.json"))
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const auto& a, const auto& b) {
              return a.filename().string() < b.filename().string();
            });
  std::vector<RunRecord> out;
  for (const auto& file : files) out.push_back(run_from_json(read_json(file)));
  return out;
}

void write_json(const std::filesystem::path& file,
                const nlohmann::json& doc) {
  write_text(file, doc.dump(2) + "\n");
}

nlohmann::json read_json(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  nlohmann::json doc;
  in >> doc;
  return doc;
}

nlohmann::json report_json(const std::vector<RunRecord>& records) {
  nlohmann::json doc;
  doc["schema"] = "tslec-report-v1";
  nlohmann::json runs = nlohmann::json::array();
  for (const RunRecord& r : records) {
    MetricsReport rep = compute_report(r);
    nlohmann::json row;
    row["condition"] = r.condition;
    row["seed"] = r.seed;
    row["final"] = final_performance(r);
    row["e90"] = rep.e90;
    row["auc"] = rep.auc;
    row["vocab_size"] = rep.vocab_size;
    row["coverage"] = rep.coverage;
    row["compositionality"] = rep.compositionality;
    row["entropy_bits"] = rep.entropy_bits;
    row["compression"] = rep.compression;
    if (rep.stability) {
      row["phi_before"] = *rep.phi_before;
      row["phi_after"] = *rep.phi_after;
      row["stability"] = *rep.stability;
    } else {
      row["phi_before"] = nullptr;
      row["phi_after"] = nullptr;
      row["stability"] = nullptr;
    }
    row["eta_teach"] = rep.eta_teach;
    row["adoption_events"] = r.events.size();
    row["density"] = rep.density;
    row["transitivity"] = rep.transitivity;
    runs.push_back(row);
  }
  doc["runs"] = runs;
  doc["notes"] = nlohmann::json::array(
      {"compression ratio is entropy_bits / 8; near-uniform usage over "
       "35-45 symbols puts it near 0.65, so values near 0.26 are not "
       "consistent with that formula and are not reproduced here"});
  return doc;
}

void write_plot_csvs(const std::filesystem::path& dir,
                     const std::vector<RunRecord>& records) {
  std::filesystem::create_directories(dir);
  std::vector<Group> groups = group_by_condition(records);

  std::ostringstream learning, vocab_growth, trust;
  learning << "condition,episode,reward_mean,ci_low,ci_high\n";
  vocab_growth << "condition,episode,vocab_mean\n";
  trust << "condition,episode,trust_mean\n";
  for (const Group& g : groups) {
    size_t episodes = g.runs.front()->episodes.size();
    for (const RunRecord* r : g.runs)
      episodes = std::min(episodes, r->episodes.size());
    for (size_t e = 0; e < episodes; ++e) {
      std::vector<double> rewards, vocabs, trusts;
      for (const RunRecord* r : g.runs) {
        const EpisodeRecord& er = r->episodes[e];
        rewards.push_back(er.reward_mean);
        double vm = 0.0;
        for (int v : er.vocab_sizes) vm += v;
        if (!er.vocab_sizes.empty()) vm /= er.vocab_sizes.size();
        vocabs.push_back(vm);
        trusts.push_back(er.trust_mean);
      }
      double m = vec_mean(rewards);
      double lo = m, hi = m;
      if (auto ci = confidence_interval_95(rewards)) {
        lo = ci->first;
        hi = ci->second;
      }
      learning << g.name << ',' << (e + 1) << ',' << fixed6(m) << ','
               << fixed6(lo) << ',' << fixed6(hi) << '\n';
      vocab_growth << g.name << ',' << (e + 1) << ','
                   << fixed6(vec_mean(vocabs)) << '\n';
      trust << g.name << ',' << (e + 1) << ',' << fixed6(vec_mean(trusts))
            << '\n';
    }
  }
  write_text(dir / "learning_curves.csv", learning.str());
  write_text(dir / "vocab_growth.csv", vocab_growth.str());
  write_text(dir / "trust.csv", trust.str());

  std::ostringstream comp;
  comp << "condition,seed,agent,compositionality\n";
  for (const RunRecord& r : records)
    for (size_t i = 0; i < r.vocab_entries.size(); ++i)
      comp << r.condition << ',' << r.seed << ',' << i << ','
           << fixed6(compositionality(r.vocab_entries[i])) << '\n';
  write_text(dir / "compositionality.csv", comp.str());

  std::ostringstream box, bars, efficiency;
  box << "condition,min,q1,median,q3,max\n";
  bars << "condition,mean,std,ci_low,ci_high\n";
  efficiency << "condition,e90_mean,e90_std,auc_mean,auc_std\n";
  for (const Group& g : groups) {
    std::vector<double> finals, e90s, aucs;
    for (const RunRecord* r : g.runs) {
      finals.push_back(final_performance(*r));
      std::vector<double> series = reward_series(*r);
      e90s.push_back(static_cast<double>(episodes_to_90(series)));
      aucs.push_back(auc(series));
    }
    std::vector<double> sorted = finals;
    std::sort(sorted.begin(), sorted.end());
    box << g.name << ',' << fixed6(sorted.front()) << ','
        << fixed6(quantile(sorted, 0.25)) << ','
        << fixed6(quantile(sorted, 0.5)) << ','
        << fixed6(quantile(sorted, 0.75)) << ',' << fixed6(sorted.back())
        << '\n';
    auto [fm, fs] = mean_std(finals);
    double lo = fm, hi = fm;
    if (auto ci = confidence_interval_95(finals)) {
      lo = ci->first;
      hi = ci->second;
    }
    bars << g.name << ',' << fixed6(fm) << ',' << fixed6(fs ? *fs : 0.0)
         << ',' << fixed6(lo) << ',' << fixed6(hi) << '\n';
    auto [em, es] = mean_std(e90s);
    auto [am, as] = mean_std(aucs);
    efficiency << g.name << ',' << fixed6(em) << ','
               << fixed6(es ? *es : 0.0) << ',' << fixed6(am) << ','
               << fixed6(as ? *as : 0.0) << '\n';
  }
  write_text(dir / "performance_box.csv", box.str());
  write_text(dir / "ablation_bars.csv", bars.str());
  write_text(dir / "efficiency_matrix.csv", efficiency.str());
}

}  // namespace tslec
