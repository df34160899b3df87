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

#include "tslec/runner.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cctype>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "tslec/agent.hpp"
#include "tslec/env.hpp"
#include "tslec/lexicon.hpp"
#include "tslec/rng.hpp"
#include "tslec/stats.hpp"

namespace tslec {

std::vector<Condition> core_conditions() {
  return {
      {"full", true, true, true, false},
      {"no_teaching", false, true, true, false},
      {"no_adaptation", true, false, true, false},
      {"independent_ql", false, false, false, false},
  };
}

Condition random_trust_condition() {
  return {"random_trust", true, true, true, true};
}

std::optional<Condition> condition_by_name(const std::string& name) {
  std::string lower;
  for (char c : name)
    lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (const Condition& c : core_conditions())
    if (c.name == lower) return c;
  if (lower == "random_trust") return random_trust_condition();
  return std::nullopt;
}

namespace {

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / xs.size();
}

// Mean of the last `window` values, 0 when empty.
double tail_mean(const std::vector<double>& xs, int window) {
  if (xs.empty()) return 0.0;
  size_t n = std::min<size_t>(window, xs.size());
  double s = 0.0;
  for (size_t i = xs.size() - n; i < xs.size(); ++i) s += xs[i];
  return s / n;
}

std::vector<double> last_k(const std::vector<double>& xs, int k) {
  size_t n = std::min<size_t>(k, xs.size());
  return std::vector<double>(xs.end() - n, xs.end());
}

}  // namespace

RunRecord run_simulation(const Condition& condition, std::uint64_t seed,
                         const SimParams& params) {
  {
    auto errors = validate(params);
    if (!errors.empty())
      throw std::invalid_argument("invalid parameters: " + errors.front());
  }
  const EnvConfig& env = params.env;
  const int n = env.n_agents;
  const int n_items = env.n_items;
  const int rounds = env.rounds_per_episode;

  Pcg32 env_rng = substream(seed, stream::kEnvChange);
  Pcg32 alloc_rng = substream(seed, stream::kAllocation);
  Pcg32 coin_rng = substream(seed, stream::kCoin);
  std::vector<Pcg32> goal_rng, decide_rng;
  for (int i = 0; i < n; ++i) {
    goal_rng.push_back(substream(seed, stream::kGoalsBase + i));
    decide_rng.push_back(substream(seed, stream::kDecideBase + i));
  }

  std::vector<int> quantities = env.quantities;
  std::vector<Vocabulary> vocabs;
  std::vector<QTable> qtables;
  std::vector<StrategyStore> stores(n);
  std::vector<std::vector<int>> goals(n);
  std::vector<std::vector<double>> reward_history(n);
  std::vector<std::vector<ListenerModel>> models(n);
  for (int i = 0; i < n; ++i) {
    vocabs.emplace_back(i, n_items);
    qtables.emplace_back(params.learning.q_max);
    for (int j = 0; j < n; ++j) models[i].emplace_back(j);
  }
  TrustMatrix trust(n, params.trust.tau_init);

  // Strategy markers are a fixed public preamble of the teaching channel:
  // every listener knows both of every speaker's markers from the start, so
  // a first teaching is as decodable as a later one. Proposal symbols stay
  // fully emergent.
  if (condition.communication) {
    for (int i = 0; i < n; ++i) {
      for (int slot = 0; slot < 2; ++slot) {
        Concept marker = Concept::strategy_marker(slot);
        Symbol sym = vocabs[i].encode(marker).first;
        for (int j = 0; j < n; ++j)
          if (j != i) models[j][i].reveal(sym, marker);
      }
    }
  }

  RunRecord rec;
  rec.condition = condition.name;
  rec.teaching = condition.teaching;
  rec.adaptation = condition.adaptation;
  rec.communication = condition.communication;
  rec.random_trust = condition.random_trust;
  rec.seed = seed;
  rec.params = params;
  rec.usage.assign(n, {});
  std::vector<size_t> pending_after;

  for (int e = 1; e <= env.episodes; ++e) {
    for (int i = 0; i < n; ++i) goals[i] = sample_goals(env, goal_rng[i]);

    std::optional<ChangeEvent> change = sample_change(e, env, env_rng);
    if (change) apply_change(quantities, *change);

    PoolState pool = reset_episode(quantities);
    std::vector<double> ep_reward(n, 0.0);
    std::vector<std::vector<TraceStep>> trace(n);
    std::vector<long long> phi_known(static_cast<size_t>(n) * n, 0);
    std::vector<long long> phi_total(static_cast<size_t>(n) * n, 0);
    std::array<int, 3> action_counts{};
    std::array<int, 3> source_counts{};

    for (int t = 1; t <= rounds; ++t) {
      pool.round = t;
      StateKey state = make_state_key(pool.remaining, quantities, t);
      std::vector<SelectResult> sel(n);
      std::vector<Message> msgs(n);
      std::vector<ScoredProposal> proposals(n);
      for (int i = 0; i < n; ++i) {
        sel[i] = select_action(qtables[i], state, trust.row(i), i, stores[i],
                               e, params.learning, params.trust,
                               decide_rng[i]);
        ++action_counts[static_cast<int>(sel[i].action)];
        ++source_counts[static_cast<int>(sel[i].source)];
        proposals[i].proposal =
            generate_proposal(sel[i].action, goals[i], pool, i);
        proposals[i].decoded_lines.assign(n, {});
        msgs[i].sender = i;
        for (const ProposalLine& line : proposals[i].proposal.lines) {
          auto [sym, created] = vocabs[i].encode(
              Concept::line(line.intent, line.item, line.qty));
          (void)created;
          msgs[i].symbols.push_back(sym);
          ++rec.usage[i][sym.text()];
        }
      }

      if (condition.communication) {
        for (int listener = 0; listener < n; ++listener) {
          for (int speaker = 0; speaker < n; ++speaker) {
            if (listener == speaker) continue;
            DecodeResult dr =
                decode_observed(models[listener][speaker], msgs[speaker]);
            size_t pair = static_cast<size_t>(listener) * n + speaker;
            phi_total[pair] +=
                static_cast<long long>(msgs[speaker].symbols.size());
            for (size_t k = 0; k < dr.concepts.size(); ++k) {
              if (!dr.concepts[k]) continue;
              ++phi_known[pair];
              if (dr.concepts[k]->kind == Concept::Kind::kLine)
                proposals[speaker].decoded_lines[listener].push_back(
                    {dr.concepts[k]->intent, dr.concepts[k]->item,
                     dr.concepts[k]->qty});
            }
          }
        }
      }

      AllocationResult ar = evaluate_and_allocate(
          proposals, pool, goals, condition.communication, alloc_rng);

      std::optional<std::uint64_t> next_state;
      if (t < rounds)
        next_state = make_state_key(pool.remaining, quantities, t + 1).pack();
      for (int i = 0; i < n; ++i) {
        double r = static_cast<double>(utility(goals[i], ar.allocations[i]));
        ep_reward[i] += r;
        q_update(qtables[i], state.pack(), sel[i].action, r, next_state,
                 params.learning);
        trace[i].push_back({state, sel[i].action, r, sel[i].source});
      }

      if (condition.communication) reveal_round(models, msgs, vocabs);
    }

    // Adoption events from the previous episode now know their outcome.
    for (size_t idx : pending_after)
      rec.events[idx].learner_reward_after =
          ep_reward[rec.events[idx].learner];
    pending_after.clear();

    if (condition.teaching) {
      // The opening state of the next episode is the only state certain to
      // recur, so it is where an adopted strategy has a measurable next
      // outcome. Only adoptions that change the learner's play there are
      // logged as events; everything else merges into the store silently.
      std::uint64_t next_open = make_state_key(quantities, quantities, 1).pack();
      std::vector<std::optional<Teaching>> teachings(n);
      for (int i = 0; i < n; ++i) {
        if (!should_teach(ep_reward[i], last_k(reward_history[i], 10)))
          continue;
        teachings[i] = build_teaching(trace[i], vocabs[i]);
        for (const Symbol& sym : teachings[i]->encoded.symbols)
          ++rec.usage[i][sym.text()];
      }

      for (int learner = 0; learner < n; ++learner) {
        for (int teacher = 0; teacher < n; ++teacher) {
          if (teacher == learner || !teachings[teacher]) continue;
          double recent =
              mean_of(last_k(reward_history[learner], params.trust.window));
          double tau = update_trust(trust.get(learner, teacher),
                                    ep_reward[teacher], recent, params.trust);
          trust.set(learner, teacher, tau);

          std::vector<bool> decodable(teachings[teacher]->entries.size(),
                                      false);
          if (condition.communication) {
            DecodeResult dr = decode_observed(models[learner][teacher],
                                              teachings[teacher]->encoded);
            size_t pair = static_cast<size_t>(learner) * n + teacher;
            phi_total[pair] += static_cast<long long>(dr.concepts.size());
            for (size_t k = 0; k < dr.concepts.size(); ++k) {
              if (!dr.concepts[k]) continue;
              ++phi_known[pair];
              decodable[k] = true;
            }
          }

          bool live = false;
          for (size_t k = 0; k < teachings[teacher]->entries.size(); ++k) {
            const TeachingEntry& te = teachings[teacher]->entries[k];
            if (!decodable[k] || te.state != next_open) continue;
            const StrategyEntry* prior = stores[learner].find(teacher, te.state);
            if (!prior || prior->action != te.action) live = true;
          }

          std::optional<bool> gate_override;
          if (condition.random_trust)
            gate_override = coin_rng.uniform_double() > 0.5;
          auto event = consider_adoption(
              stores[learner], *teachings[teacher], decodable, tau,
              ep_reward[teacher], recent, params.trust, e, learner,
              gate_override);
          if (event && live) {
            rec.events.push_back(*event);
            pending_after.push_back(rec.events.size() - 1);
          }
        }
      }

      // Teaching broadcasts still count as observations for the listener
      // models once the phase is over.
      if (condition.communication) {
        std::vector<Message> teach_msgs;
        for (int i = 0; i < n; ++i)
          if (teachings[i]) teach_msgs.push_back(teachings[i]->encoded);
        if (!teach_msgs.empty()) reveal_round(models, teach_msgs, vocabs);
      }
    }

    if (condition.adaptation) {
      if (change && change->kind == ChangeKind::kValueShift)
        for (int i = 0; i < n; ++i)
          goals[i] = adapt_goals_env(goals[i], *change, params.adaptation);
      std::vector<std::vector<int>> snapshot = goals;
      int best = 0;
      for (int j = 1; j < n; ++j)
        if (ep_reward[j] > ep_reward[best]) best = j;
      for (int i = 0; i < n; ++i) {
        if (i == best) continue;
        goals[i] = adapt_goals_peer(
            goals[i], snapshot[best],
            mean_of(last_k(reward_history[i], 10)), ep_reward[best],
            params.adaptation);
      }
    }

    EpisodeRecord er;
    er.episode = e;
    er.action_counts = action_counts;
    er.source_counts = source_counts;
    er.rewards = ep_reward;
    er.reward_mean = mean_of(ep_reward);
    for (int i = 0; i < n; ++i) {
      er.vocab_sizes.push_back(vocabs[i].size());
      reward_history[i].push_back(ep_reward[i]);
    }
    er.trust = trust.flat();
    er.trust_mean = trust.offdiag_mean();
    er.phi_pairs.assign(static_cast<size_t>(n) * n, 0.0);
    if (condition.communication) {
      double sum = 0.0;
      int pairs = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (i == j) continue;
          size_t pair = static_cast<size_t>(i) * n + j;
          double acc = phi_total[pair] > 0
                           ? static_cast<double>(phi_known[pair]) /
                                 static_cast<double>(phi_total[pair])
                           : 0.0;
          er.phi_pairs[pair] = acc;
          sum += acc;
          ++pairs;
        }
      }
      er.phi_mean = pairs > 0 ? sum / pairs : 0.0;
    }
    er.change = change;
    rec.episodes.push_back(er);
  }

  for (int i = 0; i < n; ++i) {
    rec.vocab_entries.push_back(vocabs[i].entries());
    rec.final_goals.push_back(goals[i]);
  }
  return rec;
}

std::vector<RunRecord> run_sweep(const SweepConfig& config) {
  struct Task {
    const Condition* condition;
    std::uint64_t seed;
    size_t slot;
  };
  std::vector<Task> tasks;
  size_t slot = 0;
  for (const Condition& c : config.conditions)
    for (int k = 0; k < config.seeds; ++k)
      tasks.push_back(
          {&c, config.base_seed ^ static_cast<std::uint64_t>(k), slot++});

  std::vector<RunRecord> results(tasks.size());
  unsigned jobs = config.jobs > 0
                      ? static_cast<unsigned>(config.jobs)
                      : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, tasks.empty() ? 1 : tasks.size());

  std::atomic<size_t> cursor{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (;;) {
      size_t idx = cursor.fetch_add(1);
      if (idx >= tasks.size()) return;
      try {
        results[tasks[idx].slot] = run_simulation(
            *tasks[idx].condition, tasks[idx].seed, config.params);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned i = 0; i < jobs; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

namespace {

nlohmann::json sample_summary(const std::vector<double>& xs) {
  nlohmann::json out;
  auto [m, s] = mean_std(xs);
  out["mean"] = m;
  out["std"] = s ? *s : 0.0;
  std::vector<double> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  size_t n = sorted.size();
  out["median"] = n % 2 ? sorted[n / 2]
                        : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  if (auto ci = confidence_interval_95(xs)) {
    out["ci_low"] = ci->first;
    out["ci_high"] = ci->second;
  } else {
    out["ci_low"] = m;
    out["ci_high"] = m;
  }
  return out;
}

struct ConditionGroup {
  std::string name;
  std::vector<const RunRecord*> runs;
  std::vector<MetricsReport> reports;
  std::vector<double> finals;
  std::vector<double> e90s;
  std::vector<double> etas;  // per-run, aligned with runs
};

}  // namespace

nlohmann::json summarize(const std::vector<RunRecord>& records) {
  if (records.empty())
    throw std::invalid_argument("summarize: no records");

  std::vector<ConditionGroup> groups;
  for (const RunRecord& r : records) {
    ConditionGroup* g = nullptr;
    for (ConditionGroup& existing : groups)
      if (existing.name == r.condition) g = &existing;
    if (!g) {
      groups.push_back({r.condition, {}, {}, {}, {}, {}});
      g = &groups.back();
    }
    g->runs.push_back(&r);
  }

  for (ConditionGroup& g : groups) {
    for (const RunRecord* r : g.runs) {
      g.reports.push_back(compute_report(*r));
      g.finals.push_back(final_performance(*r));
      g.e90s.push_back(static_cast<double>(g.reports.back().e90));
      g.etas.push_back(g.reports.back().eta_teach);
    }
  }

  nlohmann::json doc;
  doc["schema"] = "tslec-summary-v1";
  doc["episodes"] = records.front().params.env.episodes;

  nlohmann::json conditions = nlohmann::json::array();
  for (ConditionGroup& g : groups) {
    nlohmann::json row;
    row["name"] = g.name;
    row["runs"] = g.runs.size();
    nlohmann::json final = sample_summary(g.finals);
    final["per_seed"] = g.finals;
    row["final"] = final;
    row["e90"] = sample_summary(g.e90s);
    std::vector<double> aucs, vocab_means, coverages, comps, ents, comprs,
        densities, transitivities, trust_finals;
    std::vector<double> phi_before, phi_after, stab;
    long long events_total = 0, events_filled = 0, events_improved = 0;
    for (size_t i = 0; i < g.runs.size(); ++i) {
      const MetricsReport& rep = g.reports[i];
      aucs.push_back(rep.auc);
      vocab_means.push_back(
          mean_of(std::vector<double>(rep.vocab_size.begin(),
                                      rep.vocab_size.end())));
      coverages.push_back(rep.coverage);
      comps.push_back(mean_of(rep.compositionality));
      ents.push_back(mean_of(rep.entropy_bits));
      comprs.push_back(mean_of(rep.compression));
      densities.push_back(rep.density);
      transitivities.push_back(rep.transitivity);
      trust_finals.push_back(g.runs[i]->episodes.back().trust_mean);
      if (rep.stability) {
        phi_before.push_back(*rep.phi_before);
        phi_after.push_back(*rep.phi_after);
        stab.push_back(*rep.stability);
      }
      events_total += static_cast<long long>(g.runs[i]->events.size());
      for (const AdoptionEvent& ev : g.runs[i]->events) {
        if (!ev.learner_reward_after) continue;
        ++events_filled;
        if (*ev.learner_reward_after > ev.learner_reward_before)
          ++events_improved;
      }
    }
    row["auc"] = sample_summary(aucs);
    row["vocab_size_mean"] = mean_of(vocab_means);
    row["coverage_mean"] = mean_of(coverages);
    row["compositionality_mean"] = mean_of(comps);
    row["entropy_bits_mean"] = mean_of(ents);
    row["compression_mean"] = mean_of(comprs);
    row["density_mean"] = mean_of(densities);
    row["transitivity_mean"] = mean_of(transitivities);
    row["trust_final_mean"] = mean_of(trust_finals);
    if (!stab.empty()) {
      row["phi_before_mean"] = mean_of(phi_before);
      row["phi_after_mean"] = mean_of(phi_after);
      row["stability_mean"] = mean_of(stab);
    } else {
      row["phi_before_mean"] = nullptr;
      row["phi_after_mean"] = nullptr;
      row["stability_mean"] = nullptr;
    }
    row["eta_teach_mean"] = mean_of(g.etas);
    row["eta_teach_pooled"] =
        events_filled > 0 ? static_cast<double>(events_improved) /
                                static_cast<double>(events_filled)
                          : 0.0;
    row["adoption_events"] = events_total;
    conditions.push_back(row);
  }
  doc["conditions"] = conditions;

  auto find_group = [&](const std::string& name) -> ConditionGroup* {
    for (ConditionGroup& g : groups)
      if (g.name == name) return &g;
    return nullptr;
  };

  nlohmann::json tests;
  ConditionGroup* full = find_group("full");

  if (full && full->finals.size() >= 2) {
    std::vector<std::string> others;
    for (const Condition& c : core_conditions())
      if (c.name != "full" && find_group(c.name) &&
          find_group(c.name)->finals.size() >= 2)
        others.push_back(c.name);

    std::vector<double> raw_ps;
    nlohmann::json welch_rows = nlohmann::json::array();
    for (const std::string& name : others) {
      ConditionGroup* g = find_group(name);
      TestResult t = welch_t_test(full->finals, g->finals);
      nlohmann::json row;
      row["condition"] = name;
      row["t"] = t.statistic;
      row["p"] = t.p_value;
      if (t.effect_size) row["cohens_d"] = *t.effect_size;
      welch_rows.push_back(row);
      raw_ps.push_back(t.p_value);
    }
    auto adjusted = bonferroni(raw_ps);
    for (size_t i = 0; i < adjusted.size(); ++i) {
      welch_rows[i]["p_adjusted"] = adjusted[i].adjusted_p;
      welch_rows[i]["significant"] = adjusted[i].significant;
    }
    tests["welch_vs_full"] = welch_rows;

    std::vector<std::vector<double>> anova_groups;
    for (const Condition& c : core_conditions()) {
      ConditionGroup* g = find_group(c.name);
      if (g && g->finals.size() >= 2) anova_groups.push_back(g->finals);
    }
    if (anova_groups.size() >= 2) {
      TestResult f = one_way_anova(anova_groups);
      tests["anova"] = {{"f", f.statistic},
                        {"p", f.p_value},
                        {"df_between", f.n1},
                        {"df_within", f.n2}};
    }

    if (ConditionGroup* nt = find_group("no_teaching");
        nt && nt->e90s.size() >= 2) {
      TestResult t = welch_t_test(full->e90s, nt->e90s);
      double m_full = mean_of(full->e90s), m_nt = mean_of(nt->e90s);
      tests["e90_welch_full_vs_no_teaching"] = {
          {"t", t.statistic},
          {"p", t.p_value},
          {"full_mean", m_full},
          {"no_teaching_mean", m_nt},
          {"reduction", m_nt > 0 ? (m_nt - m_full) / m_nt : 0.0}};
    }
  }

  ConditionGroup* random = find_group("random_trust");
  if (full && random) {
    int wins = 0, ties = 0, n_pairs = 0;
    for (size_t i = 0; i < full->runs.size(); ++i) {
      for (size_t j = 0; j < random->runs.size(); ++j) {
        if (full->runs[i]->seed != random->runs[j]->seed) continue;
        ++n_pairs;
        if (full->etas[i] > random->etas[j])
          ++wins;
        else if (full->etas[i] == random->etas[j])
          ++ties;
        break;
      }
    }
    int effective = n_pairs - ties;
    tests["eta_sign_test_full_vs_random_trust"] = {
        {"wins", wins},
        {"ties", ties},
        {"pairs", n_pairs},
        {"p", sign_test_p(wins, effective)}};

    auto improve_counts = [](const ConditionGroup& g) {
      long long improved = 0, total = 0;
      for (const RunRecord* r : g.runs)
        for (const AdoptionEvent& ev : r->events) {
          if (!ev.learner_reward_after) continue;
          ++total;
          if (*ev.learner_reward_after > ev.learner_reward_before)
            ++improved;
        }
      return std::make_pair(improved, total);
    };
    auto [fi, ft] = improve_counts(*full);
    auto [ri, rt] = improve_counts(*random);
    if (fi > 0 || ri > 0) {
      nlohmann::json chi;
      chi["full_improved"] = fi;
      chi["full_total"] = ft;
      chi["random_improved"] = ri;
      chi["random_total"] = rt;
      if (ft > 0 && rt > 0 && fi + ri > 0 && (ft - fi) + (rt - ri) > 0) {
        TestResult x = chi_square_2x2(fi, ft - fi, ri, rt - ri);
        chi["chi2"] = x.statistic;
        chi["p"] = x.p_value;
      }
      tests["eta_chi_square"] = chi;
    }
  }

  // Trust-vs-improvement correlation, read from ungated adoptions when the
  // random-trust baseline ran (its taus span the full range), otherwise
  // from the gated ones.
  {
    ConditionGroup* source = random ? random : full;
    if (source) {
      std::vector<std::pair<double, double>> pairs;
      for (const RunRecord* r : source->runs)
        for (auto& p : trust_performance_pairs(r->events))
          pairs.push_back(p);
      if (pairs.size() >= 3) {
        TestResult t = pearson_r(pairs);
        tests["trust_delta_pearson"] = {{"condition", source->name},
                                        {"r", t.statistic},
                                        {"p", t.p_value},
                                        {"n", t.n1}};
      }
    }
  }
  doc["tests"] = tests;

  doc["notes"] = nlohmann::json::array(
      {"compression ratio is entropy_bits / 8; near-uniform usage over "
       "35-45 symbols puts it near 0.65, so values near 0.26 are not "
       "consistent with that formula and are not reproduced here"});
  return doc;
}

}  // namespace tslec
