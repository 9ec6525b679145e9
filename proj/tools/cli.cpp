// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

// derivekit: dataset tooling, metrics, reconstruction, evaluation and
// synthetic derivation generation from one binary.
//
// Exit codes: 0 ok, 1 usage, 2 data error, 3 internal error.
// Payload goes to stdout; diagnostics go to stderr.

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "derivekit/dataset.hpp"
#include "derivekit/eval.hpp"
#include "derivekit/generator.hpp"
#include "derivekit/knowledge_base.hpp"
#include "derivekit/search.hpp"
#include "json.hpp"

namespace {

using namespace derivekit;
using nlohmann::json;

enum Exit { kOk = 0, kUsage = 1, kData = 2, kInternal = 3 };

const std::vector<std::string> kMeasures = {"levenshtein", "damerau", "damerau-levenshtein",
                                            "hamming", "jaro", "jaro-winkler"};

struct MeasureFlags {
  std::string name = "damerau";
  double jw_p = 0.1;
  double jw_boost = 0.0;
  bool osa = false;

  void attach(CLI::App* app) {
    app->add_option("--measure", name, "String measure")
        ->check(CLI::IsMember(kMeasures))
        ->capture_default_str();
    app->add_option("--jw-p", jw_p, "Jaro-Winkler prefix scale")
        ->check(CLI::Range(0.0, 0.25))
        ->capture_default_str();
    app->add_option("--jw-boost-threshold", jw_boost,
                    "Apply the Winkler boost only above this Jaro similarity")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    app->add_flag("--osa", osa, "Restricted (optimal string alignment) Damerau variant");
  }

  [[nodiscard]] Measure build() const {
    Measure m;
    m.kind = parse_measure_kind(name);
    m.jw_p = jw_p;
    m.jw_boost_threshold = jw_boost;
    m.damerau = osa ? DamerauVariant::OptimalStringAlignment : DamerauVariant::Unrestricted;
    return m;
  }
};

struct HeuristicFlags {
  HeuristicParams p;
  void attach(CLI::App* app) {
    app->add_option("--n1", p.n1, "Weight of the missing-symbol term")->capture_default_str();
    app->add_option("--n2", p.n2, "Weight of the small-subexpression term")->capture_default_str();
    app->add_option("--n3", p.n3, "Weight of the large-subexpression term")->capture_default_str();
    app->add_option("--threshold", p.threshold, "Small/large subexpression cut, characters")
        ->capture_default_str();
  }
};

std::string fmt_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

json path_json(const CandidatePath& p) {
  return {{"first_action", p.first_action},
          {"first_nsa", p.first_nsa},
          {"c_mid", render_state(p.c_mid)},
          {"second_action", p.second_action},
          {"second_nsa", p.second_nsa},
          {"c_end", render_state(p.c_end)},
          {"x", p.components.x},
          {"y", p.components.y},
          {"z", p.components.z},
          {"heuristic", p.heuristic},
          {"end_distance", p.end_distance}};
}

std::vector<EquationState> load_requisite(const std::string& path) {
  if (path.empty()) return {};
  return load_kb_file(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"derivekit: equation reconstruction over derivation datasets"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file mirroring the flags");

  // dataset
  auto* dataset = app.add_subcommand("dataset", "Inspect and validate derivation datasets");
  dataset->require_subcommand(1);
  std::string ds_path;
  std::string ds_report = "table";
  auto* ds_stats = dataset->add_subcommand("stats", "State and action census, length summary");
  ds_stats->add_option("path", ds_path, "Dataset TSV")->required();
  ds_stats->add_option("--report", ds_report)->check(CLI::IsMember({"table", "json"}));
  auto* ds_validate = dataset->add_subcommand("validate", "Schema and categorization checks");
  ds_validate->add_option("path", ds_path, "Dataset TSV")->required();

  // metrics
  auto* metrics = app.add_subcommand("metrics", "Distance between two strings");
  std::string ma;
  std::string mb;
  MeasureFlags mflags;
  metrics->add_option("--a", ma, "First string")->required();
  metrics->add_option("--b", mb, "Second string")->required();
  mflags.attach(metrics);

  // reconstruct
  auto* rec = app.add_subcommand("reconstruct", "Reconstruct hidden states, JSON lines");
  std::string rec_ds;
  std::string rec_kb;
  std::size_t rec_unit = 0;
  bool rec_serial = false;
  int jobs = 0;
  MeasureFlags rflags;
  HeuristicFlags rheur;
  rec->add_option("--dataset", rec_ds, "Dataset TSV")->required();
  rec->add_option("--kb", rec_kb, "Requisite equations, one 'LHS = RHS' per line");
  rec->add_option("--unit", rec_unit, "Index i of the hidden state (default: every unit)");
  rec->add_flag("--serial", rec_serial, "Use the sequential reference search");
  rec->add_option("--jobs", jobs, "Worker threads")->envname("DERIVEKIT_JOBS");
  rflags.attach(rec);
  rheur.attach(rec);

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "Evaluate reconstruction over every unit");
  std::string ev_ds;
  std::string ev_kb;
  int eta = 0;
  double eta_real = -1.0;
  std::string ev_report = "table";
  MeasureFlags eflags;
  HeuristicFlags eheur;
  ev->add_option("--dataset", ev_ds, "Dataset TSV")->required();
  ev->add_option("--kb", ev_kb, "Requisite equations, one 'LHS = RHS' per line");
  ev->add_option("--eta", eta, "Success iff M <= eta * epsilon_low")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  ev->add_option("--eta-real", eta_real, "Non-integer eta, exploratory only")
      ->check(CLI::NonNegativeNumber);
  ev->add_option("--report", ev_report)->check(CLI::IsMember({"table", "json"}));
  ev->add_option("--jobs", jobs, "Worker threads")->envname("DERIVEKIT_JOBS");
  eflags.attach(ev);
  eheur.attach(ev);

  // generate
  auto* gen = app.add_subcommand("generate", "Write a synthetic derivation");
  std::string seed_path;
  std::string out_path;
  GenConfig gcfg;
  gen->add_option("--seed-eqs", seed_path, "Seed equations, one 'LHS = RHS' per line")->required();
  gen->add_option("--length", gcfg.length, "Number of records")->check(CLI::Range(3, 100000));
  gen->add_option("--branch-p", gcfg.branch_p, "Probability of consider_kb_equation")
      ->check(CLI::Range(0.0, 1.0));
  gen->add_option("--rng", gcfg.rng, "Random seed");
  gen->add_option("--max-side", gcfg.max_side_chars, "Character cap on each side")
      ->capture_default_str();
  gen->add_option("--out", out_path, "Output TSV (default: stdout)");

  // actions
  auto* act = app.add_subcommand("actions", "Action set");
  act->require_subcommand(1);
  auto* act_list = act->add_subcommand("list", "List builtin actions");
  std::string act_report = "table";
  act_list->add_option("--report", act_report)->check(CLI::IsMember({"table", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const auto& actions = builtin_action_set();

    if (ds_stats->parsed()) {
      const auto seq = load_dataset(ds_path);
      const auto c = census(seq);
      if (ds_report == "json") {
        json cells = json::array();
        for (const auto& [k, n] : c.cells) {
          cells.push_back({{"state_type", k.first}, {"action_type", k.second}, {"count", n}});
        }
        auto lens = [](const LengthStats& s) {
          return json{{"min", s.min}, {"max", s.max}, {"mean", s.mean}};
        };
        json doc = {{"records", c.records},
                    {"state_types", c.by_state_type},
                    {"cells", cells},
                    {"latex_len", lens(c.latex)},
                    {"text_len", lens(c.text)},
                    {"tree_len", lens(c.tree)}};
        std::cout << doc.dump() << "\n";
      } else {
        std::cout << "records " << c.records << "\n";
        for (const auto& [t, n] : c.by_state_type) std::cout << "state " << t << " " << n << "\n";
        for (const auto& [k, n] : c.cells) {
          std::cout << "cell " << k.first << " " << k.second << " " << n << "\n";
        }
        auto line = [](const char* name, const LengthStats& s) {
          std::printf("%s min %zu mean %.1f max %zu\n", name, s.min, s.mean, s.max);
        };
        std::fflush(stdout);
        line("latex_len", c.latex);
        line("text_len", c.text);
        line("tree_len", c.tree);
      }
      return kOk;
    }

    if (ds_validate->parsed()) {
      const auto seq = load_dataset(ds_path);
      const auto issues = validate(seq);
      for (const auto& i : issues) std::cout << i << "\n";
      if (issues.empty()) std::cout << "ok " << seq.records.size() << " records\n";
      return issues.empty() ? kOk : kData;
    }

    if (metrics->parsed()) {
      std::cout << fmt_number(distance(mflags.build(), ma, mb)) << "\n";
      return kOk;
    }

    if (rec->parsed()) {
      const auto seq = load_dataset(rec_ds);
      const auto states = parsed_states(seq);
      const auto requisite = load_requisite(rec_kb);
      const std::size_t n = seq.records.size();
      if (rec_unit > n || (rec_unit == 0 && rec->count("--unit") > 0)) {
        std::cerr << "--unit must lie in [1, " << n << "]\n";
        return kUsage;
      }
      const std::size_t lo = rec_unit == 0 ? 1 : rec_unit;
      const std::size_t hi = rec_unit == 0 ? n : rec_unit;
      SearchOptions opts{rflags.build(), rheur.p, jobs};
      for (std::size_t i = lo; i <= hi; ++i) {
        const auto kb = build_kb(requisite, std::span(states.data() + 1, i - 1), states[i - 1],
                                 states[i + 1]);
        DerivationUnit unit{states[i - 1], states[i + 1], states[i]};
        const auto res = rec_serial ? reconstruct_serial(unit, actions, kb, opts)
                                    : reconstruct(unit, actions, kb, opts);
        json line = {{"unit", i},
                     {"predicted", render_state(res.s_hat)},
                     {"truth", render_state(states[i])},
                     {"distance", distance(opts.measure, render_state(res.s_hat),
                                           render_state(states[i]))},
                     {"path", path_json(res.path)},
                     {"first_hop_candidates", res.report.first_hop_candidates},
                     {"distinct_mids", res.report.distinct_mids},
                     {"zero_distance_mids", res.report.zero_distance_mids},
                     {"early_stop", res.report.early_stop}};
        std::cout << line.dump() << "\n";
      }
      return kOk;
    }

    if (ev->parsed()) {
      const auto seq = load_dataset(ev_ds);
      const auto requisite = load_requisite(ev_kb);
      EvalConfig cfg;
      cfg.measure = eflags.build();
      cfg.eta = ev->count("--eta-real") > 0 ? eta_real : static_cast<double>(eta);
      cfg.params = eheur.p;
      cfg.jobs = jobs;
      const auto report = evaluate(seq, actions, requisite, cfg);
      std::cout << render_report(report, ev_report == "json" ? ReportFormat::Json
                                                             : ReportFormat::Table);
      return kOk;
    }

    if (gen->parsed()) {
      gcfg.seeds = load_kb_file(seed_path);
      if (gcfg.seeds.empty()) {
        std::cerr << seed_path << ": no seed equations\n";
        return kData;
      }
      const auto d = generate(gcfg, actions);
      const auto seq = d.to_sequence();
      if (out_path.empty()) {
        std::cout << format_dataset(seq);
      } else {
        save_dataset(seq, out_path);
        std::cerr << "wrote " << seq.records.size() << " records to " << out_path << "\n";
      }
      return kOk;
    }

    if (act_list->parsed()) {
      if (act_report == "json") {
        json arr = json::array();
        for (const auto& a : actions) {
          arr.push_back({{"name", a.name},
                         {"category", std::string(category_name(a.category))},
                         {"summary", a.summary}});
        }
        std::cout << arr.dump() << "\n";
      } else {
        for (const auto& a : actions) {
          std::printf("%-32s %-15s %s\n", a.name.c_str(),
                      std::string(category_name(a.category)).c_str(), a.summary.c_str());
        }
      }
      return kOk;
    }
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kData;
  } catch (const ParseError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kData;
  } catch (const GenerationStalled& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
