// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "derivekit/eval.hpp"

#include <omp.h>

#include <cstdio>
#include "json.hpp"
#include <sstream>
#include <unordered_set>

#include "derivekit/knowledge_base.hpp"
#include "derivekit/parallel.hpp"

namespace derivekit {

namespace {

using nlohmann::json;

std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string classify(const std::vector<EquationState>& states, const DerivationSequence& seq,
                     std::size_t i, const KnowledgeBase& kb, const ReconstructResult& res) {
  const bool next_integrative =
      i < seq.records.size() && is_consider_kb(seq.records[i].action);  // record i is s_{i+1}
  if (next_integrative && !is_consider_kb(seq.records[i - 1].action)) {
    return std::string(kTerminalState);
  }
  const auto next_key = render_state_unindexed(states[i + 1]);
  bool in_pool = false;
  for (const auto& e : kb.equation_pool) in_pool = in_pool || render_state_unindexed(e) == next_key;
  if (in_pool && res.path.first_action == kConsiderKbEquation) {
    return std::string(kRepeatingEquation);
  }
  if (res.path.end_distance == 0.0) return std::string(kMultiplePathways);
  return std::string(kUnclassified);
}

}  // namespace

double epsilon_low(const DerivationSequence& seq, const Measure& m) {
  if (seq.records.empty()) throw DataError("epsilon_low needs at least one record");
  return distance(m, seq.records.back().text_str, tail_string(seq));
}

void tally(EvalReport& r) {
  r.total = r.units.size();
  r.successes = 0;
  r.cells.clear();
  for (const auto& u : r.units) {
    auto& cell = r.cells[{u.state_type, u.action_type}];
    ++cell.count;
    if (u.success) {
      ++cell.successes;
      ++r.successes;
    }
  }
}

EvalReport evaluate(const DerivationSequence& seq, std::span<const Action> actions,
                    std::span<const EquationState> requisite, const EvalConfig& cfg) {
  const auto states = parsed_states(seq);
  EvalReport report;
  report.measure = std::string(measure_name(cfg.measure.kind));
  report.eta = cfg.eta;
  report.epsilon_low = epsilon_low(seq, cfg.measure);
  const double eps = cfg.eta * report.epsilon_low;
  const auto n = static_cast<std::int64_t>(seq.records.size());
  report.units.resize(seq.records.size());

  SearchOptions opts{cfg.measure, cfg.params, 1};
  const int jobs = resolve_jobs(cfg.jobs);
  std::string error;
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (std::int64_t k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k) + 1;
    try {
      const std::span<const EquationState> history(states.data() + 1, i - 1);
      const auto kb = build_kb(requisite, history, states[i - 1], states[i + 1]);
      const auto res = reconstruct(DerivationUnit{states[i - 1], states[i + 1], states[i]}, actions,
                                   kb, opts);
      const auto& rec = seq.records[i - 1];
      UnitOutcome u;
      u.index = i;
      u.state_type = rec.state_type;
      u.action_type = rec.action_type;
      u.true_action = rec.action;
      u.truth = render_state(states[i]);
      u.predicted = render_state(res.s_hat);
      u.distance = distance(cfg.measure, u.predicted, u.truth);
      u.success = u.distance <= eps;
      if (!u.success) u.failure = classify(states, seq, i, kb, res);
      u.first_action = res.path.first_action;
      u.first_nsa = res.path.first_nsa;
      u.second_action = res.path.second_action;
      u.second_nsa = res.path.second_nsa;
      u.heuristic = res.path.heuristic;
      u.end_distance = res.path.end_distance;
      u.zero_mids = res.report.zero_distance_mids;
      report.units[k] = std::move(u);
    } catch (const std::exception& e) {
#pragma omp critical(derivekit_eval_error)
      if (error.empty()) error = "unit " + std::to_string(i) + ": " + e.what();
    }
  }
  if (!error.empty()) throw std::runtime_error(error);
  tally(report);
  return report;
}

std::string render_report(const EvalReport& r, ReportFormat format) {
  if (format == ReportFormat::Json) {
    json cells = json::array();
    for (const auto& [key, c] : r.cells) {
      cells.push_back({{"state_type", key.first},
                       {"action_type", key.second},
                       {"count", c.count},
                       {"successes", c.successes},
                       {"accuracy", c.accuracy()}});
    }
    json units = json::array();
    for (const auto& u : r.units) {
      units.push_back({{"index", u.index},
                       {"state_type", u.state_type},
                       {"action_type", u.action_type},
                       {"true_action", u.true_action},
                       {"truth", u.truth},
                       {"predicted", u.predicted},
                       {"distance", u.distance},
                       {"success", u.success},
                       {"failure", u.failure},
                       {"first_action", u.first_action},
                       {"first_nsa", u.first_nsa},
                       {"second_action", u.second_action},
                       {"second_nsa", u.second_nsa},
                       {"heuristic", u.heuristic},
                       {"end_distance", u.end_distance},
                       {"zero_mids", u.zero_mids}});
    }
    json doc = {{"measure", r.measure},
                {"eta", r.eta},
                {"epsilon_low", r.epsilon_low},
                {"total", r.total},
                {"successes", r.successes},
                {"accuracy", r.accuracy()},
                {"cells", std::move(cells)},
                {"units", std::move(units)}};
    return doc.dump() + "\n";
  }
  std::ostringstream out;
  char line[256];
  out << "# measure=" << r.measure << " eta=" << r.eta << " epsilon_low=" << r.epsilon_low << "\n";
  std::snprintf(line, sizeof line, "%-12s %-15s %7s %9s %8s\n", "state_type", "action_type",
                "count", "successes", "accuracy");
  out << line;
  for (const auto& [key, c] : r.cells) {
    std::snprintf(line, sizeof line, "%-12s %-15s %7zu %9zu %8s\n", key.first.c_str(),
                  key.second.c_str(), c.count, c.successes, fixed3(c.accuracy()).c_str());
    out << line;
  }
  if (r.total > 0) {
    std::snprintf(line, sizeof line, "%-12s %-15s %7zu %9zu %8s\n", "overall", "-", r.total,
                  r.successes, fixed3(r.accuracy()).c_str());
    out << line;
  }
  return out.str();
}

EvalReport report_from_json(std::string_view text) {
  const auto doc = json::parse(text);
  EvalReport r;
  r.measure = doc.at("measure").get<std::string>();
  r.eta = doc.at("eta").get<double>();
  r.epsilon_low = doc.at("epsilon_low").get<double>();
  for (const auto& j : doc.at("units")) {
    UnitOutcome u;
    u.index = j.at("index").get<std::size_t>();
    u.state_type = j.at("state_type").get<std::string>();
    u.action_type = j.at("action_type").get<std::string>();
    u.true_action = j.at("true_action").get<std::string>();
    u.truth = j.at("truth").get<std::string>();
    u.predicted = j.at("predicted").get<std::string>();
    u.distance = j.at("distance").get<double>();
    u.success = j.at("success").get<bool>();
    u.failure = j.at("failure").get<std::string>();
    u.first_action = j.at("first_action").get<std::string>();
    u.first_nsa = j.at("first_nsa").get<std::string>();
    u.second_action = j.at("second_action").get<std::string>();
    u.second_nsa = j.at("second_nsa").get<std::string>();
    u.heuristic = j.at("heuristic").get<double>();
    u.end_distance = j.at("end_distance").get<double>();
    u.zero_mids = j.at("zero_mids").get<std::size_t>();
    r.units.push_back(std::move(u));
  }
  tally(r);
  // Cell-only reports (no units) keep their stored aggregates.
  if (r.units.empty()) {
    r.total = doc.at("total").get<std::size_t>();
    r.successes = doc.at("successes").get<std::size_t>();
    for (const auto& c : doc.at("cells")) {
      r.cells[{c.at("state_type").get<std::string>(), c.at("action_type").get<std::string>()}] =
          CellStats{c.at("count").get<std::size_t>(), c.at("successes").get<std::size_t>()};
    }
  }
  return r;
}

}  // namespace derivekit
