// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "derivekit/eval.hpp"
#include "derivekit/generator.hpp"

using namespace derivekit;

namespace {

std::vector<EquationState> seeds() {
  return load_kb_file(std::string(DERIVEKIT_DATA_DIR) + "/seeds.kb");
}

DerivationSequence generated(std::uint64_t rng, std::size_t length, double branch_p) {
  GenConfig g;
  g.seeds = seeds();
  g.length = length;
  g.branch_p = branch_p;
  g.rng = rng;
  return generate(g, builtin_action_set()).to_sequence();
}

EvalReport run(const DerivationSequence& seq, MeasureKind kind, double eta, int jobs = 0) {
  EvalConfig cfg;
  cfg.measure.kind = kind;
  cfg.eta = eta;
  cfg.jobs = jobs;
  const auto sd = seeds();
  return evaluate(seq, builtin_action_set(), sd, cfg);
}

}  // namespace

TEST(Report, AccuracyIsSuccessRatio) {
  EvalReport r;
  for (int i = 0; i < 10; ++i) {
    UnitOutcome u;
    u.state_type = "consequent";
    u.action_type = "self-state";
    u.success = i < 7;
    r.units.push_back(u);
  }
  tally(r);
  EXPECT_EQ(r.total, 10u);
  EXPECT_EQ(r.successes, 7u);
  EXPECT_DOUBLE_EQ(r.accuracy(), 0.7);
  const auto table = render_report(r, ReportFormat::Table);
  EXPECT_NE(table.find("0.700"), std::string::npos) << table;
  EXPECT_NE(table.find("overall"), std::string::npos);
}

TEST(Report, EmptyTableHasOnlyHeaders) {
  EvalReport r;
  tally(r);
  const auto table = render_report(r, ReportFormat::Table);
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 2);
  EXPECT_EQ(table.find("overall"), std::string::npos);
}

TEST(Report, JsonRoundTrip) {
  const auto r = run(generated(3, 6, 0.3), MeasureKind::DamerauLevenshtein, 0);
  const auto json = render_report(r, ReportFormat::Json);
  EXPECT_EQ(std::count(json.begin(), json.end(), '\n'), 1);
  const auto back = report_from_json(json);
  EXPECT_EQ(back, r);
  EXPECT_EQ(render_report(back, ReportFormat::Json), json);
}

TEST(EpsilonLow, DistanceFromLastRecordToTail) {
  DerivationSequence seq;
  seq.records.push_back(make_record(parse_state("(E^(2), x)"), "divide_rhs_by_2", "None",
                                    StateType::Consequent, ActionCategory::Self));
  Measure m;
  m.kind = MeasureKind::Levenshtein;
  EXPECT_EQ(epsilon_low(seq, m), 4.0);  // drop "^(2)"
  seq.records[0] = make_record(parse_state("((E + y)^(1), x)"), "add_symbol_to_both_sides", "y",
                               StateType::Consequent, ActionCategory::Symbol);
  EXPECT_EQ(epsilon_low(seq, m), 6.0);  // the parentheses go with the index
  seq.explicit_tail = seq.records[0].text_str;
  EXPECT_EQ(epsilon_low(seq, m), 0.0);
  EXPECT_THROW(epsilon_low(DerivationSequence{}, m), DataError);
}

TEST(Evaluate, UnitsCellsAndFailureLabels) {
  const auto seq = generated(11, 10, 0.3);
  const auto r = run(seq, MeasureKind::DamerauLevenshtein, 0);
  ASSERT_EQ(r.units.size(), seq.records.size());
  std::size_t counted = 0;
  for (const auto& [k, c] : r.cells) counted += c.count;
  EXPECT_EQ(counted, r.total);
  for (std::size_t i = 0; i < r.units.size(); ++i) {
    const auto& u = r.units[i];
    EXPECT_EQ(u.index, i + 1);
    EXPECT_EQ(u.truth, seq.records[i].text_str);
    EXPECT_EQ(u.success, u.failure.empty());
    EXPECT_EQ(u.success, u.distance <= r.eta * r.epsilon_low);
    if (!u.success) {
      EXPECT_TRUE(u.failure == kTerminalState || u.failure == kRepeatingEquation ||
                  u.failure == kMultiplePathways || u.failure == kUnclassified);
    }
  }
}

TEST(Evaluate, TerminalStatesFailUnderEditMeasures) {
  for (std::uint64_t seed : {21u, 22u, 23u}) {
    const auto seq = generated(seed, 12, 0.4);
    for (auto kind : {MeasureKind::Levenshtein, MeasureKind::DamerauLevenshtein}) {
      const auto r = run(seq, kind, 0);
      for (const auto& u : r.units) {
        if (u.state_type != "terminal") continue;
        EXPECT_FALSE(u.success) << u.truth;
        EXPECT_EQ(u.failure, kTerminalState);
      }
    }
  }
}

TEST(Evaluate, AccuracyMonotoneInEta) {
  const auto seq = generated(31, 10, 0.2);
  for (auto kind : {MeasureKind::Levenshtein, MeasureKind::Jaro}) {
    double last = -1;
    for (double eta : {0.0, 1.0, 2.0, 5.0, 50.0}) {
      const auto acc = run(seq, kind, eta).accuracy();
      EXPECT_GE(acc, last);
      last = acc;
    }
  }
}

TEST(Evaluate, ThreadCountDoesNotChangeTheReport) {
  const auto seq = generated(41, 10, 0.3);
  const auto one = render_report(run(seq, MeasureKind::DamerauLevenshtein, 1, 1), ReportFormat::Json);
  const auto many = render_report(run(seq, MeasureKind::DamerauLevenshtein, 1, 8), ReportFormat::Json);
  EXPECT_EQ(one, many);
}

TEST(Evaluate, UnparseableRecordIsADataError) {
  auto seq = generated(51, 4, 0.0);
  seq.records[1].text_str = "(E, (";
  EXPECT_THROW(run(seq, MeasureKind::Levenshtein, 0), DataError);
}
