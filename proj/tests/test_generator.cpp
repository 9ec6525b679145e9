// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "derivekit/eval.hpp"
#include "derivekit/generator.hpp"

using namespace derivekit;

namespace {

GenConfig config(std::uint64_t rng, std::size_t length, double branch_p) {
  GenConfig g;
  g.seeds = load_kb_file(std::string(DERIVEKIT_DATA_DIR) + "/seeds.kb");
  g.length = length;
  g.branch_p = branch_p;
  g.rng = rng;
  return g;
}

}  // namespace

TEST(Generate, SameSeedSameDerivation) {
  const auto& acts = builtin_action_set();
  const auto a = generate(config(9, 15, 0.2), acts).to_sequence();
  const auto b = generate(config(9, 15, 0.2), acts).to_sequence();
  EXPECT_EQ(format_dataset(a), format_dataset(b));
  const auto c = generate(config(10, 15, 0.2), acts).to_sequence();
  EXPECT_NE(format_dataset(a), format_dataset(c));
}

TEST(Generate, NoBranchingMeansOneIntegrative) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto seq = generate(config(seed, 12, 0.0), builtin_action_set()).to_sequence();
    ASSERT_EQ(seq.records.size(), 12u);
    EXPECT_EQ(seq.records[0].state_type, "integrative");
    for (std::size_t i = 1; i < seq.records.size(); ++i) {
      EXPECT_EQ(seq.records[i].state_type, "consequent");
    }
  }
}

TEST(Generate, AuditIsCleanAndRecordsValidate) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto d = generate(config(seed, 20, 0.3), builtin_action_set());
    EXPECT_TRUE(audit(d).empty()) << audit(d).front();
    const auto seq = d.to_sequence();
    EXPECT_TRUE(validate(seq).empty());
    EXPECT_EQ(parse_dataset(format_dataset(seq)).records, seq.records);
    for (const auto& s : d.states) {
      EXPECT_LE(code_point_count(render(s.lhs)), 100u);
      EXPECT_LE(code_point_count(render(s.rhs)), 100u);
    }
  }
}

TEST(Generate, AuditCatchesTampering) {
  auto d = generate(config(3, 6, 0.0), builtin_action_set());
  d.states[3] = d.states[2];
  EXPECT_FALSE(audit(d).empty());
}

TEST(Generate, ShortWalkIsReconstructable) {
  const auto seq = generate(config(4, 3, 0.0), builtin_action_set()).to_sequence();
  EvalConfig cfg;
  const auto sd = load_kb_file(std::string(DERIVEKIT_DATA_DIR) + "/seeds.kb");
  const auto r = evaluate(seq, builtin_action_set(), sd, cfg);
  for (const auto& u : r.units) EXPECT_EQ(u.end_distance, 0.0) << u.truth;
}

TEST(Generate, InvalidArgumentsAndStalls) {
  const auto& acts = builtin_action_set();
  auto g = config(1, 2, 0.0);
  EXPECT_THROW(generate(g, acts), std::invalid_argument);
  g = config(1, 5, 0.0);
  g.seeds.clear();
  EXPECT_THROW(generate(g, acts), std::invalid_argument);
  std::vector<Action> no_consider{*find_action("expand_rhs")};
  EXPECT_THROW(generate(config(1, 5, 0.0), no_consider), std::invalid_argument);

  std::vector<Action> stuck{*find_action("consider_kb_equation"), *find_action("split_sum")};
  g = config(1, 5, 0.0);
  g.seeds = {parse_equation("E = x")};
  try {
    generate(g, stuck);
    FAIL();
  } catch (const GenerationStalled& e) {
    EXPECT_EQ(render_state(e.state()), "(E, x)");
  }
}
