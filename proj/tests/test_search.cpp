// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <set>

#include "derivekit/generator.hpp"
#include "derivekit/knowledge_base.hpp"
#include "derivekit/search.hpp"
#include "oracles.hpp"

using namespace derivekit;

namespace {

std::vector<Action> only(std::initializer_list<const char*> names) {
  std::vector<Action> out;
  for (const auto* n : names) out.push_back(*find_action(n));
  return out;
}

struct Unit {
  DerivationUnit unit;
  KnowledgeBase kb;
};

// Units exactly as the evaluator forms them: s_0 is the dummy head and the
// history is s_1..s_{i-1}.
std::vector<Unit> units_of(const Derivation& d, const std::vector<EquationState>& seeds) {
  std::vector<EquationState> states{dummy_head()};
  states.insert(states.end(), d.states.begin(), d.states.end());
  states.push_back(remove_index(d.states.back()));
  std::vector<Unit> out;
  for (std::size_t i = 1; i + 1 < states.size(); ++i) {
    const std::span<const EquationState> hist(states.data() + 1, i - 1);
    out.push_back({{states[i - 1], states[i + 1], states[i]},
                   build_kb(seeds, hist, states[i - 1], states[i + 1])});
  }
  return out;
}

std::vector<EquationState> seeds() {
  return load_kb_file(std::string(DERIVEKIT_DATA_DIR) + "/seeds.kb");
}

void expect_same(const ReconstructResult& a, const ReconstructResult& b) {
  EXPECT_EQ(render_state(a.s_hat), render_state(b.s_hat));
  EXPECT_EQ(a.path.first_action, b.path.first_action);
  EXPECT_EQ(a.path.first_nsa, b.path.first_nsa);
  EXPECT_EQ(render_state(a.path.c_mid), render_state(b.path.c_mid));
  EXPECT_EQ(a.path.second_action, b.path.second_action);
  EXPECT_EQ(a.path.second_nsa, b.path.second_nsa);
  EXPECT_EQ(a.path.heuristic, b.path.heuristic);
  EXPECT_EQ(a.path.end_distance, b.path.end_distance);
  EXPECT_EQ(a.report.early_stop, b.report.early_stop);
}

}  // namespace

TEST(Candidates, SelfActionGivesOne) {
  KnowledgeBase kb;
  kb.symbol_pool = {"a", "b"};
  const auto acts = only({"expand_rhs"});
  const auto c = generate_candidates(parse_state("(E, a*(b + c))"), acts, kb);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].text, "(E^(1), a*b + a*c)");
}

TEST(Candidates, SymbolActionOnePerSymbol) {
  KnowledgeBase kb;
  kb.symbol_pool = {"a", "b"};
  const auto acts = only({"divide_rhs_by_symbol"});
  const auto c = generate_candidates(parse_state("(E, x)"), acts, kb);
  ASSERT_EQ(c.size(), 2u);
  std::set<std::string> texts{c[0].text, c[1].text};
  EXPECT_EQ(texts, (std::set<std::string>{"(E^(1), x/a)", "(E^(1), x/b)"}));
}

TEST(Candidates, NoOpsCollapseToSmallestName) {
  KnowledgeBase kb;
  const auto acts = only({"split_sum", "expand_rhs", "factor_rhs_common_term"});
  const auto c = generate_candidates(parse_state("(E, x)"), acts, kb);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].action->name, "expand_rhs");
  EXPECT_EQ(c[0].text, "(E, x)");
}

TEST(Heuristic, WeightedSquares) {
  HeuristicParams p;
  EXPECT_DOUBLE_EQ(heuristic(HeuristicComponents{1, 2, 0}, p), 500.0);
  const auto s = parse_state("(E, a*b + c)");
  EXPECT_DOUBLE_EQ(heuristic(s, s, p), 0.0);
}

TEST(Heuristic, ComponentsAgainstLevenshteinOracle) {
  const auto c = parse_state("(E, a + b)");
  const auto n = parse_state("(E^(1), a + b + d)");
  const auto r = heuristic_components(c, n, 100);
  EXPECT_EQ(r.x, 1.0);  // d is missing
  EXPECT_EQ(r.y, 0.0);  // a, b, E shared
  // No rendering exceeds the threshold, so z falls back to the whole state.
  EXPECT_EQ(r.z, static_cast<double>(oracle::levenshtein(render_state(c), render_state(n))));
  // Threshold 0 puts every pair in the large bucket and y falls back instead.
  const auto r0 = heuristic_components(c, n, 0);
  EXPECT_EQ(r0.y, r.z);
  EXPECT_EQ(r0.z, 0.0);
}

TEST(Heuristic, SmallBucketIsMinOverPairs) {
  const auto c = parse_state("(E, x*y)");
  const auto n = parse_state("(F, x*z)");
  const auto sc = detail::state_subexpressions(c);
  const auto sn = detail::state_subexpressions(n);
  std::size_t best = SIZE_MAX;
  for (const auto& a : sc) {
    for (const auto& b : sn) best = std::min(best, oracle::levenshtein(a, b));
  }
  EXPECT_EQ(heuristic_components(c, n, 100).y, static_cast<double>(best));
}

TEST(Reconstruct, FindsTheSpecExample) {
  const auto req = std::vector<EquationState>{parse_state("(H, hbar*omega_0)")};
  const DerivationUnit u{dummy_head(), parse_state("(H^(1), hbar*omega_0/2)"),
                         parse_state("(H, hbar*omega_0)")};
  const auto kb = build_kb(req, {}, u.s_prev, u.s_next);
  const auto& acts = builtin_action_set();
  SearchOptions o;
  const auto r = reconstruct(u, acts, kb, o);
  EXPECT_EQ(render_state(r.s_hat), "(H, hbar*omega_0)");
  EXPECT_EQ(r.path.first_action, "consider_kb_equation");
  EXPECT_EQ(r.path.second_action, "divide_rhs_by_2");
  EXPECT_EQ(r.path.end_distance, 0.0);
  EXPECT_TRUE(r.report.early_stop);
  expect_same(r, reconstruct_serial(u, acts, kb, o));
}

TEST(Reconstruct, EmptyActionSetRejected) {
  KnowledgeBase kb;
  const DerivationUnit u{dummy_head(), parse_state("(E, x)"), std::nullopt};
  EXPECT_THROW(reconstruct(u, std::span<const Action>(), kb, SearchOptions{}),
               std::invalid_argument);
}

TEST(Reconstruct, UnreachableTargetUsesGlobalArgmin) {
  const auto acts = only({"divide_rhs_by_2", "multiply_rhs_by_2", "expand_rhs", "swap_sides",
                          "multiply_rhs_by_symbol", "add_symbol_to_both_sides"});
  const DerivationUnit u{parse_state("(E, x + y)"), parse_state("(Q^(5), exp(z)*w)"), std::nullopt};
  const auto kb = build_kb({}, {}, u.s_prev, u.s_next);
  for (auto kind : {MeasureKind::Levenshtein, MeasureKind::DamerauLevenshtein, MeasureKind::Hamming,
                    MeasureKind::Jaro, MeasureKind::JaroWinkler}) {
    SearchOptions o;
    o.measure.kind = kind;
    const auto par = reconstruct(u, acts, kb, o);
    const auto ser = reconstruct_serial(u, acts, kb, o);
    EXPECT_FALSE(par.report.early_stop);
    expect_same(par, ser);
    double best = 1e300;
    for (const auto& p : enumerate_paths(u, acts, kb, o.measure)) best = std::min(best, p.end_distance);
    EXPECT_EQ(par.path.end_distance, best) << measure_name(kind);
    EXPECT_TRUE(par.zero_mids.empty());
  }
}

TEST(Reconstruct, ParallelMatchesSerialOnGeneratedUnits) {
  const auto sd = seeds();
  const auto& acts = builtin_action_set();
  std::size_t units = 0;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    GenConfig g;
    g.seeds = sd;
    g.length = 6;
    g.branch_p = seed % 2 == 0 ? 0.0 : 0.4;
    g.rng = seed;
    const auto d = generate(g, acts);
    for (const auto& [u, kb] : units_of(d, sd)) {
      SearchOptions o;
      o.jobs = 4;
      const auto par = reconstruct(u, acts, kb, o);
      const auto ser = reconstruct_serial(u, acts, kb, o);
      expect_same(par, ser);
      // Every generated unit is reachable by its true path.
      EXPECT_EQ(par.path.end_distance, 0.0);
      EXPECT_TRUE(std::binary_search(par.zero_mids.begin(), par.zero_mids.end(),
                                     render_state(*u.truth)));
      ++units;
    }
  }
  EXPECT_GE(units, 30u);
}

TEST(Reconstruct, ZeroMidsMatchExhaustiveEnumeration) {
  const auto sd = seeds();
  const auto& acts = builtin_action_set();
  GenConfig g;
  g.seeds = sd;
  g.length = 4;
  g.rng = 99;
  const auto d = generate(g, acts);
  for (const auto& [u, kb] : units_of(d, sd)) {
    Measure m;
    std::set<std::string> want;
    for (const auto& p : enumerate_paths(u, acts, kb, m)) {
      if (p.end_distance == 0.0) want.insert(p.mid);
    }
    SearchOptions o;
    const auto r = reconstruct(u, acts, kb, o);
    EXPECT_EQ(r.zero_mids, std::vector<std::string>(want.begin(), want.end()));
    EXPECT_EQ(r.report.zero_distance_mids, want.size());
  }
}

TEST(Reconstruct, IndependentOfThreadCount) {
  const auto sd = seeds();
  const auto& acts = builtin_action_set();
  GenConfig g;
  g.seeds = sd;
  g.length = 5;
  g.rng = 7;
  const auto d = generate(g, acts);
  for (const auto& [u, kb] : units_of(d, sd)) {
    SearchOptions one;
    one.jobs = 1;
    const auto base = reconstruct(u, acts, kb, one);
    for (int jobs : {2, 3, 8}) {
      SearchOptions o;
      o.jobs = jobs;
      expect_same(reconstruct(u, acts, kb, o), base);
    }
  }
}
