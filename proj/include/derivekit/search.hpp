// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "derivekit/actions.hpp"
#include "derivekit/knowledge_base.hpp"
#include "derivekit/similarity.hpp"
#include "derivekit/state.hpp"

namespace derivekit {

struct HeuristicParams {
  double n1 = 10.0;
  double n2 = 10.0;
  double n3 = 10.0;
  std::size_t threshold = 100;  // characters, applied to each rendering
};

struct HeuristicComponents {
  double x = 0.0;  // symbols of s_next missing from c
  double y = 0.0;  // best Levenshtein over small subexpression pairs
  double z = 0.0;  // best Levenshtein over large subexpression pairs
};

/// {s_prev, s_i, s_next} with s_i optional (present when evaluating).
struct DerivationUnit {
  EquationState s_prev;
  EquationState s_next;
  std::optional<EquationState> truth;
};

struct Candidate {
  const Action* action = nullptr;
  Nsa nsa;
  std::string nsa_text;
  EquationState state;
  std::string text;  // render_state(state)
};

struct CandidatePath {
  std::string first_action;
  std::string first_nsa;
  EquationState c_mid;
  std::string second_action;
  std::string second_nsa;
  EquationState c_end;
  HeuristicComponents components;
  double heuristic = 0.0;
  double end_distance = 0.0;
};

/// Scheduling-independent counters only.
struct SearchReport {
  std::size_t first_hop_candidates = 0;
  std::size_t distinct_mids = 0;
  std::size_t zero_distance_mids = 0;
  bool early_stop = false;  // an exact end path existed, full scoring skipped
};

struct ReconstructResult {
  EquationState s_hat;
  CandidatePath path;
  SearchReport report;
  /// Renderings of every c_mid that has an exact end path, sorted.
  std::vector<std::string> zero_mids;
};

struct SearchOptions {
  Measure measure;
  HeuristicParams params;
  int jobs = 0;  // 0 resolves through resolve_jobs()
};

/// One entry per (action, matching NSA); Convention-5 no-ops collapse to
/// the representative with the smallest (action name, NSA rendering).
/// Sorted by (action name, NSA rendering).
std::vector<Candidate> generate_candidates(const EquationState& s_prev,
                                           std::span<const Action> actions,
                                           const KnowledgeBase& kb);

HeuristicComponents heuristic_components(const EquationState& c, const EquationState& s_next,
                                         std::size_t threshold);
double heuristic(const HeuristicComponents& r, const HeuristicParams& p);
double heuristic(const EquationState& c, const EquationState& s_next, const HeuristicParams& p);

/// Returns the path minimizing (M(c_end, s_next), H(c_mid), first action,
/// first NSA, second action, second NSA). That is the same path as
/// expanding in heuristic order and stopping at the first exact end.
/// OpenMP-parallel; the answer does not depend on the worker count.
ReconstructResult reconstruct(const DerivationUnit& unit, std::span<const Action> actions,
                              const KnowledgeBase& kb, const SearchOptions& opts);

/// Straightforward sequential reference: every path in heuristic order,
/// early stop on the first exact end. No pruning. zero_mids stays empty.
ReconstructResult reconstruct_serial(const DerivationUnit& unit, std::span<const Action> actions,
                                     const KnowledgeBase& kb, const SearchOptions& opts);

struct PathRecord {
  std::string first_action;
  std::string first_nsa;
  std::string mid;
  std::string second_action;
  std::string second_nsa;
  std::string end;
  double end_distance = 0.0;
};

/// Every two-hop path, unsorted and unpruned. Slow; meant for tests.
std::vector<PathRecord> enumerate_paths(const DerivationUnit& unit,
                                        std::span<const Action> actions, const KnowledgeBase& kb,
                                        const Measure& m);

namespace detail {
/// Subexpression renderings of both sides, deduplicated.
std::vector<std::string> state_subexpressions(const EquationState& s);
}  // namespace detail

}  // namespace derivekit
