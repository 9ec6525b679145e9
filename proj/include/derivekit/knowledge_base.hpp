// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "derivekit/actions.hpp"
#include "derivekit/state.hpp"

namespace derivekit {

/// K = L ∪ R for one derivation unit. Immutable once built.
struct KnowledgeBase {
  SymbolSet symbol_pool;                    // L
  std::vector<EquationState> equation_pool;  // R: requisite first, then history

  [[nodiscard]] std::size_t size() const { return symbol_pool.size() + equation_pool.size(); }
};

SymbolSet symmetric_difference(const SymbolSet& a, const SymbolSet& b);

/// Appends `states` to `pool`, skipping placeholders and anything already
/// present up to the LHS index.
void append_unique(std::vector<EquationState>& pool, std::span<const EquationState> states);

/// R = requisite ∪ history (deduplicated up to the LHS index),
/// L = symbols(R) ∪ (symbols(s_prev) △ symbols(s_next)).
/// States containing the placeholder (the dummy head) never enter R.
KnowledgeBase build_kb(std::span<const EquationState> requisite,
                       std::span<const EquationState> history, const EquationState& s_prev,
                       const EquationState& s_next);

/// None for self-state, one per symbol of L, one per equation of R.
std::vector<Nsa> nsa_candidates(const KnowledgeBase& kb, ActionCategory category);

/// Reads "LHS = RHS" per line. Blank lines and '#' comments are skipped.
/// Throws DataError naming the line on a parse failure.
std::vector<EquationState> load_kb_file(const std::filesystem::path& path);
std::vector<EquationState> parse_kb_text(std::string_view text, std::string_view origin = "<kb>");

}  // namespace derivekit
