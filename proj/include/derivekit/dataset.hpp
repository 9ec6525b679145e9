// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "derivekit/actions.hpp"
#include "derivekit/errors.hpp"
#include "derivekit/state.hpp"

namespace derivekit {

/// One dataset row. Strings are kept verbatim; lengths count code points.
struct DerivationRecord {
  std::size_t latex_len = 0;
  std::string latex_str;
  std::size_t text_len = 0;
  std::string text_str;
  std::size_t tree_len = 0;
  std::string tree_str;
  std::string action;
  std::string nsa;
  std::string state_type;
  std::string action_type;

  bool operator==(const DerivationRecord&) const = default;
};

/// Records s_1..s_n. The head (x, ?) is implicit. The tail is either
/// given explicitly (a final "dummy" row on disk) or derived as the last
/// state with its LHS index removed.
struct DerivationSequence {
  std::vector<DerivationRecord> records;
  std::optional<std::string> explicit_tail;

  [[nodiscard]] std::size_t state_count() const { return records.size() + 2; }
};

/// Fills the three string columns and their lengths from a state.
DerivationRecord make_record(const EquationState& s, std::string action, std::string nsa,
                             StateType type, ActionCategory category);

std::string escape_field(std::string_view raw);
/// Throws DataError on a dangling or unknown escape.
std::string unescape_field(std::string_view field);

DerivationSequence load_dataset(const std::filesystem::path& path);
DerivationSequence parse_dataset(std::string_view text, std::string_view origin = "<dataset>");
void save_dataset(const DerivationSequence& seq, const std::filesystem::path& path);
std::string format_dataset(const DerivationSequence& seq);

/// Lowercases and maps spaces/hyphens to '_'. Both the short and the
/// spelled-out "consider knowledge base equation" map to the same name.
std::string normalize_action_name(std::string_view name);
bool is_consider_kb(std::string_view action_name);

/// Recomputes state_type for every record from the action column.
/// Integrative wins over terminal, terminal over consequent.
DerivationSequence categorize(DerivationSequence seq);

/// Text renderings s_0..s_{n+1}, dummies included. Opaque: no parsing
/// except to derive a missing tail.
std::vector<std::string> state_strings(const DerivationSequence& seq);
std::string tail_string(const DerivationSequence& seq);

/// Parsed states s_0..s_{n+1}. Types come from the state_type column.
/// Throws DataError naming the row for unparseable text.
std::vector<EquationState> parsed_states(const DerivationSequence& seq);

struct LengthStats {
  std::size_t min = 0;
  std::size_t max = 0;
  double mean = 0.0;
};

struct Census {
  std::size_t records = 0;
  std::map<std::string, std::size_t> by_state_type;
  std::map<std::pair<std::string, std::string>, std::size_t> cells;  // (state, action type)
  LengthStats latex;
  LengthStats text;
  LengthStats tree;
};

Census census(const DerivationSequence& seq);

/// Consistency problems (stored vs recomputed state types, unknown action
/// types). Empty means valid.
std::vector<std::string> validate(const DerivationSequence& seq);

inline constexpr std::string_view kHeader =
    "latex_len\tlatex_str\ttext_len\ttext_str\ttree_len\ttree_str\taction\tnsa\tstate_type\t"
    "action_type";

}  // namespace derivekit
