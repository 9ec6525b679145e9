// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "derivekit/state.hpp"

namespace derivekit {

enum class ActionCategory : std::uint8_t { Self, Symbol, Equation };

std::string_view category_name(ActionCategory c);
std::optional<ActionCategory> parse_category(std::string_view name);

/// Raw transformation. Returns std::nullopt when the action does not apply
/// to its arguments. Index bookkeeping is handled by apply().
using Transform =
    std::function<std::optional<EquationState>(const EquationState&, const Nsa&)>;

struct Action {
  std::string name;
  ActionCategory category = ActionCategory::Self;
  Transform transform;
  std::string summary;
  /// False when the output LHS always equals the input LHS. The search
  /// uses this to skip second hops that cannot reach the target.
  bool rewrites_lhs = false;
  /// False when every symbol of the output already occurs in the input
  /// state or the NSA. The search uses this to skip hops that cannot
  /// supply a symbol the target needs.
  bool introduces_symbols = false;
};

/// True when the NSA variant matches the action category.
bool nsa_matches(ActionCategory c, const Nsa& n);

/// Applies an action. Inapplicable inputs return `s` unchanged. When the
/// RHS changes the LHS index is incremented, except for remove_index and
/// consider_kb_equation which set it explicitly. Throws
/// std::invalid_argument when the NSA variant does not match the category.
EquationState apply(const Action& a, const EquationState& s, const Nsa& n);

/// Returns `eq` as an integrative state with its LHS index reset.
EquationState consider_kb_equation(const EquationState& s, const Nsa& eq);
EquationState remove_index(const EquationState& s);

/// The canonical action set, sorted by name. Names are stable
/// identifiers written to dataset records.
const std::vector<Action>& builtin_action_set();

/// Looks up a builtin action by name.
const Action* find_action(std::string_view name);

inline constexpr std::string_view kConsiderKbEquation = "consider_kb_equation";
inline constexpr std::string_view kRemoveIndex = "remove_index";

}  // namespace derivekit
