// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "derivekit/expr.hpp"
#include "derivekit/similarity.hpp"

namespace derivekit {

enum class StateType : std::uint8_t { Integrative, Consequent, Terminal, Dummy };

std::string_view state_type_name(StateType t);
std::optional<StateType> parse_state_type(std::string_view name);

/// One equational state: an (LHS, RHS) tuple plus the LHS index k that
/// renders as H^(k). The type tag is metadata and does not take part in
/// rendering or comparison.
struct EquationState {
  Expr lhs;
  Expr rhs;
  std::uint32_t lhs_index = 0;
  StateType type = StateType::Consequent;
};

/// "(LHS^(k), RHS)" in text form; "LHS^{(k)} = RHS" in LaTeX;
/// "Tuple(...)" in tree form.
std::string render_state(const EquationState& s, RenderForm form = RenderForm::Text);
/// Rendering with the LHS index dropped; the key for "equal up to the
/// LHS index".
std::string render_state_unindexed(const EquationState& s);

/// Parses the tuple text form.
EquationState parse_state(std::string_view text);
/// Parses "LHS = RHS" (the knowledge-base line form).
EquationState parse_equation(std::string_view text);

/// The dummy head state (x, ?).
EquationState dummy_head();

[[nodiscard]] inline bool same_state(const EquationState& a, const EquationState& b) {
  return a.lhs_index == b.lhs_index && a.lhs == b.lhs && a.rhs == b.rhs;
}

SymbolSet symbols_of(const EquationState& s);

/// M applied to the text renderings of the two states.
double state_distance(const Measure& m, const EquationState& a, const EquationState& b);

/// Non-state argument of an action: nothing, a symbol, or an equation.
class Nsa {
 public:
  Nsa() = default;
  static Nsa symbol(std::string name) { return Nsa(Value(std::in_place_index<1>, std::move(name))); }
  static Nsa equation(EquationState eq) { return Nsa(Value(std::in_place_index<2>, std::move(eq))); }

  [[nodiscard]] bool is_none() const { return value_.index() == 0; }
  [[nodiscard]] bool is_symbol() const { return value_.index() == 1; }
  [[nodiscard]] bool is_equation() const { return value_.index() == 2; }
  [[nodiscard]] const std::string& symbol_name() const { return std::get<1>(value_); }
  [[nodiscard]] const EquationState& equation_state() const { return std::get<2>(value_); }

  /// "None", the symbol name, or the equation's tuple text.
  [[nodiscard]] std::string render() const;
  /// Inverse of render().
  static Nsa parse(std::string_view text);

 private:
  using Value = std::variant<std::monostate, std::string, EquationState>;
  explicit Nsa(Value v) : value_(std::move(v)) {}
  Value value_;
};

}  // namespace derivekit
