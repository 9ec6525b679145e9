// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "derivekit/state.hpp"

#include "parser.hpp"

namespace derivekit {

namespace {

std::string text_lhs(const EquationState& s) {
  if (s.lhs_index == 0) return s.lhs.text();
  const bool atomic = s.lhs.kind() == Kind::Symbol || s.lhs.kind() == Kind::Function ||
                      s.lhs.kind() == Kind::Placeholder ||
                      (s.lhs.kind() == Kind::Integer && !s.lhs.value().is_negative());
  const std::string base = atomic ? s.lhs.text() : "(" + s.lhs.text() + ")";
  return base + "^(" + std::to_string(s.lhs_index) + ")";
}

std::string latex_lhs(const EquationState& s) {
  auto base = render(s.lhs, RenderForm::Latex);
  if (s.lhs_index == 0) return base;
  if (s.lhs.kind() != Kind::Symbol || base.find('^') != std::string::npos) {
    base = "\\left(" + base + "\\right)";
  }
  return base + "^{(" + std::to_string(s.lhs_index) + ")}";
}

}  // namespace

std::string_view state_type_name(StateType t) {
  switch (t) {
    case StateType::Integrative:
      return "integrative";
    case StateType::Consequent:
      return "consequent";
    case StateType::Terminal:
      return "terminal";
    case StateType::Dummy:
      return "dummy";
  }
  return "unknown";
}

std::optional<StateType> parse_state_type(std::string_view name) {
  if (name == "integrative") return StateType::Integrative;
  if (name == "consequent") return StateType::Consequent;
  if (name == "terminal") return StateType::Terminal;
  if (name == "dummy") return StateType::Dummy;
  return std::nullopt;
}

std::string render_state(const EquationState& s, RenderForm form) {
  switch (form) {
    case RenderForm::Text:
      return "(" + text_lhs(s) + ", " + s.rhs.text() + ")";
    case RenderForm::Latex:
      return latex_lhs(s) + " = " + render(s.rhs, RenderForm::Latex);
    case RenderForm::Tree: {
      auto lhs = render(s.lhs, RenderForm::Tree);
      if (s.lhs_index > 0) {
        lhs = "Indexed(" + lhs + ", Integer(" + std::to_string(s.lhs_index) + "))";
      }
      return "Tuple(" + lhs + ", " + render(s.rhs, RenderForm::Tree) + ")";
    }
  }
  return {};
}

std::string render_state_unindexed(const EquationState& s) {
  return "(" + s.lhs.text() + ", " + s.rhs.text() + ")";
}

EquationState parse_state(std::string_view text) {
  auto p = detail::parse_state_tuple(text);
  return EquationState{std::move(p.lhs), std::move(p.rhs), p.lhs_index, StateType::Consequent};
}

EquationState parse_equation(std::string_view text) {
  auto p = detail::parse_equation_line(text);
  return EquationState{std::move(p.lhs), std::move(p.rhs), p.lhs_index, StateType::Consequent};
}

EquationState dummy_head() {
  return EquationState{symbol("x"), placeholder(), 0, StateType::Dummy};
}

SymbolSet symbols_of(const EquationState& s) {
  auto out = symbols_of(s.lhs);
  out.merge(symbols_of(s.rhs));
  return out;
}

double state_distance(const Measure& m, const EquationState& a, const EquationState& b) {
  return distance(m, render_state(a), render_state(b));
}

std::string Nsa::render() const {
  switch (value_.index()) {
    case 1:
      return symbol_name();
    case 2:
      return render_state(equation_state());
    default:
      return "None";
  }
}

Nsa Nsa::parse(std::string_view text) {
  if (text == "None" || text.empty()) return {};
  if (text.front() == '(') return equation(parse_state(text));
  const Expr e = derivekit::parse(text);
  if (e.kind() != Kind::Symbol) throw ParseError("NSA must be None, a symbol or a state tuple", 1);
  return Nsa::symbol(e.name());
}

}  // namespace derivekit
