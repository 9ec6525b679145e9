// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "derivekit/actions.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace derivekit {

namespace {

// Outputs larger than this are treated as inapplicable so that candidate
// generation stays bounded.
constexpr std::size_t kMaxNodes = 4000;
constexpr std::size_t kMaxExpandedTerms = 256;

using Result = std::optional<EquationState>;

bool usable(const EquationState& s) { return !s.lhs.has_placeholder() && !s.rhs.has_placeholder(); }

Result with_rhs(const EquationState& s, Expr rhs) {
  if (rhs.node_count() > kMaxNodes) return std::nullopt;
  EquationState out = s;
  out.rhs = std::move(rhs);
  return out;
}

Result with_sides(const EquationState& s, Expr lhs, Expr rhs) {
  if (rhs.node_count() > kMaxNodes || lhs.node_count() > kMaxNodes) return std::nullopt;
  EquationState out = s;
  out.lhs = std::move(lhs);
  out.rhs = std::move(rhs);
  return out;
}

Expr reciprocal(const Expr& e) { return power(e, integer(-1)); }

// ---------------------------------------------------------------------------
// Numeric folding helpers

std::optional<Rational> numeric_value(const Expr& e) {
  switch (e.kind()) {
    case Kind::Integer:
    case Kind::Rational:
      return e.value();
    case Kind::Power: {
      const auto base = numeric_value(e.children()[0]);
      const auto& exp = e.children()[1];
      if (!base || exp.kind() != Kind::Integer) return std::nullopt;
      return base->pow(exp.value().num());
    }
    case Kind::Product: {
      Rational acc(1);
      for (const auto& f : e.children()) {
        const auto v = numeric_value(f);
        if (!v) return std::nullopt;
        const auto next = acc.mul(*v);
        if (!next) return std::nullopt;
        acc = *next;
      }
      return acc;
    }
    default:
      return std::nullopt;
  }
}

/// p/q as factors: p (omitted when 1) and q^-1 (omitted when 1).
std::vector<Expr> coefficient_factors(const Rational& r) {
  std::vector<Expr> out;
  if (r.num() != 1) out.push_back(integer(r.num()));
  if (r.den() != 1) out.push_back(reciprocal(integer(r.den())));
  return out;
}

Expr coefficient_expr(const Rational& r) { return product(coefficient_factors(r)); }

struct Overflow {};

Expr fold_numbers(const Expr& e) {
  if (e.is_leaf()) return e;
  std::vector<Expr> kids;
  kids.reserve(e.children().size());
  for (const auto& c : e.children()) kids.push_back(fold_numbers(c));

  switch (e.kind()) {
    case Kind::Product:
    case Kind::NcProduct: {
      Rational coef(1);
      std::vector<Expr> rest;
      for (auto& k : kids) {
        if (auto v = numeric_value(k)) {
          auto next = coef.mul(*v);
          if (!next) throw Overflow{};
          coef = *next;
        } else {
          rest.push_back(std::move(k));
        }
      }
      if (coef.is_zero()) return integer(0);
      auto factors = coefficient_factors(coef);
      if (e.kind() == Kind::NcProduct) {
        factors.push_back(nc_product(std::move(rest)));
      } else {
        factors.insert(factors.end(), rest.begin(), rest.end());
      }
      return product(std::move(factors));
    }
    case Kind::Sum: {
      Rational constant(0);
      std::vector<Expr> rest;
      for (auto& k : kids) {
        if (auto v = numeric_value(k)) {
          auto next = constant.add(*v);
          if (!next) throw Overflow{};
          constant = *next;
        } else {
          rest.push_back(std::move(k));
        }
      }
      if (!constant.is_zero()) rest.push_back(coefficient_expr(constant));
      return sum(std::move(rest));
    }
    case Kind::Power: {
      if (auto v = numeric_value(power(kids[0], kids[1]))) return coefficient_expr(*v);
      if (kids[1].kind() == Kind::Integer) {
        if (kids[1].value().is_one()) return kids[0];
        if (kids[1].value().is_zero()) return integer(1);
      }
      return power(kids[0], kids[1]);
    }
    default:
      return with_children(e, std::move(kids));
  }
}

/// Splits a term into numeric coefficient and the remaining factor.
std::pair<Rational, std::optional<Expr>> split_coefficient(const Expr& term) {
  if (auto v = numeric_value(term)) return {*v, std::nullopt};
  if (term.kind() != Kind::Product) return {Rational(1), term};
  Rational coef(1);
  std::vector<Expr> rest;
  for (const auto& f : term.children()) {
    if (auto v = numeric_value(f)) {
      auto next = coef.mul(*v);
      if (!next) throw Overflow{};
      coef = *next;
    } else {
      rest.push_back(f);
    }
  }
  return {coef, product(std::move(rest))};
}

Expr collect_terms(const Expr& e) {
  if (e.is_leaf()) return e;
  std::vector<Expr> kids;
  for (const auto& c : e.children()) kids.push_back(collect_terms(c));
  if (e.kind() != Kind::Sum) return with_children(e, std::move(kids));

  std::vector<std::string> order;
  std::map<std::string, std::pair<Rational, std::optional<Expr>>> groups;
  for (const auto& k : kids) {
    auto [coef, rest] = split_coefficient(k);
    const std::string key = rest ? rest->text() : std::string();
    auto [it, fresh] = groups.try_emplace(key, Rational(0), rest);
    if (fresh) order.push_back(key);
    auto next = it->second.first.add(coef);
    if (!next) throw Overflow{};
    it->second.first = *next;
  }
  std::vector<Expr> terms;
  for (const auto& key : order) {
    const auto& [coef, rest] = groups.at(key);
    if (coef.is_zero()) continue;
    auto factors = coefficient_factors(coef);
    if (rest) factors.push_back(*rest);
    terms.push_back(factors.empty() ? integer(1) : product(std::move(factors)));
  }
  return sum(std::move(terms));
}

// ---------------------------------------------------------------------------
// Expansion and factoring

Expr expand(const Expr& e) {
  if (e.is_leaf()) return e;
  std::vector<Expr> kids;
  for (const auto& c : e.children()) kids.push_back(expand(c));
  if (e.kind() != Kind::Product && e.kind() != Kind::NcProduct) {
    return with_children(e, std::move(kids));
  }
  std::vector<std::vector<Expr>> terms{{}};
  for (const auto& k : kids) {
    if (k.kind() == Kind::Sum) {
      std::vector<std::vector<Expr>> next;
      next.reserve(terms.size() * k.children().size());
      for (const auto& t : terms) {
        for (const auto& addend : k.children()) {
          auto grown = t;
          grown.push_back(addend);
          next.push_back(std::move(grown));
        }
      }
      if (next.size() > kMaxExpandedTerms) throw Overflow{};
      terms = std::move(next);
    } else {
      for (auto& t : terms) t.push_back(k);
    }
  }
  std::vector<Expr> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    out.push_back(e.kind() == Kind::Product ? product(std::move(t)) : nc_product(std::move(t)));
  }
  return sum(std::move(out));
}

std::vector<Expr> factors_of(const Expr& term) {
  if (term.kind() == Kind::Product) return {term.children().begin(), term.children().end()};
  return {term};
}

std::optional<Expr> factor_common(const Expr& e) {
  if (e.kind() != Kind::Sum) return std::nullopt;
  // Multiset intersection of factor renderings across all terms.
  std::map<std::string, std::pair<std::size_t, Expr>> common;
  bool first = true;
  for (const auto& term : e.children()) {
    std::map<std::string, std::pair<std::size_t, Expr>> here;
    for (const auto& f : factors_of(term)) {
      auto [it, fresh] = here.try_emplace(f.text(), 0, f);
      ++it->second.first;
    }
    if (first) {
      common = std::move(here);
      first = false;
      continue;
    }
    for (auto it = common.begin(); it != common.end();) {
      auto h = here.find(it->first);
      if (h == here.end()) {
        it = common.erase(it);
      } else {
        it->second.first = std::min(it->second.first, h->second.first);
        ++it;
      }
    }
  }
  if (common.empty()) return std::nullopt;
  std::vector<Expr> pulled;
  for (const auto& [_, entry] : common) {
    for (std::size_t i = 0; i < entry.first; ++i) pulled.push_back(entry.second);
  }
  std::vector<Expr> remainders;
  for (const auto& term : e.children()) {
    auto budget = common;
    std::vector<Expr> rest;
    for (const auto& f : factors_of(term)) {
      auto it = budget.find(f.text());
      if (it != budget.end() && it->second.first > 0) {
        --it->second.first;
      } else {
        rest.push_back(f);
      }
    }
    remainders.push_back(product(std::move(rest)));
  }
  pulled.push_back(sum(std::move(remainders)));
  return product(std::move(pulled));
}

// ---------------------------------------------------------------------------
// Summation helpers

bool is_sum_over(const Expr& e) {
  return e.kind() == Kind::Function && e.name() == "Sum" && e.children().size() == 2 &&
         e.children()[1].kind() == Kind::Symbol;
}

Expr split_sums(const Expr& e, bool& changed) {
  if (e.is_leaf()) return e;
  std::vector<Expr> kids;
  for (const auto& c : e.children()) kids.push_back(split_sums(c, changed));
  if (is_sum_over(e) && kids[0].kind() == Kind::Sum) {
    changed = true;
    std::vector<Expr> parts;
    for (const auto& t : kids[0].children()) parts.push_back(function("Sum", {t, kids[1]}));
    return sum(std::move(parts));
  }
  return with_children(e, std::move(kids));
}

Expr rename_indices(const Expr& e, const Expr& index, bool& changed) {
  if (e.is_leaf()) return e;
  bool below = false;
  std::vector<Expr> kids;
  kids.reserve(e.children().size());
  for (const auto& c : e.children()) kids.push_back(rename_indices(c, index, below));
  if (is_sum_over(e) && !(kids[1] == index)) {
    changed = true;
    return function("Sum", {replace_all(kids[0], kids[1], index), index});
  }
  if (!below) return e;
  changed = true;
  return with_children(e, std::move(kids));
}

// ---------------------------------------------------------------------------
// Transforms

Result expand_rhs(const EquationState& s, const Nsa&) {
  if (!usable(s)) return std::nullopt;
  return with_rhs(s, expand(s.rhs));
}

Result factor_rhs_common_term(const EquationState& s, const Nsa&) {
  if (!usable(s)) return std::nullopt;
  auto f = factor_common(s.rhs);
  if (!f) return std::nullopt;
  return with_rhs(s, *f);
}

Result remove_index_transform(const EquationState& s, const Nsa&) {
  EquationState out = s;
  out.lhs_index = 0;
  return out;
}

Result swap_sides(const EquationState& s, const Nsa&) {
  if (!usable(s) || s.lhs == s.rhs) return std::nullopt;
  return with_sides(s, s.rhs, s.lhs);
}

Result simplify_rationals(const EquationState& s, const Nsa&) {
  if (!usable(s)) return std::nullopt;
  return with_rhs(s, fold_numbers(s.rhs));
}

Result collect_like_terms(const EquationState& s, const Nsa&) {
  if (!usable(s)) return std::nullopt;
  return with_rhs(s, collect_terms(s.rhs));
}

Result split_sum(const EquationState& s, const Nsa&) {
  if (!usable(s)) return std::nullopt;
  bool changed = false;
  auto rhs = split_sums(s.rhs, changed);
  if (!changed) return std::nullopt;
  return with_rhs(s, std::move(rhs));
}

Result divide_rhs_by_2(const EquationState& s, const Nsa&) {
  if (!usable(s)) return std::nullopt;
  return with_rhs(s, product({s.rhs, reciprocal(integer(2))}));
}

Result multiply_rhs_by_2(const EquationState& s, const Nsa&) {
  if (!usable(s)) return std::nullopt;
  return with_rhs(s, product({integer(2), s.rhs}));
}

Result divide_rhs_by_symbol(const EquationState& s, const Nsa& n) {
  if (!usable(s)) return std::nullopt;
  return with_rhs(s, product({s.rhs, reciprocal(symbol(n.symbol_name()))}));
}

Result multiply_rhs_by_symbol(const EquationState& s, const Nsa& n) {
  if (!usable(s)) return std::nullopt;
  return with_rhs(s, product({symbol(n.symbol_name()), s.rhs}));
}

Result add_symbol_to_both_sides(const EquationState& s, const Nsa& n) {
  if (!usable(s)) return std::nullopt;
  const auto x = symbol(n.symbol_name());
  return with_sides(s, sum({s.lhs, x}), sum({s.rhs, x}));
}

Result subtract_symbol_from_both_sides(const EquationState& s, const Nsa& n) {
  if (!usable(s)) return std::nullopt;
  const auto x = negate(symbol(n.symbol_name()));
  return with_sides(s, sum({s.lhs, x}), sum({s.rhs, x}));
}

Result substitute_index_symbol(const EquationState& s, const Nsa& n) {
  if (!usable(s) || s.rhs.text().find("Sum(") == std::string::npos) return std::nullopt;
  if (symbols_of(s.rhs).contains(n.symbol_name())) return std::nullopt;
  bool changed = false;
  auto rhs = rename_indices(s.rhs, symbol(n.symbol_name()), changed);
  if (!changed) return std::nullopt;
  return with_rhs(s, std::move(rhs));
}

Result sum_over_symbol(const EquationState& s, const Nsa& n) {
  if (!usable(s) || !symbols_of(s.rhs).contains(n.symbol_name())) return std::nullopt;
  return with_rhs(s, function("Sum", {s.rhs, symbol(n.symbol_name())}));
}

Result consider_kb_transform(const EquationState&, const Nsa& n) {
  const auto& eq = n.equation_state();
  if (!usable(eq)) return std::nullopt;
  return EquationState{eq.lhs, eq.rhs, 0, StateType::Integrative};
}

Result substitute_equation(const EquationState& s, const Nsa& n) {
  const auto& eq = n.equation_state();
  if (!usable(s) || !usable(eq) || eq.lhs == eq.rhs) return std::nullopt;
  bool found = false;
  auto rhs = replace_all(s.rhs, eq.lhs, eq.rhs, &found);
  if (!found) rhs = replace_all(s.rhs, eq.rhs, eq.lhs, &found);
  if (!found) return std::nullopt;
  return with_rhs(s, std::move(rhs));
}

Result add_equation_rhs(const EquationState& s, const Nsa& n) {
  const auto& eq = n.equation_state();
  if (!usable(s) || !usable(eq)) return std::nullopt;
  return with_rhs(s, sum({s.rhs, eq.rhs}));
}

Result subtract_equation_rhs(const EquationState& s, const Nsa& n) {
  const auto& eq = n.equation_state();
  if (!usable(s) || !usable(eq)) return std::nullopt;
  return with_rhs(s, sum({s.rhs, negate(eq.rhs)}));
}

Result multiply_rhs_by_equation_rhs(const EquationState& s, const Nsa& n) {
  const auto& eq = n.equation_state();
  if (!usable(s) || !usable(eq)) return std::nullopt;
  if (s.rhs.has_nc_product() || eq.rhs.has_nc_product()) {
    return with_rhs(s, nc_product({s.rhs, eq.rhs}));
  }
  return with_rhs(s, product({s.rhs, eq.rhs}));
}

Result divide_rhs_by_equation_rhs(const EquationState& s, const Nsa& n) {
  const auto& eq = n.equation_state();
  // Operator-valued (non-commutative) right-hand sides have no inverse here.
  if (!usable(s) || !usable(eq) || eq.rhs.has_nc_product()) return std::nullopt;
  if (auto v = numeric_value(eq.rhs); v && v->is_zero()) return std::nullopt;
  return with_rhs(s, product({s.rhs, reciprocal(eq.rhs)}));
}

template <Result (*F)(const EquationState&, const Nsa&)>
Transform guarded() {
  return [](const EquationState& s, const Nsa& n) -> Result {
    try {
      return F(s, n);
    } catch (const Overflow&) {
      return std::nullopt;
    }
  };
}

std::vector<Action> make_builtin() {
  using C = ActionCategory;
  std::vector<Action> set = {
      {"expand_rhs", C::Self, guarded<expand_rhs>(), "distribute products over sums in the RHS"},
      {"factor_rhs_common_term", C::Self, guarded<factor_rhs_common_term>(),
       "pull factors shared by every RHS term out of the sum"},
      {"remove_index", C::Self, guarded<remove_index_transform>(), "reset the LHS index to 0"},
      {"swap_sides", C::Self, guarded<swap_sides>(), "exchange LHS and RHS", true},
      {"simplify_rationals", C::Self, guarded<simplify_rationals>(),
       "fold numeric factors and constant terms in the RHS"},
      {"collect_like_terms", C::Self, guarded<collect_like_terms>(),
       "combine RHS terms that differ only by a numeric coefficient"},
      {"split_sum", C::Self, guarded<split_sum>(), "distribute Sum(a + b, i) over its terms"},
      {"divide_rhs_by_2", C::Self, guarded<divide_rhs_by_2>(), "divide the RHS by 2"},
      {"multiply_rhs_by_2", C::Self, guarded<multiply_rhs_by_2>(), "multiply the RHS by 2"},
      {"divide_rhs_by_symbol", C::Symbol, guarded<divide_rhs_by_symbol>(),
       "divide the RHS by the symbol"},
      {"multiply_rhs_by_symbol", C::Symbol, guarded<multiply_rhs_by_symbol>(),
       "multiply the RHS by the symbol"},
      {"add_symbol_to_both_sides", C::Symbol, guarded<add_symbol_to_both_sides>(),
       "add the symbol to LHS and RHS", true},
      {"subtract_symbol_from_both_sides", C::Symbol, guarded<subtract_symbol_from_both_sides>(),
       "subtract the symbol from LHS and RHS", true},
      {"substitute_index_symbol", C::Symbol, guarded<substitute_index_symbol>(),
       "rename the bound index of every Sum in the RHS to the symbol"},
      {"sum_over_symbol", C::Symbol, guarded<sum_over_symbol>(),
       "wrap the RHS in Sum(RHS, symbol)"},
      {"consider_kb_equation", C::Equation, guarded<consider_kb_transform>(),
       "start a new branch from a knowledge-base or history equation", true},
      {"substitute_equation", C::Equation, guarded<substitute_equation>(),
       "replace the equation's LHS by its RHS inside the RHS (or the reverse)"},
      {"add_equation_rhs", C::Equation, guarded<add_equation_rhs>(),
       "add the equation's RHS to the RHS"},
      {"subtract_equation_rhs", C::Equation, guarded<subtract_equation_rhs>(),
       "subtract the equation's RHS from the RHS"},
      {"multiply_rhs_by_equation_rhs", C::Equation, guarded<multiply_rhs_by_equation_rhs>(),
       "multiply the RHS by the equation's RHS"},
      {"divide_rhs_by_equation_rhs", C::Equation, guarded<divide_rhs_by_equation_rhs>(),
       "divide the RHS by the equation's RHS"},
  };
  std::sort(set.begin(), set.end(), [](const Action& a, const Action& b) { return a.name < b.name; });
  return set;
}

}  // namespace

std::string_view category_name(ActionCategory c) {
  switch (c) {
    case ActionCategory::Self:
      return "self-state";
    case ActionCategory::Symbol:
      return "symbol-state";
    case ActionCategory::Equation:
      return "equation-state";
  }
  return "unknown";
}

std::optional<ActionCategory> parse_category(std::string_view name) {
  if (name == "self-state") return ActionCategory::Self;
  if (name == "symbol-state") return ActionCategory::Symbol;
  if (name == "equation-state") return ActionCategory::Equation;
  return std::nullopt;
}

bool nsa_matches(ActionCategory c, const Nsa& n) {
  switch (c) {
    case ActionCategory::Self:
      return n.is_none();
    case ActionCategory::Symbol:
      return n.is_symbol();
    case ActionCategory::Equation:
      return n.is_equation();
  }
  return false;
}

EquationState apply(const Action& a, const EquationState& s, const Nsa& n) {
  if (!nsa_matches(a.category, n)) {
    throw std::invalid_argument("action '" + a.name + "' expects a " +
                                std::string(category_name(a.category)) + " argument");
  }
  auto out = a.transform(s, n);
  if (!out || same_state(*out, s)) return s;
  if (a.name == kConsiderKbEquation) {
    out->lhs_index = 0;
    out->type = StateType::Integrative;
    return *out;
  }
  out->type = StateType::Consequent;
  if (a.name != kRemoveIndex && !(out->rhs == s.rhs)) out->lhs_index = s.lhs_index + 1;
  if (same_state(*out, s)) return s;
  return *out;
}

EquationState consider_kb_equation(const EquationState& s, const Nsa& eq) {
  return apply(*find_action(kConsiderKbEquation), s, eq);
}

EquationState remove_index(const EquationState& s) {
  return apply(*find_action(kRemoveIndex), s, Nsa());
}

const std::vector<Action>& builtin_action_set() {
  static const std::vector<Action> set = make_builtin();
  return set;
}

const Action* find_action(std::string_view name) {
  const auto& set = builtin_action_set();
  auto it = std::find_if(set.begin(), set.end(), [&](const Action& a) { return a.name == name; });
  return it == set.end() ? nullptr : &*it;
}

}  // namespace derivekit
