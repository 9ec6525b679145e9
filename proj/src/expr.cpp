// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "derivekit/expr.hpp"

#include <algorithm>
#include <map>

namespace derivekit {

namespace {

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  const auto first = static_cast<unsigned char>(name.front());
  if (first >= '0' && first <= '9') return false;
  return std::all_of(name.begin(), name.end(), [](char ch) {
    const auto c = static_cast<unsigned char>(ch);
    return c >= 0x80 || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_';
  });
}

const detail::Node& zero_node() {
  static const detail::Node node = [] {
    detail::Node n;
    n.kind = Kind::Integer;
    n.text = "0";
    return n;
  }();
  return node;
}

void flatten_into(std::vector<Expr>& out, std::vector<Expr>&& items, Kind kind) {
  out.reserve(items.size());
  for (auto& item : items) {
    if (item.kind() == kind) {
      for (const auto& child : item.children()) out.push_back(child);
    } else {
      out.push_back(std::move(item));
    }
  }
}

}  // namespace

Expr make_node(Kind kind, std::string name, Rational value, std::vector<Expr> children) {
  auto node = std::make_shared<detail::Node>();
  node->kind = kind;
  node->name = std::move(name);
  node->value = value;
  node->children = std::move(children);
  node->has_placeholder = kind == Kind::Placeholder;
  node->has_nc = kind == Kind::NcProduct;
  for (const auto& child : node->children) {
    node->node_count += child.node_count();
    node->has_placeholder = node->has_placeholder || child.has_placeholder();
    node->has_nc = node->has_nc || child.has_nc_product();
  }
  node->text = detail::render_text(*node);
  return Expr(std::move(node));
}

Expr::Expr() : node_(std::shared_ptr<const detail::Node>(&zero_node(), [](const detail::Node*) {})) {}

Kind Expr::kind() const { return node_->kind; }
const std::string& Expr::name() const { return node_->name; }
const Rational& Expr::value() const { return node_->value; }
std::span<const Expr> Expr::children() const { return node_->children; }
const std::string& Expr::text() const { return node_->text; }
std::size_t Expr::node_count() const { return node_->node_count; }
bool Expr::has_placeholder() const { return node_->has_placeholder; }
bool Expr::has_nc_product() const { return node_->has_nc; }

bool canonical_less(const Expr& a, const Expr& b) {
  const int ra = a.is_number() ? 0 : 1;
  const int rb = b.is_number() ? 0 : 1;
  if (ra != rb) return ra < rb;
  const auto& ta = a.text();
  const auto& tb = b.text();
  if (ta.size() != tb.size()) return ta.size() < tb.size();
  return ta < tb;
}

Expr symbol(std::string name) {
  if (!is_identifier(name) || name == "None") {
    throw std::invalid_argument("invalid symbol name '" + name + "'");
  }
  return make_node(Kind::Symbol, std::move(name), Rational(), {});
}

Expr integer(std::int64_t value) { return make_node(Kind::Integer, {}, Rational(value), {}); }

Expr number(const Rational& value) {
  return make_node(value.is_integer() ? Kind::Integer : Kind::Rational, {}, value, {});
}

Expr placeholder() { return make_node(Kind::Placeholder, {}, Rational(), {}); }

Expr sum(std::vector<Expr> terms) {
  std::vector<Expr> flat;
  flatten_into(flat, std::move(terms), Kind::Sum);
  if (flat.empty()) return integer(0);
  if (flat.size() == 1) return flat.front();
  std::stable_sort(flat.begin(), flat.end(), canonical_less);
  return make_node(Kind::Sum, {}, Rational(), std::move(flat));
}

Expr product(std::vector<Expr> factors) {
  std::vector<Expr> flat;
  flatten_into(flat, std::move(factors), Kind::Product);
  if (flat.empty()) return integer(1);
  if (flat.size() == 1) return flat.front();
  std::stable_sort(flat.begin(), flat.end(), canonical_less);
  return make_node(Kind::Product, {}, Rational(), std::move(flat));
}

Expr nc_product(std::vector<Expr> factors) {
  std::vector<Expr> flat;
  flatten_into(flat, std::move(factors), Kind::NcProduct);
  if (flat.empty()) return integer(1);
  if (flat.size() == 1) return flat.front();
  return make_node(Kind::NcProduct, {}, Rational(), std::move(flat));
}

Expr power(Expr base, Expr exponent) {
  return make_node(Kind::Power, {}, Rational(), {std::move(base), std::move(exponent)});
}

Expr function(std::string name, std::vector<Expr> args) {
  if (!is_identifier(name) || name == "Rational" || name == "None") {
    throw std::invalid_argument("invalid function name '" + name + "'");
  }
  if (args.empty()) throw std::invalid_argument("function '" + name + "' needs arguments");
  return make_node(Kind::Function, std::move(name), Rational(), std::move(args));
}

Expr negate(const Expr& e) {
  if (e.is_number()) {
    if (auto n = e.value().neg()) return number(*n);
  }
  return product({integer(-1), e});
}

Expr with_children(const Expr& e, std::vector<Expr> children) {
  switch (e.kind()) {
    case Kind::Sum:
      return sum(std::move(children));
    case Kind::Product:
      return product(std::move(children));
    case Kind::NcProduct:
      return nc_product(std::move(children));
    case Kind::Power:
      if (children.size() != 2) throw std::invalid_argument("power needs two children");
      return power(std::move(children[0]), std::move(children[1]));
    case Kind::Function:
      return function(e.name(), std::move(children));
    default:
      return e;
  }
}

std::vector<Expr> subexpressions(const Expr& e) {
  std::map<std::string_view, Expr> seen;
  std::vector<const Expr*> stack{&e};
  while (!stack.empty()) {
    const Expr* cur = stack.back();
    stack.pop_back();
    if (!seen.try_emplace(cur->text(), *cur).second) continue;
    for (const auto& child : cur->children()) stack.push_back(&child);
  }
  std::vector<Expr> out;
  out.reserve(seen.size());
  for (auto& [_, expr] : seen) out.push_back(expr);
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

SymbolSet symbols_of(const Expr& e) {
  SymbolSet out;
  std::vector<const Expr*> stack{&e};
  while (!stack.empty()) {
    const Expr* cur = stack.back();
    stack.pop_back();
    if (cur->kind() == Kind::Symbol) out.insert(cur->name());
    for (const auto& child : cur->children()) stack.push_back(&child);
  }
  return out;
}

namespace {

Expr replace_rec(const Expr& e, const Expr& from, const Expr& to, bool* found) {
  if (e == from) {
    if (found) *found = true;
    return to;
  }
  if (e.is_leaf() || e.node_count() < from.node_count()) return e;
  std::vector<Expr> kids;
  kids.reserve(e.children().size());
  bool changed = false;
  for (const auto& child : e.children()) {
    bool hit = false;
    kids.push_back(replace_rec(child, from, to, &hit));
    changed = changed || hit;
  }
  if (!changed) return e;
  if (found) *found = true;
  return with_children(e, std::move(kids));
}

}  // namespace

Expr replace_all(const Expr& e, const Expr& from, const Expr& to, bool* found) {
  bool hit = false;
  auto out = replace_rec(e, from, to, &hit);
  if (found) *found = hit;
  return out;
}

bool contains(const Expr& e, const Expr& needle) {
  if (e == needle) return true;
  if (e.node_count() <= needle.node_count()) return false;
  return std::any_of(e.children().begin(), e.children().end(),
                     [&](const Expr& c) { return contains(c, needle); });
}

}  // namespace derivekit
