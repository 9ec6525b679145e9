// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "derivekit/rational.hpp"

namespace derivekit {

enum class Kind : std::uint8_t {
  Symbol,
  Integer,
  Rational,
  Sum,
  Product,
  NcProduct,  // non-commutative product, child order is significant
  Power,
  Function,
  Placeholder,  // the "?" leaf of the dummy head state
};

enum class RenderForm : std::uint8_t { Text, Latex, Tree };

class Expr;
using SymbolSet = std::set<std::string, std::less<>>;

namespace detail {
struct Node;
}

/// Immutable symbolic expression. Construction always goes through the
/// factory functions below, which canonicalize: nested sums/products are
/// flattened, commutative children are sorted, single-child sums and
/// products collapse. The canonical text rendering is computed once at
/// construction and doubles as the identity of the tree.
class Expr {
 public:
  Expr();  // integer 0

  [[nodiscard]] Kind kind() const;
  /// Symbol name or function name; empty for other kinds.
  [[nodiscard]] const std::string& name() const;
  /// Numeric value of Integer/Rational leaves; 0 otherwise.
  [[nodiscard]] const Rational& value() const;
  [[nodiscard]] std::span<const Expr> children() const;
  [[nodiscard]] const std::string& text() const;
  [[nodiscard]] std::size_t node_count() const;
  [[nodiscard]] bool has_placeholder() const;
  [[nodiscard]] bool has_nc_product() const;

  [[nodiscard]] bool is_number() const {
    return kind() == Kind::Integer || kind() == Kind::Rational;
  }
  [[nodiscard]] bool is_leaf() const { return children().empty(); }

  friend bool operator==(const Expr& a, const Expr& b) { return a.text() == b.text(); }

 private:
  explicit Expr(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}
  friend Expr make_node(Kind, std::string, Rational, std::vector<Expr>);

  std::shared_ptr<const detail::Node> node_;
};

/// Total order used for commutative children: numbers first, then by
/// rendering length, then lexicographically by rendering.
bool canonical_less(const Expr& a, const Expr& b);

Expr symbol(std::string name);
Expr integer(std::int64_t value);
Expr number(const Rational& value);
Expr placeholder();
Expr sum(std::vector<Expr> terms);
Expr product(std::vector<Expr> factors);
Expr nc_product(std::vector<Expr> factors);
Expr power(Expr base, Expr exponent);
Expr function(std::string name, std::vector<Expr> args);

/// Numeric literals negate in place; anything else becomes (-1)*e.
Expr negate(const Expr& e);
/// Rebuilds a node of the same kind with new children (re-canonicalized).
Expr with_children(const Expr& e, std::vector<Expr> children);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}
  /// 1-based character offset of the offending token.
  [[nodiscard]] std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses the text grammar documented in docs/grammar.md.
Expr parse(std::string_view text);

std::string render(const Expr& e, RenderForm form = RenderForm::Text);

/// Every distinct subtree of e (including e and its leaves), deduplicated
/// by rendering and returned in canonical order.
std::vector<Expr> subexpressions(const Expr& e);

/// Symbol leaves of e. Numbers and the placeholder are excluded.
SymbolSet symbols_of(const Expr& e);

/// Replaces every subtree equal to `from` with `to`, bottom-up, returning
/// the re-canonicalized result. `found` reports whether at least one
/// replacement happened.
Expr replace_all(const Expr& e, const Expr& from, const Expr& to, bool* found = nullptr);

/// True when some subtree of e equals `needle`.
bool contains(const Expr& e, const Expr& needle);

namespace detail {

struct Node {
  Kind kind = Kind::Integer;
  std::string name;
  Rational value;
  std::vector<Expr> children;
  std::string text;
  std::size_t node_count = 1;
  bool has_placeholder = false;
  bool has_nc = false;
};

std::string render_text(const Node& node);
std::string render_latex(const Expr& e);
std::string render_tree(const Expr& e);
std::string latex_symbol(std::string_view name);

}  // namespace detail

}  // namespace derivekit
