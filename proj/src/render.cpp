// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

// Text, LaTeX and tree emission. The text form is the interchange format
// and must re-parse to the same canonical tree; docs/grammar.md lists the
// rules implemented here.

#include <array>
#include <string>
#include <utility>

#include "derivekit/expr.hpp"

namespace derivekit {

namespace {

// Binding strength of a rendered node. Higher binds tighter.
constexpr int kPrecSum = 1;
constexpr int kPrecProduct = 2;
constexpr int kPrecNc = 3;
constexpr int kPrecUnary = 4;
constexpr int kPrecPower = 5;
constexpr int kPrecAtom = 6;

int precedence(const Expr& e) {
  switch (e.kind()) {
    case Kind::Sum:
      return kPrecSum;
    case Kind::Product:
      return kPrecProduct;
    case Kind::NcProduct:
      return kPrecNc;
    case Kind::Integer:
      return e.value().is_negative() ? kPrecUnary : kPrecAtom;
    case Kind::Power:
      return kPrecPower;
    default:
      return kPrecAtom;
  }
}

bool is_negative_number(const Expr& e) { return e.is_number() && e.value().is_negative(); }

bool is_reciprocal(const Expr& e) {
  return e.kind() == Kind::Power && e.children()[1].kind() == Kind::Integer &&
         e.children()[1].value() == Rational(-1);
}

std::string wrap(const Expr& e, int min_prec) {
  if (precedence(e) < min_prec) return "(" + e.text() + ")";
  return e.text();
}

std::string text_product(std::span<const Expr> factors) {
  std::vector<const Expr*> nums;
  std::vector<const Expr*> dens;
  for (const auto& f : factors) {
    if (is_reciprocal(f)) {
      dens.push_back(&f);
    } else {
      nums.push_back(&f);
    }
  }
  if (nums.empty()) {
    // Division shorthand needs a numerator; fall back to explicit powers.
    nums = std::move(dens);
    dens.clear();
  }

  std::string out;
  std::size_t start = 0;
  if (nums.size() >= 2 && nums[0]->kind() == Kind::Integer && nums[0]->value() == Rational(-1) &&
      !nums[1]->is_number()) {
    out = "-";
    out += wrap(*nums[1], kPrecPower);
    start = 2;
  } else {
    out = is_negative_number(*nums[0]) ? nums[0]->text() : wrap(*nums[0], kPrecNc);
    start = 1;
  }
  for (std::size_t i = start; i < nums.size(); ++i) {
    out += '*';
    out += is_negative_number(*nums[i]) ? "(" + nums[i]->text() + ")" : wrap(*nums[i], kPrecNc);
  }
  for (const auto* d : dens) {
    out += '/';
    out += wrap(d->children()[0], kPrecAtom);
  }
  return out;
}

}  // namespace

namespace detail {

std::string render_text(const Node& node) {
  switch (node.kind) {
    case Kind::Symbol:
    case Kind::Placeholder:
      return node.kind == Kind::Symbol ? node.name : "?";
    case Kind::Integer:
      return std::to_string(node.value.num());
    case Kind::Rational:
      return "Rational(" + std::to_string(node.value.num()) + ", " +
             std::to_string(node.value.den()) + ")";
    case Kind::Sum: {
      std::string out = node.children.front().text();
      for (std::size_t i = 1; i < node.children.size(); ++i) {
        const auto& t = node.children[i].text();
        if (!t.empty() && t.front() == '-') {
          out += " - ";
          out.append(t, 1);
        } else {
          out += " + ";
          out += t;
        }
      }
      return out;
    }
    case Kind::Product:
      return text_product(node.children);
    case Kind::NcProduct: {
      std::string out;
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        const auto& c = node.children[i];
        if (i > 0) out += '@';
        if (i > 0 && is_negative_number(c)) {
          out += "(" + c.text() + ")";
        } else {
          out += wrap(c, kPrecUnary);
        }
      }
      return out;
    }
    case Kind::Power: {
      const auto& base = node.children[0];
      const auto& exp = node.children[1];
      return wrap(base, kPrecAtom) + "**" + wrap(exp, kPrecAtom);
    }
    case Kind::Function: {
      std::string out = node.name + "(";
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        if (i > 0) out += ", ";
        out += node.children[i].text();
      }
      return out + ")";
    }
  }
  return {};
}

std::string latex_symbol(std::string_view name) {
  static constexpr std::string_view kDagger = "\xE2\x80\xA0";
  bool dagger = false;
  if (name.size() > kDagger.size() && name.ends_with(kDagger)) {
    dagger = true;
    name.remove_suffix(kDagger.size());
  }

  std::string_view base = name;
  std::string sub;
  if (auto us = name.find('_'); us != std::string_view::npos && us > 0 && us + 1 < name.size()) {
    base = name.substr(0, us);
    sub = std::string(name.substr(us + 1));
  } else {
    // Trailing ASCII digits or Unicode subscript digits (U+2080..U+2089).
    std::size_t end = name.size();
    std::string digits;
    while (end > 0) {
      if (name[end - 1] >= '0' && name[end - 1] <= '9') {
        digits.insert(digits.begin(), name[end - 1]);
        --end;
      } else if (end >= 3 && static_cast<unsigned char>(name[end - 3]) == 0xE2 &&
                 static_cast<unsigned char>(name[end - 2]) == 0x82 &&
                 static_cast<unsigned char>(name[end - 1]) >= 0x80 &&
                 static_cast<unsigned char>(name[end - 1]) <= 0x89) {
        digits.insert(digits.begin(), static_cast<char>('0' + (name[end - 1] - '\x80')));
        end -= 3;
      } else {
        break;
      }
    }
    if (end > 0 && !digits.empty()) {
      base = name.substr(0, end);
      sub = std::move(digits);
    }
  }

  static constexpr std::array<std::string_view, 24> kGreek = {
      "alpha", "beta",  "gamma", "delta",   "epsilon", "zeta", "eta", "theta",
      "iota",  "kappa", "lambda", "mu",     "nu",      "xi",   "omicron", "pi",
      "rho",   "sigma", "tau",   "upsilon", "phi",     "chi",  "psi", "omega"};
  std::string head;
  if (base == "hbar" || base == "\xC4\xA7") {
    head = "\\hbar";
  } else {
    for (std::size_t i = 0; i < kGreek.size() && head.empty(); ++i) {
      const auto g = kGreek[i];
      if (base == g) head = "\\" + std::string(g);
      // Capitalized ASCII names map to upper-case Greek.
      if (base.size() == g.size() && base[0] == g[0] - 32 && base.substr(1) == g.substr(1)) {
        head = "\\" + std::string(base);
      }
      // U+03B1.. lower-case Greek block, two-byte UTF-8 (U+03C2 is final sigma).
      const unsigned code = 0x3B1 + static_cast<unsigned>(i) + (i >= 17 ? 1 : 0);
      if (base.size() == 2 && static_cast<unsigned char>(base[0]) == (0xC0 | (code >> 6)) &&
          static_cast<unsigned char>(base[1]) == (0x80 | (code & 0x3F))) {
        head = "\\" + std::string(g);
      }
    }
    if (head == "\\omicron") head = "o";
    if (head.empty()) head = std::string(base);
  }
  if (!sub.empty()) head += "_{" + sub + "}";
  if (dagger) head += "^{\\dagger}";
  return head;
}

namespace {

std::string latex(const Expr& e);

std::string latex_group(const Expr& e, int min_prec) {
  auto s = latex(e);
  if (precedence(e) < min_prec) return "\\left(" + s + "\\right)";
  return s;
}

std::string latex_factors(const std::vector<const Expr*>& fs) {
  std::string out;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i > 0) out += (fs[i]->is_number() && fs[i - 1]->is_number()) ? " \\cdot " : " ";
    out += (i > 0 && is_negative_number(*fs[i])) ? "\\left(" + latex(*fs[i]) + "\\right)"
                                                 : latex_group(*fs[i], kPrecNc);
  }
  return out;
}

std::string latex(const Expr& e) {
  switch (e.kind()) {
    case Kind::Symbol:
      return latex_symbol(e.name());
    case Kind::Placeholder:
      return "?";
    case Kind::Integer:
      return std::to_string(e.value().num());
    case Kind::Rational: {
      const auto& v = e.value();
      const std::string frac = "\\frac{" + std::to_string(v.is_negative() ? -v.num() : v.num()) +
                               "}{" + std::to_string(v.den()) + "}";
      return v.is_negative() ? "-" + frac : frac;
    }
    case Kind::Sum: {
      std::string out;
      for (std::size_t i = 0; i < e.children().size(); ++i) {
        auto t = latex(e.children()[i]);
        if (i == 0) {
          out = t;
        } else if (!t.empty() && t.front() == '-') {
          out += " - " + t.substr(1);
        } else {
          out += " + " + t;
        }
      }
      return out;
    }
    case Kind::Product: {
      std::vector<const Expr*> nums;
      std::vector<const Expr*> dens;
      for (const auto& f : e.children()) (is_reciprocal(f) ? dens : nums).push_back(&f);
      std::string sign;
      if (!nums.empty() && nums[0]->kind() == Kind::Integer && nums[0]->value() == Rational(-1) &&
          (nums.size() > 1 || !dens.empty())) {
        sign = "-";
        nums.erase(nums.begin());
      }
      if (dens.empty()) return sign + latex_factors(nums);
      std::vector<const Expr*> den_bases;
      for (const auto* d : dens) den_bases.push_back(&d->children()[0]);
      const std::string num = nums.empty() ? "1" : latex_factors(nums);
      return sign + "\\frac{" + num + "}{" + latex_factors(den_bases) + "}";
    }
    case Kind::NcProduct: {
      std::string out;
      for (std::size_t i = 0; i < e.children().size(); ++i) {
        if (i > 0) out += " ";
        out += latex_group(e.children()[i], kPrecUnary);
      }
      return out;
    }
    case Kind::Power: {
      auto base = latex_group(e.children()[0], kPrecAtom);
      if (base.find('^') != std::string::npos && base.rfind("\\left(", 0) != 0) {
        base = "{" + base + "}";
      }
      return base + "^{" + latex(e.children()[1]) + "}";
    }
    case Kind::Function: {
      const auto& name = e.name();
      const auto args = e.children();
      if (name == "Sum" && args.size() == 2) {
        return "\\sum_{" + latex(args[1]) + "} " + latex_group(args[0], kPrecProduct);
      }
      if (name == "sqrt" && args.size() == 1) return "\\sqrt{" + latex(args[0]) + "}";
      std::string head;
      if (name == "sin" || name == "cos" || name == "tan" || name == "exp" || name == "log") {
        head = "\\" + name;
      } else {
        head = "\\operatorname{" + name + "}";
      }
      std::string out = head + "\\left(";
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (i > 0) out += ", ";
        out += latex(args[i]);
      }
      return out + "\\right)";
    }
  }
  return {};
}

std::string tree(const Expr& e) {
  auto join = [](std::span<const Expr> kids) {
    std::string out;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (i > 0) out += ", ";
      out += tree(kids[i]);
    }
    return out;
  };
  switch (e.kind()) {
    case Kind::Symbol:
      return "Symbol('" + e.name() + "')";
    case Kind::Placeholder:
      return "Placeholder()";
    case Kind::Integer:
      return "Integer(" + std::to_string(e.value().num()) + ")";
    case Kind::Rational:
      return "Rational(" + std::to_string(e.value().num()) + ", " +
             std::to_string(e.value().den()) + ")";
    case Kind::Sum:
      return "Add(" + join(e.children()) + ")";
    case Kind::Product:
      return "Mul(" + join(e.children()) + ")";
    case Kind::NcProduct:
      return "NCMul(" + join(e.children()) + ")";
    case Kind::Power:
      return "Pow(" + join(e.children()) + ")";
    case Kind::Function:
      return "Function('" + e.name() + "')(" + join(e.children()) + ")";
  }
  return {};
}

}  // namespace

std::string render_latex(const Expr& e) { return latex(e); }
std::string render_tree(const Expr& e) { return tree(e); }

}  // namespace detail

std::string render(const Expr& e, RenderForm form) {
  switch (form) {
    case RenderForm::Text:
      return e.text();
    case RenderForm::Latex:
      return detail::render_latex(e);
    case RenderForm::Tree:
      return detail::render_tree(e);
  }
  return e.text();
}

}  // namespace derivekit
