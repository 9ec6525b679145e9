// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "derivekit/knowledge_base.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "derivekit/errors.hpp"

namespace derivekit {

SymbolSet symmetric_difference(const SymbolSet& a, const SymbolSet& b) {
  SymbolSet out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::inserter(out, out.end()), a.key_comp());
  return out;
}

void append_unique(std::vector<EquationState>& pool, std::span<const EquationState> states) {
  std::unordered_set<std::string> seen;
  for (const auto& e : pool) seen.insert(render_state_unindexed(e));
  for (const auto& s : states) {
    if (s.lhs.has_placeholder() || s.rhs.has_placeholder()) continue;
    if (seen.insert(render_state_unindexed(s)).second) pool.push_back(s);
  }
}

KnowledgeBase build_kb(std::span<const EquationState> requisite,
                       std::span<const EquationState> history, const EquationState& s_prev,
                       const EquationState& s_next) {
  KnowledgeBase kb;
  append_unique(kb.equation_pool, requisite);
  append_unique(kb.equation_pool, history);
  for (const auto& e : kb.equation_pool) kb.symbol_pool.merge(symbols_of(e));
  kb.symbol_pool.merge(symmetric_difference(symbols_of(s_prev), symbols_of(s_next)));
  return kb;
}

std::vector<Nsa> nsa_candidates(const KnowledgeBase& kb, ActionCategory category) {
  std::vector<Nsa> out;
  switch (category) {
    case ActionCategory::Self:
      out.emplace_back();
      break;
    case ActionCategory::Symbol:
      for (const auto& name : kb.symbol_pool) out.push_back(Nsa::symbol(name));
      break;
    case ActionCategory::Equation:
      for (const auto& eq : kb.equation_pool) out.push_back(Nsa::equation(eq));
      break;
  }
  return out;
}

std::vector<EquationState> parse_kb_text(std::string_view text, std::string_view origin) {
  std::vector<EquationState> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.remove_suffix(1);
    }
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (line.empty()) continue;
    try {
      auto eq = parse_equation(line);
      eq.type = StateType::Integrative;
      out.push_back(std::move(eq));
    } catch (const ParseError& e) {
      std::ostringstream msg;
      msg << origin << ":" << line_no << ": " << e.what();
      throw DataError(msg.str());
    }
    if (end == text.size()) break;
  }
  return out;
}

std::vector<EquationState> load_kb_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_kb_text(buf.str(), path.string());
}

}  // namespace derivekit
