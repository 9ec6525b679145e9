// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "derivekit/generator.hpp"

#include <random>

#include "derivekit/knowledge_base.hpp"
#include "derivekit/similarity.hpp"

namespace derivekit {

namespace {

struct Choice {
  const Action* action;
  Nsa nsa;
  EquationState out;
};

bool within_limit(const EquationState& s, std::size_t limit) {
  return code_point_count(s.lhs.text()) <= limit && code_point_count(s.rhs.text()) <= limit;
}

std::size_t draw(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace

DerivationSequence Derivation::to_sequence() const {
  DerivationSequence seq;
  for (std::size_t i = 0; i < states.size(); ++i) {
    seq.records.push_back(make_record(states[i], actions[i]->name, nsas[i].render(),
                                      StateType::Consequent, actions[i]->category));
  }
  return categorize(std::move(seq));
}

Derivation generate(const GenConfig& cfg, std::span<const Action> actions) {
  if (cfg.seeds.empty()) throw std::invalid_argument("generate needs at least one seed equation");
  if (cfg.length < 3) throw std::invalid_argument("walk length must be at least 3");
  const Action* consider = nullptr;
  for (const auto& a : actions) {
    if (a.name == kConsiderKbEquation) consider = &a;
  }
  if (consider == nullptr) throw std::invalid_argument("action set lacks consider_kb_equation");

  std::mt19937_64 rng(cfg.rng);
  std::bernoulli_distribution branch(cfg.branch_p);
  Derivation d;

  std::vector<EquationState> seeds;
  append_unique(seeds, cfg.seeds);
  auto first = seeds[draw(rng, seeds.size())];
  d.states.push_back(apply(*consider, dummy_head(), Nsa::equation(first)));
  d.actions.push_back(consider);
  d.nsas.push_back(Nsa::equation(first));

  while (d.states.size() < cfg.length) {
    const auto j = d.states.size() + 1;  // producing s_j
    const auto& prev = d.states.back();
    std::vector<EquationState> eq_pool = seeds;
    append_unique(eq_pool, std::span(d.states.data(), j - 2));
    SymbolSet sym_pool;
    for (const auto& e : seeds) sym_pool.merge(symbols_of(e));
    for (const auto& e : d.states) sym_pool.merge(symbols_of(e));

    const auto fresh = [&](const EquationState& out) {
      return !same_state(out, prev) && within_limit(out, cfg.max_side_chars);
    };

    std::optional<Choice> pick;
    if (branch(rng)) {
      std::vector<Choice> options;
      for (const auto& eq : eq_pool) {
        auto out = apply(*consider, prev, Nsa::equation(eq));
        if (fresh(out)) options.push_back(Choice{consider, Nsa::equation(eq), std::move(out)});
      }
      if (!options.empty()) pick = std::move(options[draw(rng, options.size())]);
    }
    if (!pick) {
      std::vector<Choice> options;
      for (const auto& a : actions) {
        if (&a == consider) continue;
        std::vector<Nsa> nsas;
        switch (a.category) {
          case ActionCategory::Self:
            nsas.emplace_back();
            break;
          case ActionCategory::Symbol:
            for (const auto& s : sym_pool) nsas.push_back(Nsa::symbol(s));
            break;
          case ActionCategory::Equation:
            for (const auto& e : eq_pool) nsas.push_back(Nsa::equation(e));
            break;
        }
        for (auto& n : nsas) {
          auto out = apply(a, prev, n);
          if (fresh(out)) options.push_back(Choice{&a, std::move(n), std::move(out)});
        }
      }
      if (options.empty()) {
        throw GenerationStalled("walk stalled at step " + std::to_string(j) + " on " +
                                    render_state(prev),
                                prev);
      }
      pick = std::move(options[draw(rng, options.size())]);
    }
    d.states.push_back(std::move(pick->out));
    d.actions.push_back(pick->action);
    d.nsas.push_back(std::move(pick->nsa));
  }
  return d;
}

std::vector<std::string> audit(const Derivation& d) {
  std::vector<std::string> issues;
  EquationState prev = dummy_head();
  for (std::size_t i = 0; i < d.states.size(); ++i) {
    const auto& s = d.states[i];
    const auto& a = *d.actions[i];
    const std::string at = "step " + std::to_string(i + 1) + ": ";
    if (!nsa_matches(a.category, d.nsas[i])) issues.push_back(at + "NSA does not match category");
    const auto replay = apply(a, prev, d.nsas[i]);
    if (render_state(replay) != render_state(s)) issues.push_back(at + "replay differs");
    if (same_state(s, prev)) issues.push_back(at + "no-op step");
    if (a.name == kConsiderKbEquation) {
      if (s.lhs_index != 0) issues.push_back(at + "integrative state keeps an index");
    } else if (a.name == kRemoveIndex) {
      if (s.lhs_index != 0) issues.push_back(at + "remove_index left an index");
    } else if (!(s.rhs == prev.rhs) && s.lhs_index != prev.lhs_index + 1) {
      issues.push_back(at + "RHS changed without an index increment");
    }
    // Round trip through the text form.
    try {
      if (render_state(parse_state(render_state(s))) != render_state(s)) {
        issues.push_back(at + "text form does not round-trip");
      }
    } catch (const ParseError& e) {
      issues.push_back(at + "text form does not parse: " + e.what());
    }
    prev = s;
  }
  return issues;
}

}  // namespace derivekit
