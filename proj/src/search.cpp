// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <iterator>
#include <limits>
#include <map>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "derivekit/parallel.hpp"
#include "derivekit/search.hpp"
#include "search_internal.hpp"

namespace derivekit {

namespace detail {

std::vector<std::string> state_subexpressions(const EquationState& s) {
  std::vector<std::string> out;
  for (const auto& e : subexpressions(s.lhs)) out.push_back(e.text());
  for (const auto& e : subexpressions(s.rhs)) out.push_back(e.text());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Hop> all_hops(std::span<const Action> actions, const KnowledgeBase& kb) {
  std::vector<Hop> hops;
  std::map<ActionCategory, std::vector<std::pair<Nsa, std::string>>> nsas;
  for (auto c : {ActionCategory::Self, ActionCategory::Symbol, ActionCategory::Equation}) {
    for (auto& n : nsa_candidates(kb, c)) {
      auto text = n.render();
      nsas[c].emplace_back(std::move(n), std::move(text));
    }
  }
  for (const auto& a : actions) {
    for (const auto& [n, text] : nsas[a.category]) hops.push_back(Hop{&a, n, text});
  }
  std::stable_sort(hops.begin(), hops.end(), [](const Hop& a, const Hop& b) {
    return std::tie(a.action->name, a.nsa_text) < std::tie(b.action->name, b.nsa_text);
  });
  return hops;
}

CandidatePath make_path(const Candidate& first, const Hop& second, EquationState end,
                        HeuristicComponents comps, const HeuristicParams& p, double m) {
  CandidatePath path;
  path.first_action = first.action->name;
  path.first_nsa = first.nsa_text;
  path.c_mid = first.state;
  path.second_action = second.action->name;
  path.second_nsa = second.nsa_text;
  path.c_end = std::move(end);
  path.components = comps;
  path.heuristic = heuristic(comps, p);
  path.end_distance = m;
  return path;
}

}  // namespace detail

namespace {

using detail::Hop;

struct Sized {
  std::size_t len;
  std::string text;
};

/// Everything about a state the heuristic needs, computed once.
struct Profile {
  SymbolSet symbols;
  std::vector<Sized> small;
  std::vector<Sized> large;
  std::string text;
};

Profile profile_of(const EquationState& s, std::size_t threshold) {
  Profile p;
  p.symbols = symbols_of(s);
  p.text = render_state(s);
  for (auto& t : detail::state_subexpressions(s)) {
    const auto len = code_point_count(t);
    (len <= threshold ? p.small : p.large).push_back(Sized{len, std::move(t)});
  }
  return p;
}

std::size_t abs_diff(std::size_t a, std::size_t b) { return a > b ? a - b : b - a; }

std::optional<double> best_pair(const std::vector<Sized>& a, const std::vector<Sized>& b) {
  if (a.empty() || b.empty()) return std::nullopt;
  auto best = std::numeric_limits<std::size_t>::max();
  for (const auto& x : a) {
    for (const auto& y : b) {
      // Length difference is a lower bound on edit distance.
      if (abs_diff(x.len, y.len) >= best) continue;
      best = std::min(best, levenshtein(x.text, y.text));
      if (best == 0) return 0.0;
    }
  }
  return static_cast<double>(best);
}

HeuristicComponents components(const Profile& c, const Profile& t) {
  HeuristicComponents r;
  std::size_t missing = 0;
  for (const auto& s : t.symbols) missing += c.symbols.contains(s) ? 0 : 1;
  r.x = static_cast<double>(missing);
  std::optional<double> whole;
  auto fallback = [&] {
    if (!whole) whole = static_cast<double>(levenshtein(c.text, t.text));
    return *whole;
  };
  auto y = best_pair(c.small, t.small);
  auto z = best_pair(c.large, t.large);
  r.y = y ? *y : fallback();
  r.z = z ? *z : fallback();
  return r;
}

/// Cheap necessary condition for apply(hop, c) to render exactly as t.
bool may_reach_exactly(const Hop& h, const EquationState& c, const EquationState& t) {
  const auto& name = h.action->name;
  if (name == kConsiderKbEquation) return true;
  if (name == kRemoveIndex) return t.lhs_index == 0 && c.lhs == t.lhs && c.rhs == t.rhs;
  if (t.lhs_index != c.lhs_index + 1 && t.lhs_index != c.lhs_index) return false;
  // An untouched LHS at an unchanged index means an unchanged RHS, so the
  // output would render as c itself.
  if (!h.action->rewrites_lhs) return c.lhs == t.lhs && t.lhs_index == c.lhs_index + 1;
  return true;
}

SymbolSet nsa_symbols(const Nsa& n) {
  if (n.is_symbol()) return SymbolSet{n.symbol_name()};
  if (n.is_equation()) return symbols_of(n.equation_state());
  return {};
}

bool covers(const SymbolSet& have, const SymbolSet& need) {
  return std::includes(have.begin(), have.end(), need.begin(), need.end(), have.key_comp());
}

void atomic_min(std::atomic<double>& target, double v) {
  double cur = target.load(std::memory_order_relaxed);
  while (v < cur && !target.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
  }
}

}  // namespace

std::vector<Candidate> generate_candidates(const EquationState& s_prev,
                                           std::span<const Action> actions,
                                           const KnowledgeBase& kb) {
  std::vector<Candidate> out;
  std::optional<Candidate> noop;
  const auto prev_text = render_state(s_prev);
  for (const auto& hop : detail::all_hops(actions, kb)) {
    Candidate c{hop.action, hop.nsa, hop.nsa_text, apply(*hop.action, s_prev, hop.nsa), {}};
    c.text = render_state(c.state);
    if (c.text == prev_text) {
      // Hops are sorted, so the first no-op is the representative.
      if (!noop) noop = std::move(c);
      continue;
    }
    out.push_back(std::move(c));
  }
  if (noop) {
    auto pos = std::lower_bound(out.begin(), out.end(), *noop, [](const Candidate& a, const Candidate& b) {
      return std::tie(a.action->name, a.nsa_text) < std::tie(b.action->name, b.nsa_text);
    });
    out.insert(pos, std::move(*noop));
  }
  return out;
}

HeuristicComponents heuristic_components(const EquationState& c, const EquationState& s_next,
                                         std::size_t threshold) {
  return components(profile_of(c, threshold), profile_of(s_next, threshold));
}

double heuristic(const HeuristicComponents& r, const HeuristicParams& p) {
  const double a = p.n1 * r.x;
  const double b = p.n2 * r.y;
  const double c = p.n3 * r.z;
  return a * a + b * b + c * c;
}

double heuristic(const EquationState& c, const EquationState& s_next, const HeuristicParams& p) {
  return heuristic(heuristic_components(c, s_next, p.threshold), p);
}

ReconstructResult reconstruct(const DerivationUnit& unit, std::span<const Action> actions,
                              const KnowledgeBase& kb, const SearchOptions& opts) {
  if (actions.empty()) throw std::invalid_argument("empty action set");
  const int jobs = resolve_jobs(opts.jobs);
  const auto& target = unit.s_next;
  const auto target_text = render_state(target);

  const auto cands = generate_candidates(unit.s_prev, actions, kb);
  const auto hops = detail::all_hops(actions, kb);

  // Distinct mids; candidates are sorted so the first occurrence carries
  // the smallest (action, NSA).
  std::vector<std::size_t> mids;
  {
    std::unordered_map<std::string_view, std::size_t> seen;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (seen.emplace(cands[i].text, i).second) mids.push_back(i);
    }
  }
  if (mids.empty() || hops.empty()) throw std::invalid_argument("no candidate paths for this unit");
  const auto n_mids = static_cast<std::int64_t>(mids.size());

  // consider_kb_equation ignores its state, so its exact hits are shared.
  std::vector<char> kb_hit(hops.size(), 0);
  for (std::size_t h = 0; h < hops.size(); ++h) {
    if (hops[h].action->name != kConsiderKbEquation) continue;
    const auto& eq = hops[h].nsa.equation_state();
    kb_hit[h] = render_state(EquationState{eq.lhs, eq.rhs, 0, StateType::Integrative}) == target_text;
  }

  std::vector<SymbolSet> hop_symbols(hops.size());
  for (std::size_t h = 0; h < hops.size(); ++h) hop_symbols[h] = nsa_symbols(hops[h].nsa);
  const auto target_symbols = symbols_of(target);

  // Pass 1: exact end paths for every mid.
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> exact_hop(mids.size(), kNone);
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (std::int64_t k = 0; k < n_mids; ++k) {
    const auto& c = cands[mids[k]];
    const bool same = c.text == target_text;
    SymbolSet missing;
    const auto mid_symbols = symbols_of(c.state);
    std::set_difference(target_symbols.begin(), target_symbols.end(), mid_symbols.begin(),
                        mid_symbols.end(), std::inserter(missing, missing.end()),
                        missing.key_comp());
    for (std::size_t h = 0; h < hops.size(); ++h) {
      const auto& hop = hops[h];
      if (!same && !may_reach_exactly(hop, c.state, target)) continue;
      if (!same && hop.action->name != kConsiderKbEquation && !hop.action->introduces_symbols &&
          !covers(hop_symbols[h], missing)) {
        continue;
      }
      bool hit = false;
      if (hop.action->name == kConsiderKbEquation) {
        hit = kb_hit[h] != 0;
      } else {
        hit = render_state(apply(*hop.action, c.state, hop.nsa)) == target_text;
      }
      if (hit) {
        exact_hop[k] = h;
        break;
      }
    }
  }

  ReconstructResult result;
  result.report.first_hop_candidates = cands.size();
  result.report.distinct_mids = mids.size();
  for (std::size_t k = 0; k < mids.size(); ++k) {
    if (exact_hop[k] != kNone) result.zero_mids.push_back(cands[mids[k]].text);
  }
  std::sort(result.zero_mids.begin(), result.zero_mids.end());
  result.report.zero_distance_mids = result.zero_mids.size();
  result.report.early_stop = !result.zero_mids.empty();

  const auto tprof = profile_of(target, opts.params.threshold);
  std::vector<HeuristicComponents> comps(mids.size());
  std::vector<double> h_val(mids.size(), std::numeric_limits<double>::infinity());
  const bool exact = result.report.early_stop;
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (std::int64_t k = 0; k < n_mids; ++k) {
    if (exact && exact_hop[k] == kNone) continue;
    comps[k] = components(profile_of(cands[mids[k]].state, opts.params.threshold), tprof);
    h_val[k] = heuristic(comps[k], opts.params);
  }

  // Mids in heuristic order; ties fall back to candidate order.
  std::vector<std::size_t> order(mids.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::tie(h_val[a], mids[a]) < std::tie(h_val[b], mids[b]);
  });

  if (exact) {
    for (auto k : order) {
      if (exact_hop[k] == kNone) continue;
      const auto& c = cands[mids[k]];
      const auto& hop = hops[exact_hop[k]];
      result.path = detail::make_path(c, hop, apply(*hop.action, c.state, hop.nsa), comps[k],
                                      opts.params, 0.0);
      result.s_hat = c.state;
      return result;
    }
  }

  // Pass 2: no exact end exists, so score every path with M.
  const bool prunable = is_edit_distance(opts.measure.kind);
  const auto target_len = code_point_count(target_text);
  std::atomic<double> bound{std::numeric_limits<double>::infinity()};
  struct Best {
    double m = std::numeric_limits<double>::infinity();
    std::size_t hop = kNone;
  };
  std::vector<Best> best(mids.size());
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (std::int64_t j = 0; j < n_mids; ++j) {
    const auto k = order[j];
    const auto& c = cands[mids[k]];
    for (std::size_t h = 0; h < hops.size(); ++h) {
      const auto end_text = render_state(apply(*hops[h].action, c.state, hops[h].nsa));
      if (prunable) {
        // A strict test keeps every path that could tie the optimum.
        const auto lb = static_cast<double>(abs_diff(code_point_count(end_text), target_len));
        if (lb > bound.load(std::memory_order_relaxed) || lb > best[k].m) continue;
      }
      const double m = distance(opts.measure, end_text, target_text);
      if (m < best[k].m) best[k] = Best{m, h};
      atomic_min(bound, m);
    }
  }

  std::size_t win = kNone;
  for (auto k : order) {
    if (best[k].hop == kNone) continue;
    if (win == kNone || best[k].m < best[win].m) win = k;  // order already breaks ties
  }
  const auto& c = cands[mids[win]];
  const auto& hop = hops[best[win].hop];
  result.path = detail::make_path(c, hop, apply(*hop.action, c.state, hop.nsa), comps[win],
                                  opts.params, best[win].m);
  result.s_hat = c.state;
  return result;
}

}  // namespace derivekit
