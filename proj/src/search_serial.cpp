// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

// Sequential reference for the search. It follows the definition
// literally and is kept for differential testing and benchmarks.

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "derivekit/search.hpp"
#include "search_internal.hpp"

namespace derivekit {

ReconstructResult reconstruct_serial(const DerivationUnit& unit, std::span<const Action> actions,
                                     const KnowledgeBase& kb, const SearchOptions& opts) {
  if (actions.empty()) throw std::invalid_argument("empty action set");
  const auto target_text = render_state(unit.s_next);
  const auto cands = generate_candidates(unit.s_prev, actions, kb);
  const auto hops = detail::all_hops(actions, kb);
  if (cands.empty() || hops.empty()) throw std::invalid_argument("no candidate paths for this unit");

  std::vector<HeuristicComponents> comps;
  std::vector<double> h_val;
  for (const auto& c : cands) {
    comps.push_back(heuristic_components(c.state, unit.s_next, opts.params.threshold));
    h_val.push_back(heuristic(comps.back(), opts.params));
  }
  std::vector<std::size_t> order(cands.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return h_val[a] < h_val[b]; });

  ReconstructResult result;
  result.report.first_hop_candidates = cands.size();
  double best_m = std::numeric_limits<double>::infinity();
  std::size_t best_c = 0;
  std::size_t best_h = 0;
  EquationState best_end;
  for (auto i : order) {
    for (std::size_t h = 0; h < hops.size(); ++h) {
      auto end = apply(*hops[h].action, cands[i].state, hops[h].nsa);
      const double m = distance(opts.measure, render_state(end), target_text);
      // Visiting order is (H, first hop, second hop), so only a strictly
      // smaller M replaces the incumbent.
      if (m < best_m) {
        best_m = m;
        best_c = i;
        best_h = h;
        best_end = std::move(end);
      }
    }
    if (best_m == 0.0) {
      result.report.early_stop = true;
      break;
    }
  }
  result.s_hat = cands[best_c].state;
  result.path = detail::make_path(cands[best_c], hops[best_h], std::move(best_end), comps[best_c],
                                  opts.params, best_m);
  return result;
}

std::vector<PathRecord> enumerate_paths(const DerivationUnit& unit,
                                        std::span<const Action> actions, const KnowledgeBase& kb,
                                        const Measure& m) {
  const auto target_text = render_state(unit.s_next);
  const auto hops = detail::all_hops(actions, kb);
  std::vector<PathRecord> out;
  for (const auto& c : generate_candidates(unit.s_prev, actions, kb)) {
    for (const auto& h : hops) {
      auto end = render_state(apply(*h.action, c.state, h.nsa));
      const double d = distance(m, end, target_text);
      out.push_back(PathRecord{c.action->name, c.nsa_text, c.text, h.action->name, h.nsa_text,
                               std::move(end), d});
    }
  }
  return out;
}

}  // namespace derivekit
