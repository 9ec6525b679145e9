// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "derivekit/search.hpp"

namespace derivekit::detail {

/// A second-hop (action, NSA) pair.
struct Hop {
  const Action* action = nullptr;
  Nsa nsa;
  std::string nsa_text;
};

/// All (action, NSA) pairs sorted by (action name, NSA rendering).
std::vector<Hop> all_hops(std::span<const Action> actions, const KnowledgeBase& kb);

CandidatePath make_path(const Candidate& first, const Hop& second, EquationState end,
                        HeuristicComponents comps, const HeuristicParams& p, double m);

}  // namespace derivekit::detail
