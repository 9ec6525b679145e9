// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "derivekit/actions.hpp"
#include "derivekit/dataset.hpp"

namespace derivekit {

struct GenConfig {
  std::vector<EquationState> seeds;  // also the requisite KB at evaluation time
  std::size_t length = 10;           // number of records, >= 3
  double branch_p = 0.2;             // chance of consider_kb_equation per step
  std::uint64_t rng = 0;
  /// Each side of a generated state stays within this many characters.
  /// Keeping every subexpression short makes the z term fall back to the
  /// whole-state distance.
  std::size_t max_side_chars = 100;
};

/// Thrown when no action yields a fresh state. Carries the stalled state.
class GenerationStalled : public std::runtime_error {
 public:
  GenerationStalled(const std::string& msg, EquationState state)
      : std::runtime_error(msg), state_(std::move(state)) {}
  [[nodiscard]] const EquationState& state() const { return state_; }

 private:
  EquationState state_;
};

struct Derivation {
  std::vector<EquationState> states;  // s_1..s_n
  std::vector<const Action*> actions;
  std::vector<Nsa> nsas;

  [[nodiscard]] DerivationSequence to_sequence() const;
};

/// Random forward walk. Step 1 considers a seed equation. Later steps take
/// consider_kb_equation with probability branch_p, otherwise a uniform
/// choice over every other (action, NSA) pair that changes the state.
/// Equation arguments for the step producing s_j come from seeds and
/// s_1..s_{j-2}; symbol arguments from the symbols of seeds and
/// s_1..s_{j-1}. That keeps every step reachable by the two-hop search.
Derivation generate(const GenConfig& cfg, std::span<const Action> actions);

/// Checks Conventions 1, 4 and 5 along a derivation and that replaying the
/// recorded steps reproduces every state. Returns problems found.
std::vector<std::string> audit(const Derivation& d);

}  // namespace derivekit
