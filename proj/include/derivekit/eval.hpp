// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "derivekit/dataset.hpp"
#include "derivekit/search.hpp"

namespace derivekit {

struct EvalConfig {
  Measure measure;
  double eta = 0.0;  // integer in acceptance runs; real values are exploratory
  HeuristicParams params;
  int jobs = 0;
};

/// Failure labels, checked in this order.
inline constexpr std::string_view kTerminalState = "terminal-state";
inline constexpr std::string_view kRepeatingEquation = "repeating-equation";
inline constexpr std::string_view kMultiplePathways = "multiple-pathways";
inline constexpr std::string_view kUnclassified = "unclassified";

struct UnitOutcome {
  std::size_t index = 0;  // i of the hidden state s_i
  std::string state_type;
  std::string action_type;
  std::string true_action;
  std::string truth;
  std::string predicted;
  double distance = 0.0;  // M(predicted, truth)
  bool success = false;
  std::string failure;  // empty on success
  std::string first_action;
  std::string first_nsa;
  std::string second_action;
  std::string second_nsa;
  double heuristic = 0.0;
  double end_distance = 0.0;
  std::size_t zero_mids = 0;

  bool operator==(const UnitOutcome&) const = default;
};

struct CellStats {
  std::size_t count = 0;
  std::size_t successes = 0;

  [[nodiscard]] double accuracy() const {
    return count == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(count);
  }
  bool operator==(const CellStats&) const = default;
};

struct EvalReport {
  std::string measure;
  double eta = 0.0;
  double epsilon_low = 0.0;
  std::size_t total = 0;
  std::size_t successes = 0;
  std::map<std::pair<std::string, std::string>, CellStats> cells;  // (state type, action type)
  std::vector<UnitOutcome> units;

  [[nodiscard]] double accuracy() const {
    return total == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(total);
  }
  bool operator==(const EvalReport&) const = default;
};

enum class ReportFormat { Table, Json };

/// M(s_n, s_{n+1}): the last record against the dummy tail.
double epsilon_low(const DerivationSequence& seq, const Measure& m);

/// Reconstructs every s_i, i = 1..n, independently. The KB for unit i is
/// `requisite` plus s_1..s_{i-1}. Units run in parallel; the report does
/// not depend on the worker count.
EvalReport evaluate(const DerivationSequence& seq, std::span<const Action> actions,
                    std::span<const EquationState> requisite, const EvalConfig& cfg);

/// Aggregates outcomes into totals and cells.
void tally(EvalReport& r);

std::string render_report(const EvalReport& r, ReportFormat format);
EvalReport report_from_json(std::string_view json);

}  // namespace derivekit
