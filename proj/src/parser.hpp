// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string_view>

#include "derivekit/expr.hpp"

namespace derivekit::detail {

struct ParsedEquation {
  Expr lhs;
  std::uint32_t lhs_index = 0;
  Expr rhs;
};

/// "(LHS[^(k)], RHS)"
ParsedEquation parse_state_tuple(std::string_view text);
/// "LHS[^(k)] = RHS"
ParsedEquation parse_equation_line(std::string_view text);

}  // namespace derivekit::detail
