// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

#include "derivekit/parallel.hpp"

#include <omp.h>

#include <charconv>
#include <cstdlib>
#include <string_view>

namespace derivekit {

int available_threads() { return omp_get_max_threads(); }

int resolve_jobs(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("DERIVEKIT_JOBS")) {
    std::string_view s(env);
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && p == s.data() + s.size() && v > 0) return v;
  }
  return available_threads();
}

}  // namespace derivekit
