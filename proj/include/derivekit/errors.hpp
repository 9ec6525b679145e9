// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace derivekit {

/// Malformed input data: a bad dataset row, KB line or seed file.
/// The message names the file and line when known.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace derivekit
