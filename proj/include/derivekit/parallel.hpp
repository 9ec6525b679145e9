// Copyright 2026 The derivekit Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace derivekit {

/// Worker count for OpenMP regions. A positive request wins; otherwise
/// DERIVEKIT_JOBS, otherwise the OpenMP default.
int resolve_jobs(int requested);

/// Number of hardware threads OpenMP reports.
int available_threads();

}  // namespace derivekit
