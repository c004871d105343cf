// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>

namespace defexam {

struct RetryPolicy {
  int max_attempts = 4;
  std::chrono::milliseconds initial_backoff{500};
  double backoff_multiplier = 2.0;
  std::chrono::milliseconds max_backoff{30000};

  /// Delay before attempt `attempt` (1-based; attempt 1 has no delay).
  std::chrono::milliseconds backoff_before(int attempt) const;
};

/// 429 and 5xx are retried, as is a missing response (status 0).
bool is_transient_status(int status);

}  // namespace defexam
