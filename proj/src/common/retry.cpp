// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#include "defexam/common/retry.hpp"

#include <algorithm>
#include <cmath>

namespace defexam {

std::chrono::milliseconds RetryPolicy::backoff_before(int attempt) const {
  if (attempt <= 1) return std::chrono::milliseconds(0);
  const double scaled = static_cast<double>(initial_backoff.count()) *
                        std::pow(backoff_multiplier, attempt - 2);
  return std::min(max_backoff,
                  std::chrono::milliseconds(static_cast<long long>(std::llround(scaled))));
}

bool is_transient_status(int status) { return status == 0 || status == 429 || status >= 500; }

}  // namespace defexam
