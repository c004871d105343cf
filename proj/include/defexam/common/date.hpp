// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace defexam {

/// Proleptic Gregorian calendar date, serialized as YYYY-MM-DD.
struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  auto operator<=>(const Date&) const = default;

  std::string iso() const;

  /// Accepts "YYYY-MM-DD" optionally followed by a time part ("T..." or " ...").
  static std::optional<Date> parse(std::string_view text);
};

}  // namespace defexam
