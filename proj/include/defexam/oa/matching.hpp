// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "defexam/corpus/types.hpp"

namespace defexam::oa {

struct MatchOptions {
  double threshold = 0.80;
  double window_tolerance = 0.20;  // candidate windows span L*(1 -/+ tolerance)
};

/// Text prepared for matching, remembering where each character came from.
/// `origin_begin[i]`/`origin_end[i]` delimit, in Unicode scalar values of the
/// original text, the characters that produced normalized character i.
struct NormalizedText {
  std::u32string text;
  std::vector<std::size_t> origin_begin;
  std::vector<std::size_t> origin_end;
};

/// Collapses whitespace, maps typographic quotes and dashes to ASCII and
/// case-folds. With `strip_enclosing_quotes`, a quote pair wrapping the whole
/// text is removed as well (examiners quote the recitations they cite).
NormalizedText normalize_for_matching(std::string_view text, bool strip_enclosing_quotes = false);

/// 1 - edit_distance / max(|a|, |b|); 1 for two empty strings.
double similarity(std::u32string_view a, std::u32string_view b);

/// Best window of `claim_text` for `recitation`. The returned span has
/// claim_number 0 and offsets in Unicode scalar values of `claim_text`.
/// Returns nothing when either side is empty after normalization or the best
/// score is below the threshold. Ties go to the earliest start, then the
/// shortest window.
std::optional<corpus::RecitationSpan> fuzzy_match_recitation(std::string_view recitation,
                                                             std::string_view claim_text,
                                                             const MatchOptions& options = {});

/// Substring of `text` between scalar offsets [start, end).
std::string scalar_substr(std::string_view text, std::size_t start, std::size_t end);

}  // namespace defexam::oa
