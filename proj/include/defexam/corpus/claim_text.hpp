// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "defexam/corpus/types.hpp"

namespace defexam::corpus {

/// Claim numbers referenced by a claim ("claim 1", "claims 2-4",
/// "claims 1, 3, or 5", "any preceding claim"), ascending and deduplicated.
/// The "preceding claim" forms need `own_number` to resolve; without it they
/// are skipped. The claim's own number is never returned.
std::vector<int> parse_claim_dependencies(std::string_view claim_text,
                                          std::optional<int> own_number = std::nullopt);

/// Splits a description into paragraphs at blank lines and at numbered
/// markers such as "[0001]". Markers are removed; empty paragraphs dropped.
/// Throws a data error if the text has no non-whitespace content.
std::vector<std::string> segment_description_paragraphs(std::string_view description_text);

inline bool is_independent(const Claim& claim) { return claim.parent_numbers.empty(); }

/// Rough count of claim "features": segments separated by semicolons or by
/// the word "wherein". This is an approximation; no authoritative definition
/// exists.
int feature_segment_count(std::string_view claim_text);

}  // namespace defexam::corpus
