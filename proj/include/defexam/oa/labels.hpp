// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "defexam/corpus/category.hpp"
#include "defexam/corpus/types.hpp"
#include "defexam/oa/extraction.hpp"
#include "defexam/oa/matching.hpp"

namespace defexam::oa {

/// Exact match against the category identifiers after case-folding and
/// treating spaces, hyphens and underscores alike. Anything else is `other`;
/// in that case a warning is appended to `warnings` when given.
corpus::Category normalize_category(std::string_view raw_category,
                                    std::vector<std::string>* warnings = nullptr);

struct FinalizedLabels {
  std::vector<corpus::LabeledClaim> claims;  // ascending claim number, label=true
  std::vector<std::string> warnings;
};

/// Indefinite claims of one application. Reasons in the parse-only categories
/// are dropped; a claim left without reasons is not emitted. Recitations are
/// matched against each claim's own text.
FinalizedLabels finalize_labels(const RawRejectionRecord& record,
                                const corpus::PatentApplication& application,
                                const MatchOptions& match = {});

}  // namespace defexam::oa
