// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "defexam/corpus/types.hpp"

namespace defexam::features {

/// Bumped whenever the slot order below changes.
inline constexpr std::string_view kLinguisticVersion = "linguistic-v1";

/// Slot names of the fixed part, in order. Trigger flags follow, one per
/// trigger, named "trigger:<phrase>".
inline constexpr const char* kLinguisticSlots[] = {
    "n_characters",
    "n_words",
    "claim_description_length_ratio",
    "claim_description_word_iou",
    "n_unique_stems",
    "type_token_ratio",
    "n_stopwords",
    "flesch_reading_ease",
    "flesch_kincaid_grade",
    "gunning_fog",
    "automated_readability_index",
    "dale_chall_readability_score",
    "is_independent",
};

struct LinguisticConfig {
  std::vector<std::string> triggers;  // defaults to the shipped trigger lexicon

  static LinguisticConfig defaults();
};

std::vector<std::string> linguistic_feature_names(const LinguisticConfig& config);

/// True when `phrase` occurs in `text` (case-insensitive) with no letter or
/// digit directly before or after it.
bool contains_phrase(std::string_view text, std::string_view phrase);

/// Description-side data reused for every claim of one application.
struct DescriptionProfile {
  std::size_t characters = 0;
  std::vector<std::string> word_set;  // sorted unique tokens

  static DescriptionProfile of(const std::vector<std::string>& paragraphs);
};

std::vector<double> linguistic_features(const corpus::Claim& claim,
                                        const DescriptionProfile& description,
                                        const LinguisticConfig& config);

std::vector<double> linguistic_features(const corpus::Claim& claim,
                                        const std::vector<std::string>& description_paragraphs,
                                        const LinguisticConfig& config);

}  // namespace defexam::features
