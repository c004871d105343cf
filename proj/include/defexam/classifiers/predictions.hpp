// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "defexam/classifiers/agent.hpp"
#include "defexam/corpus/category.hpp"

namespace defexam::classifiers {

/// A classifier's scores for one claim: indefiniteness probability and one
/// probability per final category.
struct ScoredClaim {
  std::string application_id;
  int claim_number = 0;
  double probability = 0.0;
  std::array<double, corpus::kNumFinalCategories> categories{};
  bool failed = false;  // the classifier produced no usable output for this claim

  bool operator==(const ScoredClaim&) const = default;
};

void to_json(nlohmann::json& j, const ScoredClaim& s);
void from_json(const nlohmann::json& j, ScoredClaim& s);

using ClaimKey = std::pair<std::string, int>;

/// Agent output as scores. A failed prediction keeps probability 0 and is
/// flagged.
ScoredClaim score_of(const AgentPrediction& prediction);

/// Averages two score lists claim by claim (binary and per-category). Claims
/// missing from either list are dropped; a claim failed in either list stays
/// flagged.
std::vector<ScoredClaim> ensemble(const std::vector<ScoredClaim>& agent,
                                  const std::vector<ScoredClaim>& logreg);

std::map<ClaimKey, ScoredClaim> by_key(const std::vector<ScoredClaim>& scores);

}  // namespace defexam::classifiers
