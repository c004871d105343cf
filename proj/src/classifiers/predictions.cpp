// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#include "defexam/classifiers/predictions.hpp"

#include "defexam/classifiers/verbalized.hpp"

namespace defexam::classifiers {

using nlohmann::json;

void to_json(json& j, const ScoredClaim& s) {
  json categories = json::object();
  for (std::size_t c = 0; c < s.categories.size(); ++c) {
    categories[std::string(corpus::id(corpus::kFinalCategories[c]))] = s.categories[c];
  }
  j = {{"application_id", s.application_id},
       {"claim_number", s.claim_number},
       {"probability", s.probability},
       {"categories", categories},
       {"failed", s.failed}};
}

void from_json(const json& j, ScoredClaim& s) {
  s.application_id = j.at("application_id").get<std::string>();
  s.claim_number = j.at("claim_number").get<int>();
  s.probability = j.at("probability").get<double>();
  const auto& categories = j.at("categories");
  for (std::size_t c = 0; c < s.categories.size(); ++c) {
    s.categories[c] = categories.at(std::string(corpus::id(corpus::kFinalCategories[c]))).get<double>();
  }
  s.failed = j.value("failed", false);
}

ScoredClaim score_of(const AgentPrediction& prediction) {
  ScoredClaim s;
  s.application_id = prediction.application_id;
  s.claim_number = prediction.claim_number;
  s.failed = prediction.failed;
  if (!prediction.failed) {
    s.probability = prediction.probability();
    s.categories = reason_confidences_to_multilabel(prediction);
  }
  return s;
}

std::map<ClaimKey, ScoredClaim> by_key(const std::vector<ScoredClaim>& scores) {
  std::map<ClaimKey, ScoredClaim> out;
  for (const auto& s : scores) out[{s.application_id, s.claim_number}] = s;
  return out;
}

std::vector<ScoredClaim> ensemble(const std::vector<ScoredClaim>& agent,
                                  const std::vector<ScoredClaim>& logreg) {
  const auto other = by_key(logreg);
  std::vector<ScoredClaim> out;
  for (const auto& a : agent) {
    const auto it = other.find({a.application_id, a.claim_number});
    if (it == other.end()) continue;
    const auto& l = it->second;
    ScoredClaim s;
    s.application_id = a.application_id;
    s.claim_number = a.claim_number;
    s.failed = a.failed || l.failed;
    s.probability = ensemble_average(a.probability, l.probability);
    for (std::size_t c = 0; c < s.categories.size(); ++c) {
      s.categories[c] = ensemble_average(a.categories[c], l.categories[c]);
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace defexam::classifiers
