// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace defexam::classifiers {

struct ConfidenceExpression {
  std::string phrase;
  double probability = 0.0;

  bool operator==(const ConfidenceExpression&) const = default;
};

/// Ordered likelihood expressions with one probability each, strictly
/// increasing.
class LikelihoodLexicon {
 public:
  /// Throws a config error when probabilities are not strictly increasing or
  /// outside (0, 1).
  explicit LikelihoodLexicon(std::vector<ConfidenceExpression> entries);

  /// The shipped table (lexicons/probability_lexicon_v1.tsv).
  static const LikelihoodLexicon& defaults();
  static LikelihoodLexicon parse(std::string_view tsv);

  const std::vector<ConfidenceExpression>& entries() const { return entries_; }

  /// Exact lookup after trimming, lower-casing and collapsing whitespace;
  /// otherwise the entry with the smallest edit distance (ties to the earlier
  /// entry), with a warning appended to `warnings` when given.
  ConfidenceExpression resolve(std::string_view phrase,
                               std::vector<std::string>* warnings = nullptr) const;

 private:
  std::vector<ConfidenceExpression> entries_;
};

double map_verbalized_probability(std::string_view phrase,
                                  std::vector<std::string>* warnings = nullptr);

/// Arithmetic mean of two probabilities; throws an invalid-argument error
/// outside [0, 1].
double ensemble_average(double p_agent, double p_logreg);

}  // namespace defexam::classifiers
