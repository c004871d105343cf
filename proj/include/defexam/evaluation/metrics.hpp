// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "defexam/classifiers/predictions.hpp"
#include "defexam/corpus/category.hpp"
#include "defexam/corpus/types.hpp"

namespace defexam::evaluation {

struct ThresholdChoice {
  double threshold = 0.5;        // predict positive when score >= threshold
  double achieved_fraction = 0;  // on the scores the threshold was chosen on
  bool target_reached = true;    // false when ties forced the fallback rule
};

/// Smallest threshold t with fraction(score >= t) <= target. When score ties
/// keep every such t at least 1/n below the target, the t minimizing
/// |fraction - target| is used instead (ties to the larger t).
/// Throws an invalid-argument error on empty scores or a target outside (0, 1).
ThresholdChoice balance_threshold(const std::vector<double>& scores, double target_fraction);

/// Rates in percent.
struct BinaryMetrics {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  double accuracy = 0;
  double predicted_positive = 0;
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  bool precision_undefined = false;  // nothing predicted positive; precision reported as 0
  bool recall_undefined = false;     // no positive labels; recall reported as 0
};

/// Harmonic mean, 0 when both inputs are 0.
double harmonic_mean(double a, double b);

BinaryMetrics binary_metrics(const std::vector<bool>& predictions, const std::vector<bool>& labels);

/// Area under the ROC curve in percent, Mann-Whitney form with half credit
/// for ties. Throws an invalid-argument error unless both classes occur.
double auroc(const std::vector<double>& scores, const std::vector<bool>& labels);

struct CategoryResult {
  corpus::Category category;
  double threshold = 0.5;
  double validation_rate = 0;
  bool threshold_defaulted = false;  // category absent from validation labels
  BinaryMetrics metrics;
};

struct MultilabelResult {
  std::vector<CategoryResult> categories;  // final categories, in order
  double macro_f1 = 0;
  double micro_f1 = 0;
};

using CategoryScores = std::vector<std::array<double, corpus::kNumFinalCategories>>;
using CategoryLabels = std::vector<std::array<int, corpus::kNumFinalCategories>>;

/// Per category, the threshold balances validation predictions to the
/// category's validation positive rate.
MultilabelResult multilabel_metrics(const CategoryScores& test_scores, const CategoryLabels& test_labels,
                                    const CategoryScores& validation_scores,
                                    const CategoryLabels& validation_labels);

struct CalibrationBin {
  double lower = 0, upper = 0;
  std::size_t count = 0;
  double fraction = 0;
  std::optional<double> mean_probability;
  std::optional<double> accuracy;  // mean outcome within the bin
  bool low_support = false;        // fewer than 1% of samples
};

struct CalibrationReport {
  std::vector<CalibrationBin> bins;
  std::optional<double> pearson;  // confidence vs. max judge similarity, when supplied
};

/// Ten equal-width bins over [0, 1]; the last bin includes 1.
CalibrationReport calibration_analysis(const std::vector<double>& probabilities,
                                       const std::vector<bool>& outcomes,
                                       const std::vector<double>& judge_confidences = {},
                                       const std::vector<double>& judge_similarities = {});

/// Absent when either side has fewer than 2 distinct values.
std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y);

/// Uniform scores in [0, 1): one for the claim, then one per category.
std::vector<classifiers::ScoredClaim> random_baseline(const std::vector<corpus::LabeledClaim>& rows,
                                                      std::uint64_t seed);

}  // namespace defexam::evaluation
