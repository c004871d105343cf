// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "defexam/classifiers/predictions.hpp"
#include "defexam/evaluation/judge.hpp"
#include "defexam/evaluation/metrics.hpp"

namespace defexam::evaluation {

struct BinaryBlock {
  ThresholdChoice threshold;  // chosen on validation scores
  BinaryMetrics metrics;      // on test
  std::optional<double> auroc;
};

struct ModelEvaluation {
  std::string name;
  std::size_t test_claims = 0;
  std::size_t failed_predictions = 0;
  std::optional<BinaryBlock> binary;
  std::optional<MultilabelResult> multilabel;
  std::optional<JudgeAggregate> judge;
  std::optional<CalibrationReport> calibration;
};

/// Binary, multi-label and calibration blocks for one model. Scores are
/// matched to rows by (application id, claim number); rows without a score
/// count as score 0. Throws a prerequisite error when no row has a score.
ModelEvaluation evaluate_scores(const std::string& name,
                                const std::vector<corpus::LabeledClaim>& test_rows,
                                const std::vector<classifiers::ScoredClaim>& test_scores,
                                const std::vector<corpus::LabeledClaim>& validation_rows,
                                const std::vector<classifiers::ScoredClaim>& validation_scores);

/// Writes binary.tsv, multilabel.tsv, judge.tsv, calibration.tsv and a
/// readable summary.md.
void write_reports(const std::filesystem::path& dir, const std::vector<ModelEvaluation>& models);

}  // namespace defexam::evaluation
