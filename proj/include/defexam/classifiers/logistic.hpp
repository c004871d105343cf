// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "defexam/corpus/category.hpp"
#include "defexam/corpus/types.hpp"
#include "defexam/features/matrix.hpp"

namespace defexam::classifiers {

struct LogisticConfig {
  double initial_step = 1.0;  // first trial step of the backtracking line search
  double l2 = 1e-3;           // penalty (l2 / 2) * ||w||^2; the bias is not penalized
  int max_epochs = 500;
  double gradient_tolerance = 1e-6;
  std::uint64_t seed = 0;  // recorded for provenance; training itself draws nothing

  nlohmann::json to_json() const;
  static LogisticConfig from_json(const nlohmann::json& j);
};

struct LogisticModel {
  std::vector<double> weights;  // dense slots, then sparse slots
  double bias = 0.0;
  std::size_t dense_dim = 0;
  LogisticConfig config;
  std::string target;  // "binary" or a category id
  bool constant = false;  // fitted to a single-class target: predicts sigmoid(bias)

  std::size_t dim() const { return weights.size(); }

  nlohmann::json to_json() const;
  static LogisticModel from_json(const nlohmann::json& j);
};

struct TrainingResult {
  LogisticModel model;
  std::vector<double> loss_history;  // objective before the first and after each epoch
  int epochs = 0;
};

double sigmoid(double z);

/// Mean log loss plus (l2 / 2) * ||w||^2.
double logistic_objective(const std::vector<double>& weights, double bias,
                          const features::FeatureMatrix& x, const std::vector<int>& y, double l2);

/// Gradient of logistic_objective; the last element is the bias derivative.
std::vector<double> logistic_gradient(const std::vector<double>& weights, double bias,
                                      const features::FeatureMatrix& x, const std::vector<int>& y,
                                      double l2);

/// Full-batch gradient descent with a backtracking (Armijo) step, so the
/// objective never increases between epochs. Throws an invalid-argument error
/// when `y` holds a single class or the sizes disagree.
TrainingResult train_logistic(const features::FeatureMatrix& x, const std::vector<int>& y,
                              const LogisticConfig& config, const std::string& target = "binary");

/// sigmoid(w . x + b). Throws an invalid-argument error when the row does not
/// fit the model's dimensions.
double predict_proba(const LogisticModel& model, const features::FeatureRow& row);

/// One binary model per final category. Categories with a single class in
/// the training labels get a constant model at the observed rate.
struct MultiLabelLogistic {
  std::array<LogisticModel, corpus::kNumFinalCategories> models;

  std::array<double, corpus::kNumFinalCategories> predict(const features::FeatureRow& row) const;
  nlohmann::json to_json() const;
  static MultiLabelLogistic from_json(const nlohmann::json& j);
};

/// Per-category targets: 1 when any reason of the row has that category.
std::vector<std::array<int, corpus::kNumFinalCategories>> category_targets(
    const std::vector<corpus::LabeledClaim>& rows);

MultiLabelLogistic train_multilabel(const features::FeatureMatrix& x,
                                    const std::vector<corpus::LabeledClaim>& rows,
                                    const LogisticConfig& config,
                                    std::vector<std::string>* warnings = nullptr);

}  // namespace defexam::classifiers
