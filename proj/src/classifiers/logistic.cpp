// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#include "defexam/classifiers/logistic.hpp"

#include <algorithm>
#include <cmath>

#include <spdlog/spdlog.h>

#include "defexam/common/error.hpp"

namespace defexam::classifiers {

using nlohmann::json;

namespace {

double margin(const std::vector<double>& w, double b, std::size_t dense_dim,
              const features::FeatureRow& row) {
  double z = b;
  for (std::size_t i = 0; i < row.dense.size(); ++i) z += w[i] * row.dense[i];
  for (const auto& [idx, v] : row.sparse) z += w[dense_dim + idx] * v;
  return z;
}

// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

void check_shapes(const std::vector<double>& w, const features::FeatureMatrix& x,
                  const std::vector<int>& y) {
  if (x.rows.size() != y.size()) {
    throw Error(ErrorKind::kInvalidArgument, "feature rows (" + std::to_string(x.rows.size()) +
                                                 ") and labels (" + std::to_string(y.size()) +
                                                 ") differ in count");
  }
  if (w.size() != x.dim()) {
    throw Error(ErrorKind::kInvalidArgument, "weight dimension " + std::to_string(w.size()) +
                                                 " does not match feature dimension " +
                                                 std::to_string(x.dim()));
  }
}

double squared_norm(const std::vector<double>& v) {
  double s = 0;
  for (double e : v) s += e * e;
  return s;
}

}  // namespace

json LogisticConfig::to_json() const {
  return {{"initial_step", initial_step},
          {"l2", l2},
          {"max_epochs", max_epochs},
          {"gradient_tolerance", gradient_tolerance},
          {"seed", seed}};
}

LogisticConfig LogisticConfig::from_json(const json& j) {
  LogisticConfig c;
  c.initial_step = j.value("initial_step", c.initial_step);
  c.l2 = j.value("l2", c.l2);
  c.max_epochs = j.value("max_epochs", c.max_epochs);
  c.gradient_tolerance = j.value("gradient_tolerance", c.gradient_tolerance);
  c.seed = j.value("seed", c.seed);
  return c;
}

json LogisticModel::to_json() const {
  return {{"target", target},     {"bias", bias},
          {"dense_dim", dense_dim}, {"weights", weights},
          {"constant", constant}, {"config", config.to_json()}};
}

LogisticModel LogisticModel::from_json(const json& j) {
  LogisticModel m;
  m.target = j.at("target").get<std::string>();
  m.bias = j.at("bias").get<double>();
  m.dense_dim = j.at("dense_dim").get<std::size_t>();
  m.weights = j.at("weights").get<std::vector<double>>();
  m.constant = j.value("constant", false);
  m.config = LogisticConfig::from_json(j.value("config", json::object()));
  return m;
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double logistic_objective(const std::vector<double>& weights, double bias,
                          const features::FeatureMatrix& x, const std::vector<int>& y, double l2) {
  check_shapes(weights, x, y);
  double loss = 0;
  for (std::size_t i = 0; i < x.rows.size(); ++i) {
    const double z = margin(weights, bias, x.dense_dim, x.rows[i]);
    // -[y log s(z) + (1 - y) log(1 - s(z))] = softplus(z) - y z
    loss += softplus(z) - (y[i] ? z : 0.0);
  }
  return loss / static_cast<double>(x.rows.size()) + 0.5 * l2 * squared_norm(weights);
}

std::vector<double> logistic_gradient(const std::vector<double>& weights, double bias,
                                      const features::FeatureMatrix& x, const std::vector<int>& y,
                                      double l2) {
  check_shapes(weights, x, y);
  std::vector<double> g(weights.size() + 1, 0.0);
  const double n = static_cast<double>(x.rows.size());
  for (std::size_t i = 0; i < x.rows.size(); ++i) {
    const auto& row = x.rows[i];
    const double r = (sigmoid(margin(weights, bias, x.dense_dim, row)) - y[i]) / n;
    for (std::size_t k = 0; k < row.dense.size(); ++k) g[k] += r * row.dense[k];
    for (const auto& [idx, v] : row.sparse) g[x.dense_dim + idx] += r * v;
    g.back() += r;
  }
  for (std::size_t k = 0; k < weights.size(); ++k) g[k] += l2 * weights[k];
  return g;
}

TrainingResult train_logistic(const features::FeatureMatrix& x, const std::vector<int>& y,
                              const LogisticConfig& config, const std::string& target) {
  if (x.rows.size() != y.size()) {
    throw Error(ErrorKind::kInvalidArgument, "feature rows and labels differ in count");
  }
  std::size_t positives = 0;
  for (int v : y) positives += v ? 1 : 0;
  if (positives == 0 || positives == y.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "logistic regression needs both classes; target " + target + " has only " +
                    (positives == 0 ? "negatives" : "positives"));
  }
  for (const auto& row : x.rows) {
    if (row.dense.size() != x.dense_dim) {
      throw Error(ErrorKind::kInvalidArgument, "dense block size differs from matrix header");
    }
  }

  TrainingResult result;
  auto& model = result.model;
  model.weights.assign(x.dim(), 0.0);
  model.dense_dim = x.dense_dim;
  model.config = config;
  model.target = target;

  double loss = logistic_objective(model.weights, model.bias, x, y, config.l2);
  result.loss_history.push_back(loss);
  double step = config.initial_step;
  constexpr double kArmijo = 1e-4;
  constexpr double kMinStep = 1e-20;

  std::vector<double> trial_w(model.weights.size());
  for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
    const auto g = logistic_gradient(model.weights, model.bias, x, y, config.l2);
    const double g2 = squared_norm(g);
    if (std::sqrt(g2) < config.gradient_tolerance) break;

    double trial_loss = 0;
    double trial_b = 0;
    bool accepted = false;
    for (; step >= kMinStep; step *= 0.5) {
      for (std::size_t k = 0; k < trial_w.size(); ++k) trial_w[k] = model.weights[k] - step * g[k];
      trial_b = model.bias - step * g.back();
      trial_loss = logistic_objective(trial_w, trial_b, x, y, config.l2);
      if (trial_loss <= loss - kArmijo * step * g2) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    model.weights.swap(trial_w);
    trial_w.resize(model.weights.size());
    model.bias = trial_b;
    loss = trial_loss;
    result.loss_history.push_back(loss);
    ++result.epochs;
    step = std::min(step * 2.0, config.initial_step * 1024.0);
  }
  return result;
}

double predict_proba(const LogisticModel& model, const features::FeatureRow& row) {
  if (model.constant) return sigmoid(model.bias);
  if (row.dense.size() != model.dense_dim) {
    throw Error(ErrorKind::kInvalidArgument, "model expects " + std::to_string(model.dense_dim) +
                                                 " dense features, got " +
                                                 std::to_string(row.dense.size()));
  }
  const auto sparse_dim = model.weights.size() - model.dense_dim;
  for (const auto& [idx, v] : row.sparse) {
    if (idx >= sparse_dim) {
      throw Error(ErrorKind::kInvalidArgument,
                  "sparse feature index " + std::to_string(idx) + " outside model dimension " +
                      std::to_string(sparse_dim));
    }
  }
  return sigmoid(margin(model.weights, model.bias, model.dense_dim, row));
}

std::array<double, corpus::kNumFinalCategories> MultiLabelLogistic::predict(
    const features::FeatureRow& row) const {
  std::array<double, corpus::kNumFinalCategories> out{};
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = predict_proba(models[c], row);
  return out;
}

json MultiLabelLogistic::to_json() const {
  json out = json::array();
  for (const auto& m : models) out.push_back(m.to_json());
  return out;
}

MultiLabelLogistic MultiLabelLogistic::from_json(const json& j) {
  if (!j.is_array() || j.size() != corpus::kNumFinalCategories) {
    throw Error(ErrorKind::kData, "multi-label model must hold one model per category");
  }
  MultiLabelLogistic m;
  for (std::size_t c = 0; c < m.models.size(); ++c) m.models[c] = LogisticModel::from_json(j[c]);
  return m;
}

std::vector<std::array<int, corpus::kNumFinalCategories>> category_targets(
    const std::vector<corpus::LabeledClaim>& rows) {
  std::vector<std::array<int, corpus::kNumFinalCategories>> out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out[i].fill(0);
    for (const auto& reason : rows[i].reasons) {
      if (const auto idx = corpus::final_index(reason.category)) out[i][*idx] = 1;
    }
  }
  return out;
}

MultiLabelLogistic train_multilabel(const features::FeatureMatrix& x,
                                    const std::vector<corpus::LabeledClaim>& rows,
                                    const LogisticConfig& config,
                                    std::vector<std::string>* warnings) {
  const auto targets = category_targets(rows);
  MultiLabelLogistic out;
  for (std::size_t c = 0; c < corpus::kNumFinalCategories; ++c) {
    const auto id = std::string(corpus::id(corpus::kFinalCategories[c]));
    std::vector<int> y(rows.size());
    std::size_t positives = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) positives += (y[i] = targets[i][c]);
    if (positives == 0 || positives == rows.size()) {
      const double rate = rows.empty() ? 0.5 : static_cast<double>(positives) / rows.size();
      const double clipped = std::clamp(rate, 1e-6, 1.0 - 1e-6);
      auto& m = out.models[c];
      m.target = id;
      m.constant = true;
      m.bias = std::log(clipped / (1.0 - clipped));
      m.dense_dim = x.dense_dim;
      m.weights.assign(x.dim(), 0.0);
      m.config = config;
      const auto message = "category " + id + " has a single class in training; using a constant model";
      spdlog::warn("{}", message);
      if (warnings) warnings->push_back(message);
      continue;
    }
    out.models[c] = train_logistic(x, y, config, id).model;
  }
  return out;
}

}  // namespace defexam::classifiers
