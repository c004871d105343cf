// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "defexam/corpus/types.hpp"

namespace defexam::features {

/// Sorted (index, value) pairs.
using SparseVector = std::vector<std::pair<std::uint32_t, double>>;

/// Texts a classifier vocabulary may be fitted on. Built only from rows
/// labelled as training data, so evaluation text cannot leak into a fit.
class TrainSplit {
 public:
  static TrainSplit from_rows(const std::vector<corpus::LabeledClaim>& rows);

  const std::vector<std::string>& texts() const { return texts_; }

 private:
  std::vector<std::string> texts_;
};

class TfidfModel {
 public:
  TfidfModel() = default;

  /// Classifier features: fitted on the training split.
  static TfidfModel fit(const TrainSplit& train, std::size_t max_features = 20000);

  /// Retrieval index over arbitrary documents (e.g. one application's
  /// description paragraphs). Not meant for classifier features.
  static TfidfModel fit_documents(const std::vector<std::string>& documents,
                                  std::size_t max_features = 20000);

  /// L2-normalized tf-idf vector; the zero vector when no token is known.
  /// Throws an invalid-argument error on an unfitted model.
  SparseVector vectorize(std::string_view text) const;

  bool fitted() const { return fitted_; }
  std::size_t size() const { return tokens_.size(); }
  std::size_t corpus_size() const { return corpus_size_; }
  std::size_t max_features() const { return max_features_; }
  const std::vector<std::string>& tokens() const { return tokens_; }  // by index
  std::optional<std::uint32_t> index_of(const std::string& token) const;
  std::size_t document_frequency(std::uint32_t index) const { return document_frequency_[index]; }
  double idf(std::uint32_t index) const;

  nlohmann::json to_json() const;
  static TfidfModel from_json(const nlohmann::json& j);

 private:
  bool fitted_ = false;
  std::size_t corpus_size_ = 0;
  std::size_t max_features_ = 0;
  std::vector<std::string> tokens_;
  std::map<std::string, std::uint32_t> vocabulary_;
  std::vector<std::size_t> document_frequency_;
};

double dot(const SparseVector& a, const SparseVector& b);

}  // namespace defexam::features
