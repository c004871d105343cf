// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "defexam/features/linguistic.hpp"
#include "defexam/features/tfidf.hpp"

namespace defexam::features {

enum class FeatureSet { kLinguistic, kTfidf, kAll };

std::string_view to_string(FeatureSet set);
FeatureSet feature_set_from_string(std::string_view name);  // throws invalid-argument

/// One example: a dense block (standardized linguistic slots) followed by a
/// sparse block (tf-idf), indexed after the dense block.
struct FeatureRow {
  std::vector<double> dense;
  SparseVector sparse;
};

struct FeatureMatrix {
  std::vector<std::string> names;  // dense names, then sparse names
  std::size_t dense_dim = 0;
  std::size_t sparse_dim = 0;
  std::vector<FeatureRow> rows;

  std::size_t dim() const { return dense_dim + sparse_dim; }
};

/// Per-slot standardization fitted on training rows. Constant slots keep a
/// unit scale so they map to zero.
struct StandardScaler {
  std::vector<double> mean;
  std::vector<double> scale;

  static StandardScaler fit(const std::vector<std::vector<double>>& rows);
  std::vector<double> transform(const std::vector<double>& row) const;
};

using DescriptionIndex = std::map<std::string, DescriptionProfile>;

DescriptionIndex index_descriptions(const std::vector<corpus::PatentApplication>& applications);

/// Feature pipeline: tf-idf vocabulary and scaler come from training rows only.
class FeatureExtractor {
 public:
  FeatureExtractor() = default;

  static FeatureExtractor fit(FeatureSet set, const std::vector<corpus::LabeledClaim>& rows,
                              const DescriptionIndex& descriptions,
                              const LinguisticConfig& config = LinguisticConfig::defaults(),
                              std::size_t max_features = 20000);

  FeatureRow transform(const corpus::Claim& claim, const DescriptionIndex& descriptions) const;
  FeatureMatrix transform(const std::vector<corpus::LabeledClaim>& rows,
                          const DescriptionIndex& descriptions) const;

  std::vector<std::string> names() const;
  std::size_t dense_dim() const;
  std::size_t sparse_dim() const;
  FeatureSet feature_set() const { return set_; }

  nlohmann::json to_json() const;
  static FeatureExtractor from_json(const nlohmann::json& j);

 private:
  FeatureSet set_ = FeatureSet::kAll;
  LinguisticConfig config_;
  StandardScaler scaler_;
  TfidfModel tfidf_;
};

/// Writes `<stem>.triplets.tsv` (row, column, value for each non-zero entry)
/// and `<stem>.names.tsv` (column, name).
void export_triplets(const std::filesystem::path& dir, const std::string& stem,
                     const FeatureMatrix& matrix);

}  // namespace defexam::features
