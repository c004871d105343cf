// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#include "defexam/features/matrix.hpp"

#include <cmath>

#include <fmt/format.h>

#include "defexam/common/error.hpp"
#include "defexam/common/fs.hpp"

namespace defexam::features {

using nlohmann::json;

std::string_view to_string(FeatureSet set) {
  switch (set) {
    case FeatureSet::kLinguistic: return "linguistic";
    case FeatureSet::kTfidf: return "tfidf";
    case FeatureSet::kAll: return "all";
  }
  return "all";
}

FeatureSet feature_set_from_string(std::string_view name) {
  for (auto s : {FeatureSet::kLinguistic, FeatureSet::kTfidf, FeatureSet::kAll}) {
    if (to_string(s) == name) return s;
  }
  throw Error(ErrorKind::kInvalidArgument,
              "unknown feature set \"" + std::string(name) + "\" (linguistic, tfidf, all)");
}

StandardScaler StandardScaler::fit(const std::vector<std::vector<double>>& rows) {
  StandardScaler s;
  if (rows.empty()) return s;
  const auto dim = rows.front().size();
  s.mean.assign(dim, 0.0);
  s.scale.assign(dim, 0.0);
  const double n = static_cast<double>(rows.size());
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < dim; ++i) s.mean[i] += r[i] / n;
  }
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < dim; ++i) s.scale[i] += (r[i] - s.mean[i]) * (r[i] - s.mean[i]) / n;
  }
  for (auto& v : s.scale) v = v > 1e-24 ? std::sqrt(v) : 1.0;
  return s;
}

std::vector<double> StandardScaler::transform(const std::vector<double>& row) const {
  if (row.size() != mean.size()) {
    throw Error(ErrorKind::kInvalidArgument, "scaler expects " + std::to_string(mean.size()) +
                                                 " slots, got " + std::to_string(row.size()));
  }
  std::vector<double> out(row.size());
  for (std::size_t i = 0; i < row.size(); ++i) out[i] = (row[i] - mean[i]) / scale[i];
  return out;
}

DescriptionIndex index_descriptions(const std::vector<corpus::PatentApplication>& applications) {
  DescriptionIndex index;
  for (const auto& app : applications) {
    index.emplace(app.application_id, DescriptionProfile::of(app.description_paragraphs));
  }
  return index;
}

namespace {

const DescriptionProfile& profile_for(const DescriptionIndex& index, const std::string& id) {
  static const DescriptionProfile kEmpty;
  const auto it = index.find(id);
  return it == index.end() ? kEmpty : it->second;
}

bool uses_dense(FeatureSet s) { return s != FeatureSet::kTfidf; }
bool uses_sparse(FeatureSet s) { return s != FeatureSet::kLinguistic; }

}  // namespace

FeatureExtractor FeatureExtractor::fit(FeatureSet set, const std::vector<corpus::LabeledClaim>& rows,
                                       const DescriptionIndex& descriptions,
                                       const LinguisticConfig& config, std::size_t max_features) {
  FeatureExtractor fx;
  fx.set_ = set;
  fx.config_ = config;
  const auto train = TrainSplit::from_rows(rows);
  if (train.texts().empty()) {
    throw Error(ErrorKind::kData, "no training rows to fit features on");
  }
  if (uses_sparse(set)) fx.tfidf_ = TfidfModel::fit(train, max_features);
  if (uses_dense(set)) {
    std::vector<std::vector<double>> dense;
    for (const auto& row : rows) {
      if (row.split != corpus::Split::kTrain) continue;
      dense.push_back(linguistic_features(
          row.claim, profile_for(descriptions, row.application_id()), config));
    }
    fx.scaler_ = StandardScaler::fit(dense);
  }
  return fx;
}

FeatureRow FeatureExtractor::transform(const corpus::Claim& claim,
                                       const DescriptionIndex& descriptions) const {
  FeatureRow row;
  if (uses_dense(set_)) {
    row.dense = scaler_.transform(
        linguistic_features(claim, profile_for(descriptions, claim.application_id), config_));
  }
  if (uses_sparse(set_)) row.sparse = tfidf_.vectorize(claim.text);
  return row;
}

FeatureMatrix FeatureExtractor::transform(const std::vector<corpus::LabeledClaim>& rows,
                                          const DescriptionIndex& descriptions) const {
  FeatureMatrix m;
  m.names = names();
  m.dense_dim = dense_dim();
  m.sparse_dim = sparse_dim();
  m.rows.reserve(rows.size());
  for (const auto& r : rows) m.rows.push_back(transform(r.claim, descriptions));
  return m;
}

std::vector<std::string> FeatureExtractor::names() const {
  std::vector<std::string> out;
  if (uses_dense(set_)) out = linguistic_feature_names(config_);
  if (uses_sparse(set_)) {
    for (const auto& t : tfidf_.tokens()) out.push_back("tfidf:" + t);
  }
  return out;
}

std::size_t FeatureExtractor::dense_dim() const {
  return uses_dense(set_) ? linguistic_feature_names(config_).size() : 0;
}

std::size_t FeatureExtractor::sparse_dim() const { return uses_sparse(set_) ? tfidf_.size() : 0; }

json FeatureExtractor::to_json() const {
  json j = {{"feature_set", std::string(to_string(set_))},
            {"linguistic_version", std::string(kLinguisticVersion)},
            {"triggers", config_.triggers},
            {"scaler_mean", scaler_.mean},
            {"scaler_scale", scaler_.scale}};
  if (uses_sparse(set_)) j["tfidf"] = tfidf_.to_json();
  return j;
}

FeatureExtractor FeatureExtractor::from_json(const json& j) {
  if (j.value("linguistic_version", std::string()) != kLinguisticVersion) {
    throw Error(ErrorKind::kData, "feature extractor was saved with slot layout " +
                                      j.value("linguistic_version", std::string("?")) +
                                      ", expected " + std::string(kLinguisticVersion));
  }
  FeatureExtractor fx;
  fx.set_ = feature_set_from_string(j.at("feature_set").get<std::string>());
  fx.config_.triggers = j.at("triggers").get<std::vector<std::string>>();
  fx.scaler_.mean = j.at("scaler_mean").get<std::vector<double>>();
  fx.scaler_.scale = j.at("scaler_scale").get<std::vector<double>>();
  if (j.contains("tfidf")) fx.tfidf_ = TfidfModel::from_json(j.at("tfidf"));
  return fx;
}

void export_triplets(const std::filesystem::path& dir, const std::string& stem,
                     const FeatureMatrix& matrix) {
  std::string triplets = "row\tcolumn\tvalue\n";
  for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
    const auto& row = matrix.rows[r];
    for (std::size_t c = 0; c < row.dense.size(); ++c) {
      if (row.dense[c] != 0.0) triplets += fmt::format("{}\t{}\t{:.17g}\n", r, c, row.dense[c]);
    }
    for (const auto& [c, v] : row.sparse) {
      triplets += fmt::format("{}\t{}\t{:.17g}\n", r, matrix.dense_dim + c, v);
    }
  }
  fs::write_file_atomic(dir / (stem + ".triplets.tsv"), triplets);
  std::string names = "column\tname\n";
  for (std::size_t c = 0; c < matrix.names.size(); ++c) names += fmt::format("{}\t{}\n", c, matrix.names[c]);
  fs::write_file_atomic(dir / (stem + ".names.tsv"), names);
}

}  // namespace defexam::features
