// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#include "defexam/features/tfidf.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "defexam/common/error.hpp"
#include "defexam/features/text_stats.hpp"

namespace defexam::features {

using nlohmann::json;

TrainSplit TrainSplit::from_rows(const std::vector<corpus::LabeledClaim>& rows) {
  TrainSplit split;
  for (const auto& row : rows) {
    if (row.split == corpus::Split::kTrain) split.texts_.push_back(row.claim.text);
  }
  return split;
}

TfidfModel TfidfModel::fit(const TrainSplit& train, std::size_t max_features) {
  return fit_documents(train.texts(), max_features);
}

TfidfModel TfidfModel::fit_documents(const std::vector<std::string>& documents,
                                     std::size_t max_features) {
  if (documents.empty()) throw Error(ErrorKind::kInvalidArgument, "tf-idf needs at least one text");
  if (max_features == 0) throw Error(ErrorKind::kInvalidArgument, "max_features must be positive");
  std::unordered_map<std::string, std::size_t> frequency, df;
  for (const auto& doc : documents) {
    const auto tokens = tokenize(doc);
    for (const auto& t : tokens) ++frequency[t];
    for (const auto& t : std::set<std::string>(tokens.begin(), tokens.end())) ++df[t];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(frequency.begin(), frequency.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (ranked.size() > max_features) ranked.resize(max_features);
  // Index order is lexicographic so that exported feature names are stable.
  std::sort(ranked.begin(), ranked.end());

  TfidfModel model;
  model.fitted_ = true;
  model.corpus_size_ = documents.size();
  model.max_features_ = max_features;
  for (const auto& [token, count] : ranked) {
    const auto index = static_cast<std::uint32_t>(model.tokens_.size());
    model.vocabulary_.emplace(token, index);
    model.tokens_.push_back(token);
    model.document_frequency_.push_back(df.at(token));
  }
  return model;
}

std::optional<std::uint32_t> TfidfModel::index_of(const std::string& token) const {
  const auto it = vocabulary_.find(token);
  if (it == vocabulary_.end()) return std::nullopt;
  return it->second;
}

double TfidfModel::idf(std::uint32_t index) const {
  return std::log((1.0 + static_cast<double>(corpus_size_)) /
                  (1.0 + static_cast<double>(document_frequency_.at(index)))) +
         1.0;
}

SparseVector TfidfModel::vectorize(std::string_view text) const {
  if (!fitted_) throw Error(ErrorKind::kInvalidArgument, "tf-idf model is not fitted");
  std::map<std::uint32_t, double> counts;
  for (const auto& t : tokenize(text)) {
    if (const auto idx = index_of(t)) counts[*idx] += 1.0;
  }
  SparseVector out;
  double norm = 0.0;
  for (const auto& [idx, tf] : counts) {
    const double v = tf * idf(idx);
    out.emplace_back(idx, v);
    norm += v * v;
  }
  if (norm > 0.0) {
    norm = std::sqrt(norm);
    for (auto& [idx, v] : out) v /= norm;
  }
  return out;
}

json TfidfModel::to_json() const {
  return {{"corpus_size", corpus_size_},
          {"max_features", max_features_},
          {"tokens", tokens_},
          {"document_frequency", document_frequency_}};
}

TfidfModel TfidfModel::from_json(const json& j) {
  TfidfModel model;
  model.fitted_ = true;
  model.corpus_size_ = j.at("corpus_size").get<std::size_t>();
  model.max_features_ = j.at("max_features").get<std::size_t>();
  model.tokens_ = j.at("tokens").get<std::vector<std::string>>();
  model.document_frequency_ = j.at("document_frequency").get<std::vector<std::size_t>>();
  if (model.tokens_.size() != model.document_frequency_.size()) {
    throw Error(ErrorKind::kData, "tf-idf model: token and frequency lists differ in length");
  }
  for (std::size_t i = 0; i < model.tokens_.size(); ++i) {
    model.vocabulary_.emplace(model.tokens_[i], static_cast<std::uint32_t>(i));
  }
  return model;
}

double dot(const SparseVector& a, const SparseVector& b) {
  double sum = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first == b[j].first) {
      sum += a[i++].second * b[j++].second;
    } else if (a[i].first < b[j].first) {
      ++i;
    } else {
      ++j;
    }
  }
  return sum;
}

}  // namespace defexam::features
