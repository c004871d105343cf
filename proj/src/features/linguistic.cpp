// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#include "defexam/features/linguistic.hpp"

#include <algorithm>
#include <cctype>
#include <iterator>
#include <set>

#include "defexam/common/assets.hpp"
#include "defexam/common/text.hpp"
#include "defexam/common/utf8.hpp"
#include "defexam/corpus/claim_text.hpp"
#include "defexam/features/text_stats.hpp"

namespace defexam::features {

LinguisticConfig LinguisticConfig::defaults() {
  return {assets::lines(assets::require("lexicons/trigger_words_v1.txt"))};
}

std::vector<std::string> linguistic_feature_names(const LinguisticConfig& config) {
  std::vector<std::string> names(std::begin(kLinguisticSlots), std::end(kLinguisticSlots));
  for (const auto& t : config.triggers) names.push_back("trigger:" + t);
  return names;
}

bool contains_phrase(std::string_view text, std::string_view phrase) {
  if (phrase.empty()) return false;
  const auto hay = text::to_lower_ascii(text);
  const auto needle = text::to_lower_ascii(phrase);
  auto alnum = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; };
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) {
    const bool left_ok = pos == 0 || !alnum(hay[pos - 1]) || !alnum(needle.front());
    const auto end = pos + needle.size();
    const bool right_ok = end == hay.size() || !alnum(hay[end]) || !alnum(needle.back());
    if (left_ok && right_ok) return true;
  }
  return false;
}

DescriptionProfile DescriptionProfile::of(const std::vector<std::string>& paragraphs) {
  DescriptionProfile p;
  std::set<std::string> words;
  for (const auto& para : paragraphs) {
    p.characters += utf8::length(para);
    for (auto& t : tokenize(para)) words.insert(std::move(t));
  }
  p.word_set.assign(words.begin(), words.end());
  return p;
}

std::vector<double> linguistic_features(const corpus::Claim& claim,
                                        const DescriptionProfile& description,
                                        const LinguisticConfig& config) {
  const auto tokens = tokenize(claim.text);
  const std::set<std::string> claim_words(tokens.begin(), tokens.end());
  std::set<std::string> stems;
  std::size_t stopwords = 0;
  for (const auto& t : tokens) {
    stems.insert(porter_stem(t));
    if (is_stopword(t)) ++stopwords;
  }

  std::size_t intersection = 0;
  for (const auto& w : claim_words) {
    if (std::binary_search(description.word_set.begin(), description.word_set.end(), w)) {
      ++intersection;
    }
  }
  const std::size_t uni = claim_words.size() + description.word_set.size() - intersection;

  const double chars = static_cast<double>(utf8::length(claim.text));
  const double n_tokens = static_cast<double>(tokens.size());
  const auto r = readability(claim.text);

  std::vector<double> out = {
      chars,
      n_tokens,
      chars / static_cast<double>(std::max<std::size_t>(1, description.characters)),
      uni == 0 ? 0.0 : static_cast<double>(intersection) / static_cast<double>(uni),
      static_cast<double>(stems.size()),
      tokens.empty() ? 0.0 : static_cast<double>(claim_words.size()) / n_tokens,
      static_cast<double>(stopwords),
      r.flesch_reading_ease,
      r.flesch_kincaid_grade,
      r.gunning_fog,
      r.automated_readability_index,
      r.dale_chall,
      corpus::is_independent(claim) ? 1.0 : 0.0,
  };
  for (const auto& trigger : config.triggers) {
    out.push_back(contains_phrase(claim.text, trigger) ? 1.0 : 0.0);
  }
  return out;
}

std::vector<double> linguistic_features(const corpus::Claim& claim,
                                        const std::vector<std::string>& description_paragraphs,
                                        const LinguisticConfig& config) {
  return linguistic_features(claim, DescriptionProfile::of(description_paragraphs), config);
}

}  // namespace defexam::features
