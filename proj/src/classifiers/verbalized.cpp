// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#include "defexam/classifiers/verbalized.hpp"

#include <limits>

#include <spdlog/spdlog.h>

#include "defexam/common/assets.hpp"
#include "defexam/common/error.hpp"
#include "defexam/common/text.hpp"

namespace defexam::classifiers {

namespace {

std::string normalize_phrase(std::string_view s) {
  auto out = text::to_lower_ascii(text::collapse_whitespace(s));
  while (!out.empty() && (out.back() == '.' || out.back() == '"' || out.back() == '\'')) out.pop_back();
  while (!out.empty() && (out.front() == '"' || out.front() == '\'')) out.erase(out.begin());
  return out;
}

}  // namespace

LikelihoodLexicon::LikelihoodLexicon(std::vector<ConfidenceExpression> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) throw Error(ErrorKind::kConfig, "likelihood lexicon is empty");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto p = entries_[i].probability;
    if (!(p > 0.0 && p < 1.0)) {
      throw Error(ErrorKind::kConfig, "likelihood \"" + entries_[i].phrase + "\" maps outside (0, 1)");
    }
    if (i > 0 && !(entries_[i - 1].probability < p)) {
      throw Error(ErrorKind::kConfig, "likelihood lexicon is not strictly increasing at \"" +
                                          entries_[i].phrase + "\"");
    }
  }
}

LikelihoodLexicon LikelihoodLexicon::parse(std::string_view tsv) {
  std::vector<ConfidenceExpression> entries;
  for (const auto& line : assets::lines(tsv)) {
    const auto fields = text::split(line, '\t');
    if (fields.size() != 2) throw Error(ErrorKind::kConfig, "bad likelihood lexicon line: " + line);
    try {
      entries.push_back({normalize_phrase(fields[0]), std::stod(fields[1])});
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::kConfig, "bad probability in likelihood lexicon line: " + line);
    }
  }
  return LikelihoodLexicon(std::move(entries));
}

const LikelihoodLexicon& LikelihoodLexicon::defaults() {
  static const auto lexicon = parse(assets::require("lexicons/probability_lexicon_v1.tsv"));
  return lexicon;
}

ConfidenceExpression LikelihoodLexicon::resolve(std::string_view phrase,
                                                std::vector<std::string>* warnings) const {
  const auto key = normalize_phrase(phrase);
  for (const auto& e : entries_) {
    if (e.phrase == key) return e;
  }
  const ConfidenceExpression* best = nullptr;
  auto best_distance = std::numeric_limits<std::size_t>::max();
  for (const auto& e : entries_) {
    const auto d = text::edit_distance(key, e.phrase);
    if (d < best_distance) {
      best_distance = d;
      best = &e;
    }
  }
  const auto message = "unknown likelihood \"" + std::string(phrase) + "\" read as \"" +
                       best->phrase + "\"";
  spdlog::warn("{}", message);
  if (warnings) warnings->push_back(message);
  return *best;
}

double map_verbalized_probability(std::string_view phrase, std::vector<std::string>* warnings) {
  return LikelihoodLexicon::defaults().resolve(phrase, warnings).probability;
}

double ensemble_average(double p_agent, double p_logreg) {
  for (double p : {p_agent, p_logreg}) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorKind::kInvalidArgument, "probability outside [0, 1]: " + std::to_string(p));
    }
  }
  return 0.5 * (p_agent + p_logreg);
}

}  // namespace defexam::classifiers
