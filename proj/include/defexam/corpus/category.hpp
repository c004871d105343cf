// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace defexam::corpus {

/// Indefiniteness categories. `kDependence` and `kOther` are parse-only: the
/// extraction step may emit them, but they never reach a dataset row.
enum class Category {
  kAntecedentBasis,
  kUndefinedTerm,
  kRelativeTerm,
  kExemplaryPhrasing,
  kFunctionalClaiming,
  kContradictingLimitations,
  kOmissionOfEssentialElements,
  kDependence,
  kOther,
};

inline constexpr std::size_t kNumCategories = 9;
inline constexpr std::size_t kNumFinalCategories = 7;

inline constexpr std::array<Category, kNumCategories> kAllCategories = {
    Category::kAntecedentBasis,    Category::kUndefinedTerm,
    Category::kRelativeTerm,       Category::kExemplaryPhrasing,
    Category::kFunctionalClaiming, Category::kContradictingLimitations,
    Category::kOmissionOfEssentialElements, Category::kDependence,
    Category::kOther,
};

/// Categories that may appear in final dataset rows, in canonical order.
inline constexpr std::array<Category, kNumFinalCategories> kFinalCategories = {
    Category::kAntecedentBasis,    Category::kUndefinedTerm,
    Category::kRelativeTerm,       Category::kExemplaryPhrasing,
    Category::kFunctionalClaiming, Category::kContradictingLimitations,
    Category::kOmissionOfEssentialElements,
};

constexpr bool is_parse_only(Category c) {
  return c == Category::kDependence || c == Category::kOther;
}

/// Position within kFinalCategories; nullopt for parse-only categories.
constexpr std::optional<std::size_t> final_index(Category c) {
  if (is_parse_only(c)) return std::nullopt;
  return static_cast<std::size_t>(c);
}

/// Canonical identifier, e.g. "antecedent_basis".
std::string_view id(Category c);

/// Human-readable table name, e.g. "Antecedent Basis".
std::string_view display_name(Category c);

/// Description shown to models during extraction and examination.
std::string_view description(Category c);

/// Exact lookup by canonical identifier.
std::optional<Category> from_id(std::string_view identifier);

}  // namespace defexam::corpus
