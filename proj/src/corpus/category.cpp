// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#include "defexam/corpus/category.hpp"

#include <map>

#include "defexam/common/assets.hpp"
#include "defexam/common/text.hpp"

namespace defexam::corpus {
namespace {

struct CategoryInfo {
  std::string display_name;
  std::string description;
};

// Parsed once from categories_v1.tsv: id, display name, description.
const std::map<std::string, CategoryInfo, std::less<>>& category_table() {
  static const auto table = [] {
    std::map<std::string, CategoryInfo, std::less<>> out;
    for (const auto& line : assets::lines(assets::require("categories_v1.tsv"))) {
      auto fields = text::split(line, '\t');
      if (fields.size() != 3) continue;
      auto key = fields[0];
      if (!key.empty() && key.back() == '*') key.pop_back();
      out[key] = CategoryInfo{fields[1], fields[2]};
    }
    return out;
  }();
  return table;
}

}  // namespace

std::string_view id(Category c) {
  switch (c) {
    case Category::kAntecedentBasis: return "antecedent_basis";
    case Category::kUndefinedTerm: return "undefined_term";
    case Category::kRelativeTerm: return "relative_term";
    case Category::kExemplaryPhrasing: return "exemplary_phrasing";
    case Category::kFunctionalClaiming: return "functional_claiming";
    case Category::kContradictingLimitations: return "contradicting_limitations";
    case Category::kOmissionOfEssentialElements: return "omission_of_essential_elements";
    case Category::kDependence: return "dependence";
    case Category::kOther: return "other";
  }
  return "other";
}

std::string_view display_name(Category c) {
  const auto& table = category_table();
  auto it = table.find(id(c));
  return it == table.end() ? id(c) : std::string_view(it->second.display_name);
}

std::string_view description(Category c) {
  const auto& table = category_table();
  auto it = table.find(id(c));
  return it == table.end() ? std::string_view() : std::string_view(it->second.description);
}

std::optional<Category> from_id(std::string_view identifier) {
  for (auto c : kAllCategories) {
    if (id(c) == identifier) return c;
  }
  return std::nullopt;
}

}  // namespace defexam::corpus
