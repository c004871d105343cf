// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "defexam/dataset/builder.hpp"

namespace defexam::dataset {

/// Column order of split-wise tables.
inline constexpr std::array<const char*, 4> kSplitColumns = {"all", "train", "test", "validation"};

/// One row of the split-wise dataset table. In a section's "Total" row the
/// percentages are relative to the "all" column; in other rows they are
/// relative to the section total of the same column.
struct SplitRow {
  std::string section;  // claims, applications, reasons
  std::string row;
  std::array<std::size_t, 4> counts{};
  std::array<double, 4> percents{};
};

/// Mean claim characteristics for one label x independence cell. Means are
/// absent when the cell holds no claims.
struct CharacteristicCell {
  bool indefinite = false;
  std::string independence;  // all, independent, dependent
  std::size_t count = 0;
  double percent_samples = 0.0;
  std::optional<double> parents;
  std::optional<double> characters;
  std::optional<double> words;
  std::optional<double> features;
};

struct YearCounts {
  int year = 0;
  std::size_t definite = 0;
  std::size_t indefinite = 0;
  double indefinite_fraction() const;
};

struct CorpusStatistics {
  std::vector<SplitRow> split_rows;
  std::vector<CharacteristicCell> characteristics;
  std::vector<YearCounts> years;  // ascending; rows without a filing date are skipped
  std::size_t rows_without_filing_date = 0;

  const SplitRow* find(const std::string& section, const std::string& row) const;
};

/// Throws a data error for an empty manifest.
CorpusStatistics compute_statistics(const DatasetManifest& manifest);

/// Writes dataset_splits.tsv, claim_characteristics.tsv and filing_years.tsv.
void write_statistics(const std::filesystem::path& dir, const CorpusStatistics& stats);

}  // namespace defexam::dataset
