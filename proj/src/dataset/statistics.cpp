// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#include "defexam/dataset/statistics.hpp"

#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "defexam/common/error.hpp"
#include "defexam/common/fs.hpp"
#include "defexam/common/utf8.hpp"
#include "defexam/corpus/claim_text.hpp"

namespace defexam::dataset {

using corpus::LabeledClaim;

namespace {

std::size_t column_of(corpus::Split s) {
  switch (s) {
    case corpus::Split::kTrain: return 1;
    case corpus::Split::kTest: return 2;
    case corpus::Split::kValidation: return 3;
  }
  return 1;
}

double percent(std::size_t part, std::size_t whole) {
  return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

std::size_t word_count(const std::string& text) {
  std::istringstream in(text);
  std::size_t n = 0;
  for (std::string w; in >> w;) ++n;
  return n;
}

// Fills percentages for a section: the first row is its total.
void finish_section(std::vector<SplitRow>& rows, std::size_t first) {
  const auto& total = rows[first].counts;
  for (std::size_t c = 0; c < 4; ++c) rows[first].percents[c] = percent(total[c], total[0]);
  for (std::size_t r = first + 1; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < 4; ++c) rows[r].percents[c] = percent(rows[r].counts[c], total[c]);
  }
}

std::string format_mean(const std::optional<double>& v) {
  return v ? fmt::format("{:.1f}", *v) : std::string("-");
}

}  // namespace

double YearCounts::indefinite_fraction() const {
  const auto total = definite + indefinite;
  return total == 0 ? 0.0 : static_cast<double>(indefinite) / static_cast<double>(total);
}

const SplitRow* CorpusStatistics::find(const std::string& section, const std::string& row) const {
  for (const auto& r : split_rows) {
    if (r.section == section && r.row == row) return &r;
  }
  return nullptr;
}

CorpusStatistics compute_statistics(const DatasetManifest& manifest) {
  if (manifest.rows.empty()) throw Error(ErrorKind::kData, "cannot describe an empty manifest");
  CorpusStatistics stats;
  auto& rows = stats.split_rows;

  auto add = [&](std::string section, std::string row) -> SplitRow& {
    rows.push_back({std::move(section), std::move(row), {}, {}});
    return rows.back();
  };
  auto bump = [](SplitRow& r, std::size_t column, std::size_t by = 1) {
    r.counts[0] += by;
    r.counts[column] += by;
  };

  const std::size_t claims_first = rows.size();
  add("claims", "total");
  add("claims", "definite");
  add("claims", "indefinite");
  add("claims", "independent");
  add("claims", "dependent");
  for (const auto& row : manifest.rows) {
    const auto col = column_of(row.split);
    bump(rows[claims_first], col);
    bump(rows[claims_first + (row.label ? 2 : 1)], col);
    bump(rows[claims_first + (corpus::is_independent(row.claim) ? 3 : 4)], col);
  }
  finish_section(rows, claims_first);

  const std::size_t apps_first = rows.size();
  add("applications", "total");
  add("applications", "definite");
  add("applications", "indefinite");
  std::map<std::string, std::pair<corpus::Split, bool>> apps;
  for (const auto& row : manifest.rows) {
    auto& entry = apps.try_emplace(row.application_id(), row.split, false).first->second;
    entry.second = entry.second || row.label;
  }
  for (const auto& [id, entry] : apps) {
    const auto col = column_of(entry.first);
    bump(rows[apps_first], col);
    bump(rows[apps_first + (entry.second ? 2 : 1)], col);
  }
  finish_section(rows, apps_first);

  const std::size_t reasons_first = rows.size();
  add("reasons", "total");
  for (auto c : corpus::kFinalCategories) add("reasons", std::string(corpus::id(c)));
  for (const auto& row : manifest.rows) {
    const auto col = column_of(row.split);
    for (const auto& reason : row.reasons) {
      const auto idx = corpus::final_index(reason.category);
      if (!idx) continue;
      bump(rows[reasons_first], col);
      bump(rows[reasons_first + 1 + *idx], col);
    }
  }
  finish_section(rows, reasons_first);

  struct Accumulator {
    std::size_t n = 0;
    double parents = 0, characters = 0, words = 0, features = 0;
  };
  std::map<std::pair<bool, std::string>, Accumulator> acc;
  for (const auto& row : manifest.rows) {
    const auto independence = corpus::is_independent(row.claim) ? "independent" : "dependent";
    for (const auto* key : {"all", independence}) {
      auto& a = acc[{row.label, key}];
      ++a.n;
      a.parents += static_cast<double>(row.claim.parent_numbers.size());
      a.characters += static_cast<double>(utf8::length(row.claim.text));
      a.words += static_cast<double>(word_count(row.claim.text));
      a.features += static_cast<double>(corpus::feature_segment_count(row.claim.text));
    }
  }
  for (bool label : {false, true}) {
    for (const char* key : {"all", "independent", "dependent"}) {
      CharacteristicCell cell;
      cell.indefinite = label;
      cell.independence = key;
      const auto it = acc.find({label, key});
      if (it != acc.end() && it->second.n > 0) {
        const auto& a = it->second;
        const double n = static_cast<double>(a.n);
        cell.count = a.n;
        cell.parents = a.parents / n;
        cell.characters = a.characters / n;
        cell.words = a.words / n;
        cell.features = a.features / n;
      }
      cell.percent_samples = percent(cell.count, manifest.rows.size());
      stats.characteristics.push_back(cell);
    }
  }

  std::map<int, YearCounts> years;
  for (const auto& row : manifest.rows) {
    if (!row.filing_date) {
      ++stats.rows_without_filing_date;
      continue;
    }
    auto& y = years[row.filing_date->year];
    y.year = row.filing_date->year;
    ++(row.label ? y.indefinite : y.definite);
  }
  for (const auto& [year, counts] : years) stats.years.push_back(counts);
  return stats;
}

void write_statistics(const std::filesystem::path& dir, const CorpusStatistics& stats) {
  std::string splits = "section\trow";
  for (const auto* c : kSplitColumns) splits += fmt::format("\t{0}\t{0}_percent", c);
  splits += "\n";
  for (const auto& r : stats.split_rows) {
    splits += r.section + "\t" + r.row;
    for (std::size_t c = 0; c < 4; ++c) {
      splits += fmt::format("\t{}\t{:.2f}", r.counts[c], r.percents[c]);
    }
    splits += "\n";
  }
  fs::write_file_atomic(dir / "dataset_splits.tsv", splits);

  std::string chars = "label\tindependence\tcount\tpercent_samples\tparents\tcharacters\twords\tfeatures\n";
  for (const auto& c : stats.characteristics) {
    chars += fmt::format("{}\t{}\t{}\t{:.1f}\t{}\t{}\t{}\t{}\n",
                         c.indefinite ? "indefinite" : "definite", c.independence, c.count,
                         c.percent_samples, format_mean(c.parents), format_mean(c.characters),
                         format_mean(c.words), format_mean(c.features));
  }
  fs::write_file_atomic(dir / "claim_characteristics.tsv", chars);

  std::string years = "year\tdefinite\tindefinite\tindefinite_fraction\n";
  for (const auto& y : stats.years) {
    years += fmt::format("{}\t{}\t{}\t{:.4f}\n", y.year, y.definite, y.indefinite,
                         y.indefinite_fraction());
  }
  fs::write_file_atomic(dir / "filing_years.tsv", years);
}

}  // namespace defexam::dataset
