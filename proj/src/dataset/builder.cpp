// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#include "defexam/dataset/builder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <spdlog/spdlog.h>

#include "defexam/common/error.hpp"
#include "defexam/common/fs.hpp"
#include "defexam/common/random.hpp"
#include "defexam/corpus/serialization.hpp"
#include "defexam/oa/labels.hpp"

namespace defexam::dataset {

using corpus::LabeledClaim;
using corpus::Split;
using nlohmann::json;

namespace {

bool row_order(const LabeledClaim& a, const LabeledClaim& b) {
  if (a.application_id() != b.application_id()) return a.application_id() < b.application_id();
  return a.claim.number < b.claim.number;
}

}  // namespace

std::map<Split, SplitCounts> DatasetManifest::split_counts() const {
  std::map<Split, SplitCounts> counts;
  std::map<Split, std::set<std::string>> apps;
  for (auto s : corpus::kAllSplits) counts[s];
  for (const auto& row : rows) {
    auto& c = counts[row.split];
    ++c.claims;
    ++(row.label ? c.indefinite : c.definite);
    apps[row.split].insert(row.application_id());
  }
  for (auto& [split, c] : counts) c.applications = apps[split].size();
  return counts;
}

std::vector<LabeledClaim> collect_indefinite_claims(
    const std::vector<ingest::DocumentBundle>& bundles,
    const std::map<std::string, oa::RawRejectionRecord>& records, const oa::MatchOptions& match,
    std::vector<std::string>* warnings) {
  std::vector<LabeledClaim> out;
  for (const auto& bundle : bundles) {
    const auto it = records.find(bundle.application.application_id);
    if (it == records.end()) continue;
    auto labels = oa::finalize_labels(it->second, bundle.application, match);
    if (warnings) warnings->insert(warnings->end(), labels.warnings.begin(), labels.warnings.end());
    for (auto& row : labels.claims) out.push_back(std::move(row));
  }
  std::sort(out.begin(), out.end(), row_order);
  return out;
}

std::vector<corpus::PatentApplication> select_clean_applications(
    const std::vector<ingest::DocumentBundle>& bundles, const std::vector<std::string>& exclude) {
  const std::set<std::string> excluded(exclude.begin(), exclude.end());
  std::vector<corpus::PatentApplication> out;
  for (const auto& bundle : bundles) {
    if (bundle.first_office_action.full_text.find("112(b)") != std::string::npos) continue;
    if (excluded.count(bundle.application.application_id)) continue;
    out.push_back(bundle.application);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.application_id < b.application_id; });
  return out;
}

double average_claims_per_application(const std::vector<LabeledClaim>& indefinite) {
  std::set<std::string> apps;
  for (const auto& row : indefinite) apps.insert(row.application_id());
  if (apps.empty()) return 0.0;
  return static_cast<double>(indefinite.size()) / static_cast<double>(apps.size());
}

std::vector<LabeledClaim> sample_definite_claims(
    const std::vector<corpus::PatentApplication>& clean_applications, std::size_t target_count,
    double avg_per_app, std::uint64_t seed) {
  if (target_count == 0) return {};
  if (!(avg_per_app > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "avg_per_app must be positive");
  }
  std::size_t available = 0;
  for (const auto& app : clean_applications) available += app.claims.size();
  if (available < target_count) {
    throw Error(ErrorKind::kData, "clean applications hold " + std::to_string(available) +
                                      " claims, short of the " + std::to_string(target_count) +
                                      " definite claims needed (shortfall " +
                                      std::to_string(target_count - available) + ")");
  }

  std::vector<const corpus::PatentApplication*> order;
  for (const auto& app : clean_applications) order.push_back(&app);
  std::sort(order.begin(), order.end(),
            [](const auto* a, const auto* b) { return a->application_id < b->application_id; });
  Rng rng(seed);
  rng.shuffle(order);

  const auto down = static_cast<std::size_t>(std::floor(avg_per_app));
  const auto up = static_cast<std::size_t>(std::ceil(avg_per_app));
  std::vector<LabeledClaim> out;
  std::size_t used_apps = 0;
  for (const auto* app : order) {
    if (out.size() >= target_count) break;
    if (app->claims.empty()) continue;
    const bool at_or_above =
        used_apps == 0 ||
        static_cast<double>(out.size()) >= avg_per_app * static_cast<double>(used_apps);
    std::size_t draw = at_or_above ? down : up;
    draw = std::max<std::size_t>(draw, 1);
    draw = std::min({draw, app->claims.size(), target_count - out.size()});

    std::vector<std::size_t> idx(app->claims.size());
    std::iota(idx.begin(), idx.end(), 0);
    // Partial Fisher-Yates: the first `draw` slots are a uniform sample.
    for (std::size_t i = 0; i < draw; ++i) {
      std::swap(idx[i], idx[i + rng.below(idx.size() - i)]);
    }
    for (std::size_t i = 0; i < draw; ++i) {
      LabeledClaim row;
      row.claim = app->claims[idx[i]];
      row.claim.application_id = app->application_id;
      row.label = false;
      row.filing_date = app->filing_date;
      out.push_back(std::move(row));
    }
    ++used_apps;
  }
  if (out.size() < target_count) {
    throw Error(ErrorKind::kData, "sampling stopped at " + std::to_string(out.size()) + " of " +
                                      std::to_string(target_count) + " definite claims");
  }
  std::sort(out.begin(), out.end(), row_order);
  return out;
}

DatasetManifest split_dataset(std::vector<LabeledClaim> rows, const std::array<double, 3>& fractions,
                              std::uint64_t seed) {
  const double sum = fractions[0] + fractions[1] + fractions[2];
  if (std::abs(sum - 1.0) > 1e-9 || *std::min_element(fractions.begin(), fractions.end()) < 0) {
    throw Error(ErrorKind::kInvalidArgument, "split fractions must be non-negative and sum to 1");
  }
  std::set<std::string> unique;
  for (const auto& row : rows) unique.insert(row.application_id());
  if (unique.size() < 3) {
    throw Error(ErrorKind::kData, "splitting needs at least 3 applications, got " +
                                      std::to_string(unique.size()));
  }
  std::vector<std::string> apps(unique.begin(), unique.end());
  Rng rng(seed);
  rng.shuffle(apps);

  std::map<std::string, Split> assignment;
  std::array<std::size_t, 3> counts{};
  for (std::size_t k = 0; k < apps.size(); ++k) {
    std::size_t best = 0;
    double best_deficit = -1e300;
    for (std::size_t s = 0; s < 3; ++s) {
      const double deficit = fractions[s] * static_cast<double>(k + 1) - static_cast<double>(counts[s]);
      if (deficit > best_deficit + 1e-9) {
        best_deficit = deficit;
        best = s;
      }
    }
    ++counts[best];
    assignment[apps[k]] = corpus::kAllSplits[best];
  }

  for (auto& row : rows) row.split = assignment.at(row.application_id());
  std::sort(rows.begin(), rows.end(), row_order);
  DatasetManifest manifest;
  manifest.rows = std::move(rows);
  manifest.seed = seed;
  manifest.creation_config = {{"fractions", fractions}};
  return manifest;
}

std::vector<std::string> check_manifest(const DatasetManifest& manifest, double balance_tolerance) {
  std::vector<std::string> problems;
  std::map<std::string, Split> seen;
  std::size_t definite = 0, indefinite = 0;
  for (const auto& row : manifest.rows) {
    auto [it, inserted] = seen.emplace(row.application_id(), row.split);
    if (!inserted && it->second != row.split) {
      problems.push_back("application " + row.application_id() + " appears in two splits");
      it->second = row.split;
    }
    ++(row.label ? indefinite : definite);
    if (!row.label && !row.reasons.empty()) {
      problems.push_back("definite claim " + row.application_id() + "/" +
                         std::to_string(row.claim.number) + " carries reasons");
    }
    if (row.label && row.reasons.empty()) {
      problems.push_back("indefinite claim " + row.application_id() + "/" +
                         std::to_string(row.claim.number) + " has no reasons");
    }
  }
  const double gap = std::abs(static_cast<double>(definite) - static_cast<double>(indefinite));
  if (gap > balance_tolerance) {
    problems.push_back("label imbalance " + std::to_string(definite) + " definite vs " +
                       std::to_string(indefinite) + " indefinite");
  }
  return problems;
}

void save_manifest(const std::filesystem::path& path, const DatasetManifest& manifest) {
  json counts = json::object();
  for (const auto& [split, c] : manifest.split_counts()) {
    counts[std::string(corpus::to_string(split))] = {{"claims", c.claims},
                                                     {"definite", c.definite},
                                                     {"indefinite", c.indefinite},
                                                     {"applications", c.applications}};
  }
  std::vector<json> records;
  records.push_back({{"manifest_header",
                      {{"seed", manifest.seed},
                       {"creation_config", manifest.creation_config},
                       {"split_counts", counts},
                       {"rows", manifest.rows.size()}}}});
  for (const auto& row : manifest.rows) records.emplace_back(row);
  fs::write_jsonl_atomic(path, records);
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  const auto records = fs::read_jsonl(path);
  if (records.empty() || !records.front().contains("manifest_header")) {
    throw Error(ErrorKind::kData, path.string() + " lacks a manifest header record");
  }
  const auto& header = records.front().at("manifest_header");
  DatasetManifest manifest;
  manifest.seed = header.at("seed").get<std::uint64_t>();
  manifest.creation_config = header.value("creation_config", json::object());
  for (std::size_t i = 1; i < records.size(); ++i) {
    manifest.rows.push_back(records[i].get<LabeledClaim>());
  }
  if (manifest.rows.size() != header.value("rows", manifest.rows.size())) {
    throw Error(ErrorKind::kData, path.string() + " is truncated: header announces " +
                                      header.at("rows").dump() + " rows");
  }
  return manifest;
}

}  // namespace defexam::dataset
