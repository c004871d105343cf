// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "defexam/corpus/types.hpp"
#include "defexam/ingest/portal.hpp"
#include "defexam/oa/extraction.hpp"
#include "defexam/oa/matching.hpp"

namespace defexam::dataset {

struct SplitCounts {
  std::size_t claims = 0;
  std::size_t definite = 0;
  std::size_t indefinite = 0;
  std::size_t applications = 0;
};

struct DatasetManifest {
  std::vector<corpus::LabeledClaim> rows;  // sorted by (application_id, claim number)
  std::uint64_t seed = 0;
  nlohmann::json creation_config = nlohmann::json::object();

  std::map<corpus::Split, SplitCounts> split_counts() const;
};

/// Concatenated finalize_labels output over the applications that have an
/// extraction record, sorted by (application_id, claim number). Applications
/// missing from `records` contribute nothing.
std::vector<corpus::LabeledClaim> collect_indefinite_claims(
    const std::vector<ingest::DocumentBundle>& bundles,
    const std::map<std::string, oa::RawRejectionRecord>& records,
    const oa::MatchOptions& match = {}, std::vector<std::string>* warnings = nullptr);

/// Applications whose first office action text does not contain "112(b)",
/// minus any application in `exclude` (e.g. ones that produced indefinite
/// claims anyway). Sorted by application id.
std::vector<corpus::PatentApplication> select_clean_applications(
    const std::vector<ingest::DocumentBundle>& bundles, const std::vector<std::string>& exclude = {});

/// Indefinite claims per application among `indefinite` rows.
double average_claims_per_application(const std::vector<corpus::LabeledClaim>& indefinite);

/// Definite rows drawn application by application in seeded random order.
/// Each application contributes floor(avg_per_app) claims while the running
/// claims-per-application ratio is at least avg_per_app (including before the
/// first draw) and ceil(avg_per_app) otherwise; the last application is
/// truncated so the total equals target_count. Throws a data error when the
/// clean applications cannot supply target_count claims.
std::vector<corpus::LabeledClaim> sample_definite_claims(
    const std::vector<corpus::PatentApplication>& clean_applications, std::size_t target_count,
    double avg_per_app, std::uint64_t seed);

/// Assigns whole applications to train/test/validation. Application ids are
/// sorted, shuffled with `seed`, then each goes to the split whose share is
/// furthest below its target fraction (ties to train, then test).
DatasetManifest split_dataset(std::vector<corpus::LabeledClaim> rows,
                              const std::array<double, 3>& fractions, std::uint64_t seed);

/// Invariant violations of a manifest (empty when sound): an application in
/// two splits, label imbalance above `balance_tolerance`, definite rows with
/// reasons, indefinite rows without reasons.
std::vector<std::string> check_manifest(const DatasetManifest& manifest, double balance_tolerance);

/// Header record followed by one record per row.
void save_manifest(const std::filesystem::path& path, const DatasetManifest& manifest);
DatasetManifest load_manifest(const std::filesystem::path& path);

}  // namespace defexam::dataset
