// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "defexam/classifiers/agent.hpp"
#include "defexam/classifiers/logistic.hpp"
#include "defexam/evaluation/judge.hpp"
#include "defexam/features/matrix.hpp"
#include "defexam/ingest/portal.hpp"
#include "defexam/llm/gateway.hpp"
#include "defexam/oa/extraction.hpp"
#include "defexam/oa/matching.hpp"

namespace defexam::pipeline {

struct PortalSettings {
  ingest::PortalConfig client;
  std::string cpc_prefix = "G06F";
  bool require_rejection = true;
  // When set, the seed search is skipped and exactly these applications are
  // fetched.
  std::vector<std::string> application_ids;
  std::filesystem::path cache_dir = "cache/portal";
};

struct LlmSettings {
  llm::GatewayConfig gateway;
  int timeout_seconds = 120;
  std::filesystem::path cache_dir = "cache/llm";
};

struct DatasetSettings {
  std::array<double, 3> fractions = {0.6, 0.3, 0.1};  // train, test, validation
};

struct FeatureSettings {
  std::vector<features::FeatureSet> sets = {features::FeatureSet::kLinguistic,
                                            features::FeatureSet::kTfidf,
                                            features::FeatureSet::kAll};
  std::size_t max_features = 20000;
  features::LinguisticConfig linguistic = features::LinguisticConfig::defaults();
};

/// Everything a run needs. Relative paths resolve against the run directory.
struct PipelineConfig {
  std::uint64_t seed = 42;
  PortalSettings portal;
  LlmSettings llm;
  oa::ExtractionOptions extraction;
  oa::MatchOptions matching;
  DatasetSettings dataset;
  FeatureSettings features;
  classifiers::LogisticConfig logistic;
  classifiers::AgentConfig agent;
  evaluation::JudgeConfig judge;
  int judge_workers = 4;
  std::size_t audit_sample_size = 50;

  /// Parses a config document. Unknown keys and invalid values are config
  /// errors.
  static PipelineConfig from_json(const nlohmann::json& j);
  static PipelineConfig load(const std::filesystem::path& path);
  nlohmann::json to_json() const;

  /// Throws a config error when fractions do not sum to 1, the judge
  /// threshold is outside [0, 100], or a numeric setting is out of range.
  void validate() const;

  /// Applies `role=model` overrides to the model table.
  void apply_model_roles(const std::vector<std::string>& assignments);
};

/// Stable per-purpose seed derived from the run seed.
std::uint64_t derive_seed(std::uint64_t seed, const std::string& purpose);

}  // namespace defexam::pipeline
