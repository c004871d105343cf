// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "defexam/corpus/types.hpp"
#include "defexam/pipeline/config.hpp"

// Pipeline stages. Each stage reads the artifacts of earlier stages from the
// run directory and writes its own; a missing input is a prerequisite error
// that names the stage to run first.
//
// Run directory layout:
//   config.json                     resolved config of the latest invocation
//   seed_applications.json          fetch
//   bundles.jsonl, skip_log.jsonl   fetch
//   extractions.jsonl               parse
//   manifest.jsonl                  build
//   applications.jsonl              build
//   build_log.json, stats/*.tsv     build
//   models/<set>.json               train
//   models/<set>.weights.tsv        train
//   features/<set>.train.*.tsv      train
//   predictions/<model>.<split>.jsonl       predict (scores)
//   predictions/agent.<split>.raw.jsonl     predict (agent answers and traces)
//   judge/agent.<split>.jsonl               judge (verdict log)
//   reports/*                               evaluate
//   audit/sample.jsonl, audit/sample.md     sample-audit

namespace defexam::pipeline {

class Run {
 public:
  /// Creates the run directory and resolves relative cache paths against it.
  /// Throws a config error when a directory cannot be created.
  Run(PipelineConfig config, std::filesystem::path run_dir);

  const PipelineConfig& config() const { return config_; }
  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path(const std::string& relative) const { return dir_ / relative; }

  /// Path of an artifact that an earlier stage must have produced.
  std::filesystem::path require(const std::string& relative, const std::string& stage) const;

 private:
  PipelineConfig config_;
  std::filesystem::path dir_;
};

struct FetchSummary {
  std::size_t seeds = 0;
  std::size_t bundles = 0;
  std::size_t skipped = 0;
};
FetchSummary run_fetch(const Run& run);

struct ParseSummary {
  std::size_t documents = 0;
  std::size_t with_112_sections = 0;
  std::size_t failed = 0;
  int llm_calls = 0;
};
/// Throws an extraction error (after persisting what was extracted) when
/// every document with a 112 section failed extraction.
ParseSummary run_parse(const Run& run);

struct BuildSummary {
  std::size_t indefinite = 0;
  std::size_t definite = 0;
  std::size_t applications = 0;
  std::vector<std::string> warnings;
};
BuildSummary run_build(const Run& run);

struct TrainSummary {
  std::vector<std::string> models;
  std::vector<std::string> warnings;
};
TrainSummary run_train(const Run& run);

/// Model names: "logreg-<feature set>", "agent", "ensemble" (agent averaged
/// with logreg-all), "random".
std::vector<std::string> default_models(const PipelineConfig& config);

struct PredictSummary {
  std::vector<std::string> written;  // relative artifact paths
  std::size_t failed_agent_predictions = 0;
};
/// Empty `models` selects default_models(); empty `splits` means test and
/// validation.
PredictSummary run_predict(const Run& run, const std::vector<std::string>& models,
                           const std::vector<corpus::Split>& splits);

struct JudgeSummary {
  std::size_t claims = 0;
  std::size_t pairs = 0;
  std::size_t failed_pairs = 0;
};
JudgeSummary run_judge_stage(const Run& run, corpus::Split split);

struct EvaluateSummary {
  std::vector<std::string> models;
};
EvaluateSummary run_evaluate(const Run& run);

struct AuditSummary {
  std::size_t rows = 0;
};
/// Seeded sample of manifest rows (optionally one split) with the 112
/// sections of their first office action.
AuditSummary run_sample_audit(const Run& run, std::optional<corpus::Split> split,
                              std::optional<std::size_t> count);

}  // namespace defexam::pipeline
