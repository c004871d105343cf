// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "defexam/classifiers/agent.hpp"
#include "defexam/corpus/types.hpp"
#include "defexam/llm/gateway.hpp"

namespace defexam::evaluation {

/// 100 * (s - 1) / 4.
double norm_grade(double s);

/// norm(sum i p_i / sum p_i). Throws a protocol error when all p_i are 0.
double similarity_from(const llm::GradeDistribution& distribution);

struct JudgeVerdict {
  std::string examiner_text;
  std::string model_text;
  llm::GradeDistribution distribution;
  double sim = 0.0;
  std::string analysis_text;
  bool failed = false;
  std::string error;
};

struct JudgeConfig {
  std::string model_role = "judge";
  int top_logprobs = 20;
  double threshold = 75.0;
  std::optional<int> analysis_max_tokens;
};

std::string render_judge_prompt(const std::string& examiner_reason, const std::string& model_reason);

/// Two turns: the analysis of similarities and differences, then a
/// single-token grade read from the top log-probabilities. A reply without
/// any grade token yields a failed verdict; gateway errors propagate.
JudgeVerdict judge_pair(const std::string& examiner_reason, const std::string& model_reason,
                        llm::Gateway& gateway, const JudgeConfig& config = {});

/// S[i][j]: examiner reason i against model reason j. Cells of failed
/// verdicts are empty and ignored.
struct SimilarityMatrix {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::vector<std::optional<double>>> s;

  static SimilarityMatrix full(const std::vector<std::vector<double>>& values, std::size_t m = 0);
};

/// Per-claim judge values in percent; absent when undefined.
struct ClaimJudgeResult {
  std::optional<double> p, r, f1;           // soft
  std::optional<double> p75, r75, f1_75;    // thresholded
  std::vector<double> model_maxima;         // per model reason: max_i S_ij (0 when n = 0)
  std::vector<double> examiner_maxima;      // per examiner reason: max_j S_ij (0 when m = 0)
  double threshold = 75.0;
};

/// Precision averages over model reasons, recall over examiner reasons. With
/// n = 0 precision is 0 and recall absent; with m = 0 recall is 0 and
/// precision absent; with n = m = 0 everything is absent.
ClaimJudgeResult judge_prf(const SimilarityMatrix& matrix, double threshold = 75.0);

struct Prf {
  std::optional<double> p, r, f1;
};

struct JudgeAggregate {
  Prf macro_soft, micro_soft, macro_75, micro_75;
  std::size_t claims = 0;          // claims contributing at least one value
  std::size_t failed_pairs = 0;
};

/// Macro: mean of per-claim values. Micro: mean over all per-reason maxima
/// (or indicators) pooled across claims. F1 comes from the aggregated P and R.
JudgeAggregate aggregate_judge(const std::vector<ClaimJudgeResult>& per_claim,
                               std::size_t failed_pairs = 0);

/// One judged pair, as persisted in the verdict log.
struct VerdictRecord {
  std::string application_id;
  int claim_number = 0;
  std::size_t examiner_index = 0;
  std::size_t model_index = 0;
  JudgeVerdict verdict;
};

void to_json(nlohmann::json& j, const VerdictRecord& r);
void from_json(const nlohmann::json& j, VerdictRecord& r);

/// Per-claim reason counts; claims with n = m = 0 are kept and contribute
/// nothing.
struct JudgedClaim {
  std::string application_id;
  int claim_number = 0;
  std::size_t n = 0;
  std::size_t m = 0;
};

void to_json(nlohmann::json& j, const JudgedClaim& c);
void from_json(const nlohmann::json& j, JudgedClaim& c);

struct JudgeRun {
  std::vector<JudgedClaim> claims;
  std::vector<VerdictRecord> verdicts;  // ordered by claim, then i, then j
};

/// Judges every examiner/model reason pair of each claim that has a
/// prediction. Rows are matched to predictions by (application id, claim).
JudgeRun run_judge(const std::vector<corpus::LabeledClaim>& rows,
                   const std::vector<classifiers::AgentPrediction>& predictions,
                   llm::Gateway& gateway, const JudgeConfig& config = {}, int max_workers = 4);

/// Rebuilds the per-claim results from persisted claims and verdicts.
std::vector<ClaimJudgeResult> replay_judge(const JudgeRun& run, double threshold = 75.0);

void save_judge_run(const std::filesystem::path& path, const JudgeRun& run);
JudgeRun load_judge_run(const std::filesystem::path& path);

}  // namespace defexam::evaluation
