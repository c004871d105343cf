// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#include "defexam/evaluation/judge.hpp"

#include <algorithm>
#include <map>

#include <spdlog/spdlog.h>

#include "defexam/common/assets.hpp"
#include "defexam/common/error.hpp"
#include "defexam/common/fs.hpp"
#include "defexam/common/parallel.hpp"
#include "defexam/common/text.hpp"

namespace defexam::evaluation {

using nlohmann::json;

double norm_grade(double s) { return 100.0 * (s - 1.0) / 4.0; }

double similarity_from(const llm::GradeDistribution& distribution) {
  if (!(distribution.total() > 0.0)) {
    throw Error(ErrorKind::kProtocol, "grade distribution has no probability mass");
  }
  return norm_grade(distribution.weighted_mean());
}

std::string render_judge_prompt(const std::string& examiner_reason, const std::string& model_reason) {
  return text::render_template(assets::require("prompts/judge_v1.txt"),
                               {{"reason_1", examiner_reason}, {"reason_2", model_reason}});
}

JudgeVerdict judge_pair(const std::string& examiner_reason, const std::string& model_reason,
                        llm::Gateway& gateway, const JudgeConfig& config) {
  JudgeVerdict verdict;
  verdict.examiner_text = examiner_reason;
  verdict.model_text = model_reason;

  llm::ChatRequest request;
  request.model = gateway.model_for(config.model_role);
  request.max_tokens = config.analysis_max_tokens;
  request.messages = {llm::ChatMessage::user(render_judge_prompt(examiner_reason, model_reason))};
  const auto analysis = gateway.complete(request);
  verdict.analysis_text = analysis.content;

  request.messages.push_back(analysis.as_message());
  request.messages.push_back(
      llm::ChatMessage::user(std::string(text::trim(assets::require("prompts/judge_grade_v1.txt")))));
  request.top_logprobs = config.top_logprobs;
  request.max_tokens = 1;
  try {
    verdict.distribution = gateway.grade_distribution(request);
    verdict.sim = similarity_from(verdict.distribution);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kProtocol) throw;
    verdict.failed = true;
    verdict.error = e.what();
    spdlog::warn("judge failure: {}", e.what());
  }
  return verdict;
}

SimilarityMatrix SimilarityMatrix::full(const std::vector<std::vector<double>>& values, std::size_t m) {
  SimilarityMatrix matrix;
  matrix.n = values.size();
  matrix.m = values.empty() ? m : values.front().size();
  for (const auto& row : values) {
    matrix.s.emplace_back(row.begin(), row.end());
  }
  return matrix;
}

ClaimJudgeResult judge_prf(const SimilarityMatrix& matrix, double threshold) {
  ClaimJudgeResult r;
  r.threshold = threshold;
  const auto n = matrix.n, m = matrix.m;
  if (n == 0 && m == 0) return r;

  auto mean = [](const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  auto indicator_mean = [&](const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x >= threshold ? 1.0 : 0.0;
    return 100.0 * s / static_cast<double>(v.size());
  };

  // Maxima over defined cells; a reason whose cells all failed is left out.
  for (std::size_t j = 0; j < m; ++j) {
    std::optional<double> best;
    if (n == 0) best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (const auto& v = matrix.s[i][j]) best = best ? std::max(*best, *v) : *v;
    }
    if (best) r.model_maxima.push_back(*best);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::optional<double> best;
    if (m == 0) best = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (const auto& v = matrix.s[i][j]) best = best ? std::max(*best, *v) : *v;
    }
    if (best) r.examiner_maxima.push_back(*best);
  }

  if (!r.model_maxima.empty()) {
    r.p = mean(r.model_maxima);
    r.p75 = indicator_mean(r.model_maxima);
  }
  if (!r.examiner_maxima.empty()) {
    r.r = mean(r.examiner_maxima);
    r.r75 = indicator_mean(r.examiner_maxima);
  }
  auto f1 = [](const std::optional<double>& p, const std::optional<double>& q) -> std::optional<double> {
    if (p && q) return p.value() + q.value() == 0 ? 0.0 : 2 * *p * *q / (*p + *q);
    if ((p && *p == 0.0) || (q && *q == 0.0)) return 0.0;
    return std::nullopt;
  };
  r.f1 = f1(r.p, r.r);
  r.f1_75 = f1(r.p75, r.r75);
  return r;
}

JudgeAggregate aggregate_judge(const std::vector<ClaimJudgeResult>& per_claim, std::size_t failed_pairs) {
  JudgeAggregate out;
  out.failed_pairs = failed_pairs;
  auto macro = [&](auto member) -> std::optional<double> {
    double sum = 0;
    std::size_t count = 0;
    for (const auto& c : per_claim) {
      if (const auto& v = c.*member) {
        sum += *v;
        ++count;
      }
    }
    if (count == 0) return std::nullopt;
    return sum / static_cast<double>(count);
  };
  auto micro = [&](auto member, bool thresholded) -> std::optional<double> {
    double sum = 0;
    std::size_t count = 0;
    for (const auto& c : per_claim) {
      for (double v : c.*member) {
        sum += thresholded ? (v >= c.threshold ? 100.0 : 0.0) : v;
        ++count;
      }
    }
    if (count == 0) return std::nullopt;
    return sum / static_cast<double>(count);
  };
  auto with_f1 = [](std::optional<double> p, std::optional<double> r) {
    Prf prf{p, r, std::nullopt};
    if (p && r) prf.f1 = (*p + *r == 0) ? 0.0 : 2 * *p * *r / (*p + *r);
    return prf;
  };
  out.macro_soft = with_f1(macro(&ClaimJudgeResult::p), macro(&ClaimJudgeResult::r));
  out.macro_75 = with_f1(macro(&ClaimJudgeResult::p75), macro(&ClaimJudgeResult::r75));
  out.micro_soft = with_f1(micro(&ClaimJudgeResult::model_maxima, false),
                           micro(&ClaimJudgeResult::examiner_maxima, false));
  out.micro_75 = with_f1(micro(&ClaimJudgeResult::model_maxima, true),
                         micro(&ClaimJudgeResult::examiner_maxima, true));
  for (const auto& c : per_claim) {
    if (c.p || c.r) ++out.claims;
  }
  return out;
}

namespace {

json distribution_json(const llm::GradeDistribution& d) { return d.p; }

}  // namespace

void to_json(json& j, const VerdictRecord& r) {
  j = {{"application_id", r.application_id},
       {"claim_number", r.claim_number},
       {"examiner_index", r.examiner_index},
       {"model_index", r.model_index},
       {"examiner_text", r.verdict.examiner_text},
       {"model_text", r.verdict.model_text},
       {"grade_distribution", distribution_json(r.verdict.distribution)},
       {"sim", r.verdict.sim},
       {"analysis_text", r.verdict.analysis_text},
       {"failed", r.verdict.failed},
       {"error", r.verdict.error}};
}

void from_json(const json& j, VerdictRecord& r) {
  r.application_id = j.at("application_id").get<std::string>();
  r.claim_number = j.at("claim_number").get<int>();
  r.examiner_index = j.at("examiner_index").get<std::size_t>();
  r.model_index = j.at("model_index").get<std::size_t>();
  r.verdict.examiner_text = j.at("examiner_text").get<std::string>();
  r.verdict.model_text = j.at("model_text").get<std::string>();
  r.verdict.distribution.p = j.at("grade_distribution").get<std::array<double, 5>>();
  r.verdict.sim = j.at("sim").get<double>();
  r.verdict.analysis_text = j.value("analysis_text", std::string());
  r.verdict.failed = j.value("failed", false);
  r.verdict.error = j.value("error", std::string());
}

void to_json(json& j, const JudgedClaim& c) {
  j = {{"application_id", c.application_id}, {"claim_number", c.claim_number}, {"n", c.n}, {"m", c.m}};
}

void from_json(const json& j, JudgedClaim& c) {
  c.application_id = j.at("application_id").get<std::string>();
  c.claim_number = j.at("claim_number").get<int>();
  c.n = j.at("n").get<std::size_t>();
  c.m = j.at("m").get<std::size_t>();
}

JudgeRun run_judge(const std::vector<corpus::LabeledClaim>& rows,
                   const std::vector<classifiers::AgentPrediction>& predictions, llm::Gateway& gateway,
                   const JudgeConfig& config, int max_workers) {
  std::map<std::pair<std::string, int>, const classifiers::AgentPrediction*> by_claim;
  for (const auto& p : predictions) by_claim[{p.application_id, p.claim_number}] = &p;

  JudgeRun run;
  struct Job {
    const corpus::LabeledClaim* row;
    const classifiers::AgentPrediction* prediction;
    std::size_t i, j;
  };
  std::vector<Job> jobs;
  for (const auto& row : rows) {
    const auto it = by_claim.find({row.application_id(), row.claim.number});
    if (it == by_claim.end()) continue;
    const auto* p = it->second;
    const std::size_t m = p->failed ? 0 : p->reasons.size();
    run.claims.push_back({row.application_id(), row.claim.number, row.reasons.size(), m});
    for (std::size_t i = 0; i < row.reasons.size(); ++i) {
      for (std::size_t j = 0; j < m; ++j) jobs.push_back({&row, p, i, j});
    }
  }
  run.verdicts.resize(jobs.size());
  parallel_for(jobs.size(), static_cast<std::size_t>(std::max(1, max_workers)), [&](std::size_t k) {
    const auto& job = jobs[k];
    auto& record = run.verdicts[k];
    record.application_id = job.row->application_id();
    record.claim_number = job.row->claim.number;
    record.examiner_index = job.i;
    record.model_index = job.j;
    record.verdict = judge_pair(job.row->reasons[job.i].judge_text(),
                                job.prediction->reasons[job.j].reason.reason_text, gateway, config);
  });
  return run;
}

std::vector<ClaimJudgeResult> replay_judge(const JudgeRun& run, double threshold) {
  std::map<std::pair<std::string, int>, std::vector<const VerdictRecord*>> by_claim;
  for (const auto& v : run.verdicts) by_claim[{v.application_id, v.claim_number}].push_back(&v);
  std::vector<ClaimJudgeResult> out;
  for (const auto& c : run.claims) {
    SimilarityMatrix s;
    s.n = c.n;
    s.m = c.m;
    s.s.assign(c.n, std::vector<std::optional<double>>(c.m));
    for (const auto* v : by_claim[{c.application_id, c.claim_number}]) {
      if (v->examiner_index >= c.n || v->model_index >= c.m) {
        throw Error(ErrorKind::kData, "verdict log index outside claim " + c.application_id + "/" +
                                          std::to_string(c.claim_number));
      }
      if (!v->verdict.failed) s.s[v->examiner_index][v->model_index] = v->verdict.sim;
    }
    out.push_back(judge_prf(s, threshold));
  }
  return out;
}

void save_judge_run(const std::filesystem::path& path, const JudgeRun& run) {
  std::vector<json> records;
  for (const auto& c : run.claims) records.push_back({{"claim", c}});
  for (const auto& v : run.verdicts) records.push_back({{"verdict", v}});
  fs::write_jsonl_atomic(path, records);
}

JudgeRun load_judge_run(const std::filesystem::path& path) {
  JudgeRun run;
  for (const auto& record : fs::read_jsonl(path)) {
    if (record.contains("claim")) {
      run.claims.push_back(record.at("claim").get<JudgedClaim>());
    } else if (record.contains("verdict")) {
      run.verdicts.push_back(record.at("verdict").get<VerdictRecord>());
    } else {
      throw Error(ErrorKind::kData, path.string() + ": unknown judge record");
    }
  }
  return run;
}

}  // namespace defexam::evaluation
