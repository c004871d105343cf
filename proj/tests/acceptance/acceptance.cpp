// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance checks. Prints one PASS, FAIL or SKIP line per criterion and
// exits non-zero when any criterion fails. Criteria 5 and 6 need a corpus
// directory (manifest.jsonl and applications.jsonl as written by `build`)
// named by DEFEXAM_CORPUS_DIR; without it they are skipped.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "defexam/classifiers/agent.hpp"
#include "defexam/classifiers/logistic.hpp"
#include "defexam/classifiers/predictions.hpp"
#include "defexam/classifiers/verbalized.hpp"
#include "defexam/common/fs.hpp"
#include "defexam/common/random.hpp"
#include "defexam/dataset/builder.hpp"
#include "defexam/dataset/statistics.hpp"
#include "defexam/evaluation/judge.hpp"
#include "defexam/evaluation/metrics.hpp"
#include "defexam/evaluation/report.hpp"
#include "defexam/oa/matching.hpp"
#include "defexam/pipeline/config.hpp"
#include "defexam/pipeline/stages.hpp"
#include "fixture.hpp"
#include "mocks.hpp"
#include "oracles.hpp"

namespace {

using namespace defexam;
using nlohmann::json;
namespace oracle = testing::oracle;
namespace stdfs = std::filesystem;

enum class Outcome { kPass, kFail, kSkip };

struct Verdict {
  Outcome outcome = Outcome::kPass;
  std::string detail;
};

/// Collects failed checks; the first few are reported.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (ok) return;
    ++failed_;
    if (messages_.size() < 3) messages_.push_back(what);
  }
  Verdict verdict(const std::string& summary) const {
    if (failed_ == 0) return {Outcome::kPass, summary};
    std::string detail = fmt::format("{} of {} checks failed", failed_, total_);
    for (const auto& m : messages_) detail += "; " + m;
    return {Outcome::kFail, detail};
  }

 private:
  std::size_t total_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> messages_;
};

bool close(double a, double b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

bool same_optional(const std::optional<double>& a, const std::optional<double>& b, double tol = 1e-9) {
  if (a.has_value() != b.has_value()) return false;
  return !a || close(*a, *b, tol);
}

bool bit_equal(const std::optional<double>& a, const std::optional<double>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || std::memcmp(&*a, &*b, sizeof(double)) == 0;
}

std::vector<std::vector<double>> random_matrix(Rng& rng, std::size_t n, std::size_t m) {
  std::vector<std::vector<double>> s(n, std::vector<double>(m));
  for (auto& row : s)
    for (auto& v : row) v = rng.below(4) == 0 ? 75.0 : 100.0 * rng.uniform01();  // 75 probes the boundary
  return s;
}

// ------------------------------------------------------------ 1

Verdict metric_oracles() {
  Checks c;
  Rng rng(20260101);
  const int kInstances = 200;
  for (int t = 0; t < kInstances; ++t) {
    // judge_prf
    const auto n = rng.below(6);
    const auto m = rng.below(6);
    const auto s = random_matrix(rng, n, m);
    const auto got = evaluation::judge_prf(evaluation::SimilarityMatrix::full(s, m));
    const auto want = oracle::judge_prf(s, m, 75.0);
    c.expect(same_optional(got.p, want.p) && same_optional(got.r, want.r) && same_optional(got.f1, want.f1) &&
                 same_optional(got.p75, want.p75) && same_optional(got.r75, want.r75) &&
                 same_optional(got.f1_75, want.f1_75),
             fmt::format("judge_prf instance {}", t));

    // aggregate_judge
    std::vector<evaluation::ClaimJudgeResult> claims;
    std::vector<oracle::ClaimPrf> oracle_claims;
    for (std::size_t k = 0, count = 1 + rng.below(5); k < count; ++k) {
      const auto cn = rng.below(6);
      const auto cm = rng.below(6);
      const auto cs = random_matrix(rng, cn, cm);
      claims.push_back(evaluation::judge_prf(evaluation::SimilarityMatrix::full(cs, cm)));
      oracle_claims.push_back(oracle::judge_prf(cs, cm, 75.0));
    }
    const auto agg = evaluation::aggregate_judge(claims);
    const auto oagg = oracle::aggregate(oracle_claims, 75.0);
    c.expect(same_optional(agg.macro_soft.p, oagg.macro_p) && same_optional(agg.macro_soft.r, oagg.macro_r) &&
                 same_optional(agg.micro_soft.p, oagg.micro_p) && same_optional(agg.micro_soft.r, oagg.micro_r) &&
                 same_optional(agg.macro_75.p, oagg.macro_p75) && same_optional(agg.macro_75.r, oagg.macro_r75) &&
                 same_optional(agg.micro_75.p, oagg.micro_p75) && same_optional(agg.micro_75.r, oagg.micro_r75),
             fmt::format("aggregate_judge instance {}", t));

    // sim / norm
    std::array<double, 5> p{};
    do {
      for (auto& v : p) v = rng.below(3) == 0 ? 0.0 : rng.uniform01();
    } while (p[0] + p[1] + p[2] + p[3] + p[4] == 0.0);
    c.expect(close(evaluation::similarity_from({p}), oracle::sim(p)), fmt::format("sim instance {}", t));

    // binary_metrics and auroc
    const auto count = 2 + rng.below(99);
    std::vector<bool> pred(count), lab(count);
    std::vector<double> scores(count);
    for (std::size_t i = 0; i < count; ++i) {
      pred[i] = rng.below(2) == 1;
      lab[i] = i < 2 ? i == 0 : rng.below(2) == 1;
      scores[i] = static_cast<double>(rng.below(15)) / 14.0;  // ties on purpose
    }
    const auto bm = evaluation::binary_metrics(pred, lab);
    const auto ob = oracle::binary(pred, lab);
    c.expect(close(bm.precision, ob.precision) && close(bm.recall, ob.recall) && close(bm.f1, ob.f1) &&
                 close(bm.accuracy, ob.accuracy) && close(bm.predicted_positive, ob.predicted_positive),
             fmt::format("binary_metrics instance {}", t));
    c.expect(close(evaluation::auroc(scores, lab), oracle::auroc(scores, lab)), fmt::format("auroc instance {}", t));
  }
  return c.verdict(fmt::format("{} randomized instances each for judge_prf, aggregate_judge, sim, binary_metrics, "
                               "auroc agree with brute-force oracles within 1e-9",
                               kInstances));
}

// ------------------------------------------------------------ 2

Verdict auroc_sanity() {
  Checks c;
  const std::vector<bool> labels = {true, false, true, false, true, false, true, false};
  const double equal = evaluation::auroc(std::vector<double>(labels.size(), 0.3), labels);
  c.expect(equal == 50.0, fmt::format("all-equal scores gave {}", equal));
  const double perfect = evaluation::auroc({0.9, 0.1, 0.8, 0.2, 0.7, 0.3, 0.6, 0.4}, labels);
  c.expect(perfect == 100.0, fmt::format("perfect ranking gave {}", perfect));
  const auto all = evaluation::binary_metrics(std::vector<bool>(labels.size(), true), labels);
  c.expect(std::abs(all.f1 - 66.67) <= 0.01, fmt::format("all-positive F1 {}", all.f1));
  return c.verdict(fmt::format("equal scores {:.2f}, perfect ranking {:.2f}, all-positive F1 {:.2f}", equal, perfect,
                               all.f1));
}

// ------------------------------------------------------------ 3

Verdict gradient_check() {
  Checks c;
  Rng rng(33);
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    std::vector<std::vector<double>> dense(20, std::vector<double>(10));
    std::vector<int> y(20);
    for (auto& row : dense)
      for (auto& v : row) v = 4 * rng.uniform01() - 2;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = i < 2 ? static_cast<int>(i) : static_cast<int>(rng.below(2));
    std::vector<double> w(10);
    for (auto& v : w) v = 2 * rng.uniform01() - 1;
    const double b = rng.uniform01() - 0.5;
    const double l2 = t % 2 == 0 ? 0.0 : 0.05;
    const auto x = oracle::dense_matrix(dense);
    const auto g = classifiers::logistic_gradient(w, b, x, y, l2);
    const auto fd = oracle::finite_difference_gradient(dense, y, w, b, l2, 1e-5);
    for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, std::abs(g[i] - fd[i]));

    const auto trained = classifiers::train_logistic(x, y, {.l2 = l2, .max_epochs = 300});
    for (std::size_t i = 1; i < trained.loss_history.size(); ++i) {
      c.expect(trained.loss_history[i] <= trained.loss_history[i - 1],
               fmt::format("loss rose at epoch {} of instance {}", i, t));
    }
  }
  c.expect(worst <= 1e-6, fmt::format("max-abs gradient gap {:.3g}", worst));
  return c.verdict(fmt::format("10 random 20x10 instances, max-abs gradient gap {:.2e}, loss never increased", worst));
}

// ------------------------------------------------------------ mock world

struct MockWorld {
  MockWorld(std::size_t applications, std::uint64_t seed, double rejected_fraction, std::size_t defects)
      : apps(std::make_shared<std::vector<testing::FixtureApplication>>(testing::make_fixture(
            {.applications = applications, .seed = seed, .rejected_fraction = rejected_fraction, .defects = defects}))),
        base(std::make_shared<std::string>()),
        portal(testing::portal_handler(apps, base)),
        llm(testing::llm_handler(testing::ScriptedModel(apps))) {
    *base = portal.url();
  }

  pipeline::PipelineConfig config() const {
    return pipeline::PipelineConfig::from_json(testing::mock_pipeline_config(portal.url(), llm.url()));
  }

  std::shared_ptr<std::vector<testing::FixtureApplication>> apps;
  std::shared_ptr<std::string> base;
  testing::MockHttpServer portal;
  testing::MockHttpServer llm;
};

// ------------------------------------------------------------ 4

Verdict dataset_properties() {
  Checks c;
  MockWorld world(200, 2026, 0.35, 8);
  const pipeline::Run run(world.config(), testing::fresh_temp_dir("acceptance_dataset"));
  pipeline::run_fetch(run);
  pipeline::run_parse(run);
  pipeline::run_build(run);
  const auto manifest = dataset::load_manifest(run.path("manifest.jsonl"));

  // (a) no application spans two splits
  std::map<std::string, std::set<corpus::Split>> splits_of;
  for (const auto& r : manifest.rows) splits_of[r.application_id()].insert(r.split);
  std::size_t leaking = 0;
  for (const auto& [id, s] : splits_of) leaking += s.size() > 1 ? 1 : 0;
  c.expect(leaking == 0, fmt::format("{} applications span two splits", leaking));

  // (b) application fractions 60/30/10 up to integer rounding
  std::map<corpus::Split, std::size_t> apps_in;
  for (const auto& [id, s] : splits_of) ++apps_in[*s.begin()];
  const double total_apps = static_cast<double>(splits_of.size());
  const std::array<double, 3> fractions = {0.6, 0.3, 0.1};
  for (std::size_t k = 0; k < 3; ++k) {
    const auto split = corpus::kAllSplits[k];
    const double gap = std::abs(static_cast<double>(apps_in[split]) - fractions[k] * total_apps);
    c.expect(gap < 1.0, fmt::format("{} holds {} of {} applications", corpus::to_string(split), apps_in[split],
                                    splits_of.size()));
  }

  // (c) label balance within one application-average of claims
  std::size_t indefinite = 0, definite = 0;
  std::set<std::string> indefinite_apps;
  for (const auto& r : manifest.rows) {
    if (r.label) {
      ++indefinite;
      indefinite_apps.insert(r.application_id());
    } else {
      ++definite;
    }
  }
  const double avg = indefinite_apps.empty() ? 0.0 : static_cast<double>(indefinite) / indefinite_apps.size();
  c.expect(indefinite > 0, "no indefinite rows");
  c.expect(std::abs(static_cast<double>(indefinite) - static_cast<double>(definite)) <= avg,
           fmt::format("{} indefinite vs {} definite, average {:.2f}", indefinite, definite, avg));

  // (d) definite rows never come from an office action citing 112(b)
  std::map<std::string, const testing::FixtureApplication*> by_id;
  for (const auto& a : *world.apps) by_id[a.id] = &a;
  std::size_t tainted = 0;
  for (const auto& r : manifest.rows) {
    if (r.label) continue;
    const auto* app = by_id.at(r.application_id());
    if (app->office_action_xml().find("112(b)") != std::string::npos) ++tainted;
  }
  c.expect(tainted == 0, fmt::format("{} definite rows from 112(b) office actions", tainted));

  return c.verdict(fmt::format("200 applications: {} rows ({} indefinite, {} definite), apps per split {}/{}/{}, "
                               "no leakage, no 112(b) definite rows",
                               manifest.rows.size(), indefinite, definite, apps_in[corpus::Split::kTrain],
                               apps_in[corpus::Split::kTest], apps_in[corpus::Split::kValidation]));
}

// ------------------------------------------------------------ 5 and 6

std::optional<stdfs::path> corpus_dir() {
  const char* dir = std::getenv("DEFEXAM_CORPUS_DIR");
  if (!dir || !*dir) return std::nullopt;
  return stdfs::path(dir);
}

Verdict released_statistics() {
  const auto dir = corpus_dir();
  if (!dir) return {Outcome::kSkip, "DEFEXAM_CORPUS_DIR not set"};
  Checks c;
  const auto manifest = dataset::load_manifest(*dir / "manifest.jsonl");
  const auto stats = dataset::compute_statistics(manifest);
  auto count = [&](const std::string& section, const std::string& row, std::size_t column) -> std::size_t {
    const auto* r = stats.find(section, row);
    return r ? r->counts[column] : 0;
  };
  auto expect_count = [&](const std::string& section, const std::string& row, std::size_t column, std::size_t want) {
    const auto got = count(section, row, column);
    c.expect(got == want, fmt::format("{}/{}[{}] = {}, expected {}", section, row, column, got, want));
  };
  expect_count("claims", "total", 0, 14536);
  expect_count("claims", "indefinite", 0, 7268);
  expect_count("claims", "definite", 0, 7268);
  expect_count("claims", "independent", 0, 3339);
  expect_count("applications", "total", 1, 2226);
  expect_count("applications", "total", 2, 1113);
  expect_count("applications", "total", 3, 371);
  const std::array<std::size_t, corpus::kNumFinalCategories> categories = {3350, 3394, 910, 121, 850, 442, 148};
  for (std::size_t k = 0; k < categories.size(); ++k) {
    expect_count("reasons", std::string(corpus::id(corpus::kFinalCategories[k])), 0, categories[k]);
  }
  for (const auto& y : stats.years) {
    const double f = y.indefinite_fraction();
    c.expect(f >= 0.4 && f <= 0.6, fmt::format("year {} indefinite fraction {:.3f}", y.year, f));
  }
  return c.verdict(fmt::format("split, category and yearly statistics reproduced over {} rows", manifest.rows.size()));
}

Verdict released_baselines() {
  const auto dir = corpus_dir();
  if (!dir) return {Outcome::kSkip, "DEFEXAM_CORPUS_DIR not set"};
  Checks c;
  const auto run_dir = testing::fresh_temp_dir("acceptance_released");
  stdfs::copy_file(*dir / "manifest.jsonl", run_dir / "manifest.jsonl");
  stdfs::copy_file(*dir / "applications.jsonl", run_dir / "applications.jsonl");
  pipeline::PipelineConfig config;
  config.features.sets = {features::FeatureSet::kTfidf, features::FeatureSet::kAll};
  const pipeline::Run run(config, run_dir);
  pipeline::run_train(run);
  pipeline::run_predict(run, {"logreg-tfidf", "logreg-all"}, {corpus::Split::kTest, corpus::Split::kValidation});

  const auto manifest = dataset::load_manifest(run.path("manifest.jsonl"));
  std::vector<corpus::LabeledClaim> test_rows, val_rows;
  for (const auto& r : manifest.rows) {
    if (r.split == corpus::Split::kTest) test_rows.push_back(r);
    if (r.split == corpus::Split::kValidation) val_rows.push_back(r);
  }
  auto scores = [&](const std::string& name, const char* split) {
    std::vector<classifiers::ScoredClaim> out;
    for (const auto& j : fs::read_jsonl(run.path(fmt::format("predictions/{}.{}.jsonl", name, split)))) {
      out.push_back(j.get<classifiers::ScoredClaim>());
    }
    return out;
  };
  struct Target {
    const char* model;
    double auroc;
    double percent_indefinite;
  };
  std::string summary;
  for (const auto& t : {Target{"logreg-all", 59.5, 49.2}, Target{"logreg-tfidf", 54.8, 46.2}}) {
    const auto e = evaluation::evaluate_scores(t.model, test_rows, scores(t.model, "test"), val_rows,
                                               scores(t.model, "validation"));
    const double auc = e.binary->auroc.value_or(0.0);
    const double pct = e.binary->metrics.predicted_positive;
    c.expect(std::abs(auc - t.auroc) <= 3.0, fmt::format("{} AUROC {:.1f}, expected {} +/- 3", t.model, auc, t.auroc));
    c.expect(std::abs(pct - t.percent_indefinite) <= 2.0,
             fmt::format("{} predicted {:.1f}% indefinite, expected {} +/- 2", t.model, pct, t.percent_indefinite));
    summary += fmt::format("{}{} AUROC {:.1f} ({:.1f}% indefinite)", summary.empty() ? "" : ", ", t.model, auc, pct);
  }
  return c.verdict(summary);
}

// ------------------------------------------------------------ 7

std::map<std::string, std::string> artifacts(const stdfs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : stdfs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const auto rel = stdfs::relative(e.path(), dir).generic_string();
    if (rel.rfind("cache/", 0) == 0) continue;
    out[rel] = fs::read_file(e.path());
  }
  return out;
}

void run_everything(const pipeline::Run& run) {
  pipeline::run_fetch(run);
  pipeline::run_parse(run);
  pipeline::run_build(run);
  pipeline::run_train(run);
  pipeline::run_predict(run, {}, {});
  pipeline::run_judge_stage(run, corpus::Split::kTest);
  pipeline::run_evaluate(run);
  pipeline::run_sample_audit(run, std::nullopt, std::nullopt);
}

Verdict llm_substitutes() {
  Checks c;
  MockWorld world(40, 77, 0.3, 4);

  // (a) byte determinism across two run directories
  const pipeline::Run a(world.config(), testing::fresh_temp_dir("acceptance_e2e_a"));
  const pipeline::Run b(world.config(), testing::fresh_temp_dir("acceptance_e2e_b"));
  run_everything(a);
  run_everything(b);
  const auto fa = artifacts(a.dir());
  const auto fb = artifacts(b.dir());
  c.expect(fa.size() == fb.size(), "artifact sets differ");
  std::size_t differing = 0;
  for (const auto& [name, bytes] : fa) {
    const auto it = fb.find(name);
    if (it == fb.end() || it->second != bytes) {
      ++differing;
      c.expect(false, "(a) " + name + " differs");
    }
  }
  c.expect(fa.count("judge/agent.test.jsonl") && fa.count("reports/judge.tsv"), "(a) judge artifacts missing");

  // (b) fuzzed agent scripts terminate within the call cap
  const auto application = testing::fixture_bundles(*world.apps).front().application;
  std::size_t over_cap = 0, crashed = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    auto transport = std::make_shared<testing::FunctionTransport>(
        testing::llm_handler([seed](const json& request) { return testing::fuzzed_agent_reply(seed, request); }));
    llm::GatewayConfig gc;
    gc.models = {{"agent", "fuzz"}};
    llm::Gateway gateway(gc, transport, [](std::chrono::milliseconds) {});
    const int cap = static_cast<int>(seed % 11);
    try {
      const auto p = classifiers::run_agent(application.claims[seed % application.claims.size()], application, gateway,
                                            {.max_tool_calls = cap});
      if (p.gateway_rounds > cap + 1 || transport->calls() > cap + 1) ++over_cap;
    } catch (const std::exception& e) {
      ++crashed;
    }
  }
  c.expect(over_cap == 0 && crashed == 0, fmt::format("(b) {} scripts exceeded the cap, {} threw", over_cap, crashed));

  // (c) schema-valid verdicts reach evaluation without loss
  const auto persisted = evaluation::load_judge_run(a.path("judge/agent.test.jsonl"));
  const auto replayed = evaluation::replay_judge(persisted);
  std::size_t valid = 0, lost = 0;
  std::map<std::pair<std::string, int>, std::size_t> claim_index;
  for (std::size_t k = 0; k < persisted.claims.size(); ++k) {
    claim_index[{persisted.claims[k].application_id, persisted.claims[k].claim_number}] = k;
  }
  std::map<std::size_t, std::map<std::pair<std::size_t, std::size_t>, double>> cells;
  for (const auto& v : persisted.verdicts) {
    const json j = v;
    if (json(json::parse(j.dump()).get<evaluation::VerdictRecord>()).dump() != j.dump()) ++lost;
    if (v.verdict.failed) continue;
    ++valid;
    if (!close(v.verdict.sim, evaluation::similarity_from(v.verdict.distribution), 0.0)) ++lost;
    const auto k = claim_index.at({v.application_id, v.claim_number});
    cells[k][{v.examiner_index, v.model_index}] = v.verdict.sim;
    const auto& r = replayed[k];
    if (r.examiner_maxima.at(v.examiner_index) < v.verdict.sim || r.model_maxima.at(v.model_index) < v.verdict.sim) {
      ++lost;
    }
  }
  for (std::size_t k = 0; k < persisted.claims.size(); ++k) {
    const auto& claim = persisted.claims[k];
    if (cells[k].size() != claim.n * claim.m) continue;  // claims with failed pairs are covered above
    std::vector<std::vector<double>> s(claim.n, std::vector<double>(claim.m));
    for (const auto& [ij, sim] : cells[k]) s[ij.first][ij.second] = sim;
    const auto want = oracle::judge_prf(s, claim.m, 75.0);
    const auto& got = replayed[k];
    if (!same_optional(got.p, want.p) || !same_optional(got.r, want.r) || !same_optional(got.f1_75, want.f1_75)) ++lost;
  }
  c.expect(valid > 0, "(c) no schema-valid verdicts");
  c.expect(lost == 0, fmt::format("(c) {} verdicts lost or altered", lost));

  // (d) replay from the persisted log is bit-exact
  const auto manifest = dataset::load_manifest(a.path("manifest.jsonl"));
  std::vector<corpus::LabeledClaim> test_rows;
  for (const auto& r : manifest.rows) {
    if (r.split == corpus::Split::kTest) test_rows.push_back(r);
  }
  std::vector<classifiers::AgentPrediction> predictions;
  for (const auto& j : fs::read_jsonl(a.path("predictions/agent.test.raw.jsonl"))) {
    predictions.push_back(j.get<classifiers::AgentPrediction>());
  }
  auto gc = a.config().llm.gateway;
  gc.cache_dir = a.path("cache/llm");
  llm::Gateway gateway(gc, make_http_transport(gc.endpoint));
  const auto live = evaluation::run_judge(test_rows, predictions, gateway, a.config().judge, 2);
  const auto dir = testing::fresh_temp_dir("acceptance_replay");
  evaluation::save_judge_run(dir / "verdicts.jsonl", live);
  std::size_t failed_pairs = 0;
  for (const auto& v : live.verdicts) failed_pairs += v.verdict.failed ? 1 : 0;
  const auto live_agg = evaluation::aggregate_judge(evaluation::replay_judge(live), failed_pairs);
  const auto disk_agg =
      evaluation::aggregate_judge(evaluation::replay_judge(evaluation::load_judge_run(dir / "verdicts.jsonl")),
                                  failed_pairs);
  const auto stage_agg = evaluation::aggregate_judge(replayed, failed_pairs);
  for (const auto* other : {&disk_agg, &stage_agg}) {
    for (const auto& [x, y] : {std::pair{&live_agg.macro_soft, &other->macro_soft},
                               std::pair{&live_agg.micro_soft, &other->micro_soft},
                               std::pair{&live_agg.macro_75, &other->macro_75},
                               std::pair{&live_agg.micro_75, &other->micro_75}}) {
      c.expect(bit_equal(x->p, y->p) && bit_equal(x->r, y->r) && bit_equal(x->f1, y->f1),
               "(d) replayed aggregate differs");
    }
  }
  c.expect(live_agg.macro_soft.p.has_value(), "(d) no judge aggregate");

  return c.verdict(fmt::format("(a) {} artifacts byte-identical across runs; (b) 1000 fuzzed scripts within cap; "
                               "(c) {} valid verdicts preserved; (d) replay bit-exact (macro soft P {:.4f})",
                               fa.size(), valid, live_agg.macro_soft.p.value_or(0.0)));
}

// ------------------------------------------------------------ 8

const std::vector<std::string> kClaimWords = {
    "a",       "the",        "processor", "memory",   "configured", "to",      "store",   "signal",
    "first",   "second",     "module",    "wherein",  "bus",        "data",    "circuit", "receive",
    "output",  "controller", "interface", "plurality", "of",        "units",   "coupled", "said"};
const std::vector<std::string> kUnrelatedWords = {
    "hydrogel", "polymer", "catalyst", "solvent", "ethanol", "viscous", "membrane", "titanium",
    "alloy",    "resin",   "ceramic",  "glazing", "kiln",    "pigment", "fibrous",  "molten"};

std::string words_from(Rng& rng, const std::vector<std::string>& vocab, std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) out += (i ? " " : "") + vocab[rng.below(vocab.size())];
  return out;
}

/// Quote-style and whitespace noise: curly or straight enclosing quotes,
/// runs of spaces, tabs and newlines, and curly apostrophes.
std::string perturb(Rng& rng, const std::string& recitation) {
  std::string out;
  for (char ch : recitation) {
    if (ch == ' ') {
      static const std::vector<std::string> kSpaces = {" ", "  ", "\t", "\n", " \n "};
      out += kSpaces[rng.below(kSpaces.size())];
    } else if (ch == '\'') {
      out += "\xE2\x80\x99";
    } else {
      out += ch;
    }
  }
  switch (rng.below(4)) {
    case 0: return "\xE2\x80\x9C" + out + "\xE2\x80\x9D";
    case 1: return "\"" + out + "\"";
    case 2: return " " + out + "  ";
    default: return out;
  }
}

Verdict fuzzy_matching() {
  Checks c;
  Rng rng(8);
  const int kCases = 500;
  const oa::MatchOptions options;
  std::size_t exact_hits = 0, noisy_hits = 0, unrelated_hits = 0, disagreements = 0;
  for (int t = 0; t < kCases; ++t) {
    // Claims carry curly or straight apostrophes so the noise can go either way.
    std::string claim = words_from(rng, kClaimWords, 10 + rng.below(8));
    if (rng.below(3) == 0) claim += " of the user's device";
    claim += ".";
    const auto words = [&] {
      std::vector<std::string> w;
      std::istringstream in(claim);
      for (std::string x; in >> x;) w.push_back(x);
      return w;
    }();
    const auto begin = rng.below(words.size() - 3);
    const auto len = 2 + rng.below(std::min<std::size_t>(4, words.size() - begin - 1));
    std::string recitation;
    for (std::size_t i = begin; i < begin + len; ++i) recitation += (i > begin ? " " : "") + words[i];
    if (!recitation.empty() && recitation.back() == '.') recitation.pop_back();

    const auto text = oa::normalize_for_matching(claim).text;
    auto agrees_with_oracle = [&](const std::string& r, const std::optional<corpus::RecitationSpan>& span) {
      const double best = oracle::best_window_score(oa::normalize_for_matching(r, true).text, text,
                                                    options.window_tolerance);
      return span.has_value() == (best >= options.threshold) && (!span || span->match_score <= best + 1e-12);
    };

    const auto exact = oa::fuzzy_match_recitation(recitation, claim, options);
    if (exact && exact->match_score == 1.0) ++exact_hits;
    disagreements += agrees_with_oracle(recitation, exact) ? 0 : 1;

    const auto noisy_text = perturb(rng, recitation);
    const auto noisy = oa::fuzzy_match_recitation(noisy_text, claim, options);
    if (noisy) {
      const auto found = oa::normalize_for_matching(oa::scalar_substr(claim, noisy->start, noisy->end)).text;
      const auto want = oa::normalize_for_matching(recitation).text;
      if (oa::similarity(found, want) >= options.threshold) ++noisy_hits;
    }
    disagreements += agrees_with_oracle(noisy_text, noisy) ? 0 : 1;

    const auto unrelated_text = words_from(rng, kUnrelatedWords, 2 + rng.below(4));
    const auto unrelated = oa::fuzzy_match_recitation(unrelated_text, claim, options);
    if (unrelated) ++unrelated_hits;
    disagreements += agrees_with_oracle(unrelated_text, unrelated) ? 0 : 1;
  }
  const double exact_rate = 100.0 * exact_hits / kCases;
  const double noisy_rate = 100.0 * noisy_hits / kCases;
  const double unrelated_rate = 100.0 * unrelated_hits / kCases;
  c.expect(exact_hits == static_cast<std::size_t>(kCases), fmt::format("exact recall {:.1f}%", exact_rate));
  c.expect(noisy_rate >= 95.0, fmt::format("noisy recall {:.1f}%", noisy_rate));
  c.expect(unrelated_hits == 0, fmt::format("unrelated match rate {:.1f}%", unrelated_rate));
  c.expect(disagreements == 0, fmt::format("{} decisions disagree with the exhaustive window oracle", disagreements));
  return c.verdict(fmt::format("{} cases: exact recall {:.1f}%, noisy recall {:.1f}%, unrelated match rate {:.1f}%, "
                               "all decisions confirmed by the exhaustive window oracle",
                               kCases, exact_rate, noisy_rate, unrelated_rate));
}

// ------------------------------------------------------------ 9

Verdict lexicon_mapping() {
  Checks c;
  const auto& entries = classifiers::LikelihoodLexicon::defaults().entries();
  c.expect(entries.size() >= 2, "lexicon has fewer than two entries");
  double lo = 1.0, hi = 0.0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    lo = std::min(lo, entries[i].probability);
    hi = std::max(hi, entries[i].probability);
    if (i > 0) {
      c.expect(entries[i - 1].probability < entries[i].probability,
               fmt::format("{} does not exceed {}", entries[i].phrase, entries[i - 1].phrase));
    }
    c.expect(classifiers::map_verbalized_probability(entries[i].phrase) == entries[i].probability,
             "mapping of " + entries[i].phrase);
  }
  c.expect(classifiers::map_verbalized_probability(entries.front().phrase) == lo, "lowest phrase is not the minimum");
  c.expect(classifiers::map_verbalized_probability(entries.back().phrase) == hi, "highest phrase is not the maximum");
  return c.verdict(fmt::format("{} phrases strictly increasing from {} ({}) to {} ({})", entries.size(),
                               entries.front().phrase, lo, entries.back().phrase, hi));
}

}  // namespace

int main() {
  spdlog::set_level(spdlog::level::err);
  const std::vector<std::pair<int, std::function<Verdict()>>> criteria = {
      {1, metric_oracles},      {2, auroc_sanity},       {3, gradient_check},
      {4, dataset_properties},  {5, released_statistics}, {6, released_baselines},
      {7, llm_substitutes},     {8, fuzzy_matching},     {9, lexicon_mapping},
  };
  int failures = 0;
  for (const auto& [number, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {Outcome::kFail, std::string("threw: ") + e.what()};
    }
    const char* label = v.outcome == Outcome::kPass ? "PASS" : v.outcome == Outcome::kFail ? "FAIL" : "SKIP";
    failures += v.outcome == Outcome::kFail ? 1 : 0;
    std::cout << "criterion " << number << ": " << label << " " << v.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
