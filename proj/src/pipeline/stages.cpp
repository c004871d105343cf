// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0

#include "defexam/pipeline/stages.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "defexam/classifiers/agent.hpp"
#include "defexam/classifiers/logistic.hpp"
#include "defexam/classifiers/predictions.hpp"
#include "defexam/common/error.hpp"
#include "defexam/common/fs.hpp"
#include "defexam/common/parallel.hpp"
#include "defexam/common/random.hpp"
#include "defexam/corpus/serialization.hpp"
#include "defexam/dataset/builder.hpp"
#include "defexam/dataset/statistics.hpp"
#include "defexam/evaluation/judge.hpp"
#include "defexam/evaluation/metrics.hpp"
#include "defexam/evaluation/report.hpp"
#include "defexam/features/matrix.hpp"
#include "defexam/ingest/portal.hpp"
#include "defexam/llm/gateway.hpp"
#include "defexam/oa/extraction.hpp"

namespace defexam::pipeline {
namespace {

using nlohmann::json;
namespace stdfs = std::filesystem;

constexpr const char* kBundles = "bundles.jsonl";
constexpr const char* kExtractions = "extractions.jsonl";
constexpr const char* kManifest = "manifest.jsonl";
constexpr const char* kApplications = "applications.jsonl";

std::filesystem::path resolve(const stdfs::path& base, const stdfs::path& p) {
  return p.is_absolute() ? p : base / p;
}

void make_dirs(const stdfs::path& dir) {
  std::error_code ec;
  stdfs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::kConfig, fmt::format("cannot create {}: {}", dir.string(), ec.message()));
}

std::vector<ingest::DocumentBundle> load_bundles(const Run& run) {
  std::vector<ingest::DocumentBundle> out;
  for (const auto& j : fs::read_jsonl(run.require(kBundles, "fetch"))) out.push_back(j.get<ingest::DocumentBundle>());
  return out;
}

std::vector<corpus::PatentApplication> load_applications(const Run& run) {
  std::vector<corpus::PatentApplication> out;
  for (const auto& j : fs::read_jsonl(run.require(kApplications, "build"))) {
    out.push_back(j.get<corpus::PatentApplication>());
  }
  return out;
}

dataset::DatasetManifest load_dataset(const Run& run) {
  return dataset::load_manifest(run.require(kManifest, "build"));
}

std::vector<corpus::LabeledClaim> rows_of(const dataset::DatasetManifest& m, corpus::Split split) {
  std::vector<corpus::LabeledClaim> out;
  for (const auto& r : m.rows) {
    if (r.split == split) out.push_back(r);
  }
  return out;
}

std::unique_ptr<llm::Gateway> make_gateway(const Run& run) {
  const auto& settings = run.config().llm;
  llm::GatewayConfig config = settings.gateway;
  config.cache_dir = resolve(run.dir(), settings.cache_dir);
  auto transport = make_http_transport(config.endpoint, std::chrono::seconds(settings.timeout_seconds));
  return std::make_unique<llm::Gateway>(std::move(config), std::move(transport));
}

std::string scores_name(const std::string& model, corpus::Split split) {
  return fmt::format("predictions/{}.{}.jsonl", model, corpus::to_string(split));
}

std::string raw_agent_name(corpus::Split split) {
  return fmt::format("predictions/agent.{}.raw.jsonl", corpus::to_string(split));
}

std::string judge_name(corpus::Split split) {
  return fmt::format("judge/agent.{}.jsonl", corpus::to_string(split));
}

template <typename T>
std::vector<json> to_records(const std::vector<T>& items) {
  std::vector<json> out;
  out.reserve(items.size());
  for (const auto& item : items) out.push_back(item);
  return out;
}

template <typename T>
std::vector<T> from_records(const stdfs::path& path) {
  std::vector<T> out;
  for (const auto& j : fs::read_jsonl(path)) out.push_back(j.get<T>());
  return out;
}

std::string tsv_cell(const std::string& s) {
  std::string out = s;
  std::replace(out.begin(), out.end(), '\t', ' ');
  std::replace(out.begin(), out.end(), '\n', ' ');
  return out;
}

}  // namespace

Run::Run(PipelineConfig config, std::filesystem::path run_dir)
    : config_(std::move(config)), dir_(std::move(run_dir)) {
  config_.validate();
  make_dirs(dir_);
  config_.portal.cache_dir = resolve(dir_, config_.portal.cache_dir);
  config_.llm.cache_dir = resolve(dir_, config_.llm.cache_dir);
  make_dirs(config_.portal.cache_dir);
  make_dirs(config_.llm.cache_dir);
  config_.portal.client.cache_dir = config_.portal.cache_dir;
}

std::filesystem::path Run::require(const std::string& relative, const std::string& stage) const {
  const auto p = dir_ / relative;
  if (!stdfs::exists(p)) {
    throw Error(ErrorKind::kPrerequisite,
                fmt::format("missing {} in {}; run `defexam {}` first", relative, dir_.string(), stage));
  }
  return p;
}

// ---------------------------------------------------------------- fetch

FetchSummary run_fetch(const Run& run) {
  const auto& cfg = run.config().portal;
  auto transport = make_http_transport(cfg.client.base_url);
  ingest::PortalClient client(cfg.client, transport);

  std::vector<std::string> ids = cfg.application_ids;
  if (ids.empty()) {
    spdlog::info("fetch: searching CPC {} filed on or after {}", cfg.cpc_prefix, cfg.client.min_filing_date.iso());
    ids = client.search_seed_applications(cfg.cpc_prefix, cfg.client.min_filing_date, cfg.require_rejection);
  } else {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  }
  fs::write_file_atomic(run.path("seed_applications.json"), json({{"application_ids", ids}}).dump(2) + "\n");
  spdlog::info("fetch: {} seed applications", ids.size());

  const auto outcomes = client.fetch_document_bundles(ids);
  std::vector<json> bundles;
  std::vector<json> skips;
  for (const auto& o : outcomes) {
    if (o.bundle) bundles.push_back(*o.bundle);
    if (o.skip) skips.push_back(*o.skip);
  }
  fs::write_jsonl_atomic(run.path(kBundles), bundles);
  fs::write_jsonl_atomic(run.path("skip_log.jsonl"), skips);
  spdlog::info("fetch: {} bundles, {} skipped, {} portal requests", bundles.size(), skips.size(),
               client.request_count());
  return {ids.size(), bundles.size(), skips.size()};
}

// ---------------------------------------------------------------- parse

ParseSummary run_parse(const Run& run) {
  const auto bundles = load_bundles(run);
  auto gateway = make_gateway(run);

  std::vector<json> records(bundles.size());
  std::vector<int> section_counts(bundles.size());
  std::vector<oa::ExtractionOutcome> outcomes(bundles.size());
  parallel_for(bundles.size(), static_cast<std::size_t>(run.config().llm.gateway.max_in_flight),
               [&](std::size_t i) {
                 const auto sections = oa::select_112_sections(bundles[i].first_office_action);
                 section_counts[i] = static_cast<int>(sections.size());
                 outcomes[i] = oa::extract_rejections(sections, *gateway, run.config().extraction);
               });

  ParseSummary summary;
  summary.documents = bundles.size();
  for (std::size_t i = 0; i < bundles.size(); ++i) {
    const auto& o = outcomes[i];
    records[i] = {{"application_id", bundles[i].application.application_id},
                  {"sections", section_counts[i]},
                  {"failed", o.failed},
                  {"llm_calls", o.llm_calls},
                  {"errors", o.errors},
                  {"record", o.record}};
    if (section_counts[i] > 0) ++summary.with_112_sections;
    if (o.failed) {
      ++summary.failed;
      spdlog::warn("parse: extraction failed for {}: {}", bundles[i].application.application_id,
                   o.errors.empty() ? "" : o.errors.back());
    }
    summary.llm_calls += o.llm_calls;
  }
  fs::write_jsonl_atomic(run.path(kExtractions), records);
  spdlog::info("parse: {} documents, {} with 112 sections, {} failed, {} model calls", summary.documents,
               summary.with_112_sections, summary.failed, summary.llm_calls);
  if (summary.with_112_sections > 0 && summary.failed == summary.with_112_sections) {
    throw Error(ErrorKind::kExtraction,
                fmt::format("extraction failed for all {} office actions with 112 sections", summary.failed));
  }
  return summary;
}

// ---------------------------------------------------------------- build

BuildSummary run_build(const Run& run) {
  const auto& cfg = run.config();
  const auto bundles = load_bundles(run);
  std::map<std::string, oa::RawRejectionRecord> records;
  std::vector<std::string> failed;
  for (const auto& j : fs::read_jsonl(run.require(kExtractions, "parse"))) {
    const auto id = j.at("application_id").get<std::string>();
    if (j.at("failed").get<bool>()) {
      failed.push_back(id);
    } else {
      records[id] = j.at("record").get<oa::RawRejectionRecord>();
    }
  }

  BuildSummary summary;
  auto indefinite = dataset::collect_indefinite_claims(bundles, records, cfg.matching, &summary.warnings);
  if (indefinite.empty()) {
    throw Error(ErrorKind::kData, "no indefinite claims were extracted; nothing to build");
  }
  std::vector<std::string> exclude = failed;
  for (const auto& r : indefinite) exclude.push_back(r.application_id());
  const auto clean = dataset::select_clean_applications(bundles, exclude);
  const double avg = dataset::average_claims_per_application(indefinite);
  auto definite =
      dataset::sample_definite_claims(clean, indefinite.size(), avg, derive_seed(cfg.seed, "sampling"));

  summary.indefinite = indefinite.size();
  summary.definite = definite.size();
  std::vector<corpus::LabeledClaim> rows = std::move(indefinite);
  rows.insert(rows.end(), definite.begin(), definite.end());
  auto manifest = dataset::split_dataset(std::move(rows), cfg.dataset.fractions, derive_seed(cfg.seed, "split"));
  manifest.seed = cfg.seed;
  manifest.creation_config["average_claims_per_application"] = avg;
  manifest.creation_config["excluded_failed_extractions"] = failed;

  const auto violations = dataset::check_manifest(manifest, avg);
  if (!violations.empty()) {
    throw Error(ErrorKind::kData, "dataset invariants violated: " + violations.front());
  }

  std::set<std::string> used;
  for (const auto& r : manifest.rows) used.insert(r.application_id());
  std::vector<json> apps;
  for (const auto& b : bundles) {
    if (used.count(b.application.application_id)) apps.push_back(b.application);
  }
  summary.applications = apps.size();

  dataset::save_manifest(run.path(kManifest), manifest);
  fs::write_jsonl_atomic(run.path(kApplications), apps);
  const auto stats = dataset::compute_statistics(manifest);
  make_dirs(run.path("stats"));
  dataset::write_statistics(run.path("stats"), stats);

  json log = {{"indefinite", summary.indefinite},
              {"definite", summary.definite},
              {"applications", summary.applications},
              {"clean_applications", clean.size()},
              {"average_claims_per_application", avg},
              {"failed_extractions", failed},
              {"warnings", summary.warnings}};
  fs::write_file_atomic(run.path("build_log.json"), log.dump(2) + "\n");
  spdlog::info("build: {} indefinite + {} definite claims from {} applications ({} warnings)",
               summary.indefinite, summary.definite, summary.applications, summary.warnings.size());
  return summary;
}

// ---------------------------------------------------------------- train

TrainSummary run_train(const Run& run) {
  const auto& cfg = run.config();
  const auto manifest = load_dataset(run);
  const auto descriptions = features::index_descriptions(load_applications(run));
  const auto train_rows = rows_of(manifest, corpus::Split::kTrain);
  if (train_rows.empty()) throw Error(ErrorKind::kData, "the train split is empty");

  std::vector<int> y;
  for (const auto& r : train_rows) y.push_back(r.label ? 1 : 0);

  TrainSummary summary;
  make_dirs(run.path("models"));
  make_dirs(run.path("features"));
  for (auto set : cfg.features.sets) {
    const std::string name(features::to_string(set));
    auto extractor = features::FeatureExtractor::fit(set, manifest.rows, descriptions, cfg.features.linguistic,
                                                     cfg.features.max_features);
    const auto x = extractor.transform(train_rows, descriptions);
    const auto binary = classifiers::train_logistic(x, y, cfg.logistic, "binary");
    std::vector<std::string> warnings;
    const auto multilabel = classifiers::train_multilabel(x, train_rows, cfg.logistic, &warnings);
    for (auto& w : warnings) summary.warnings.push_back(name + ": " + w);

    json model = {{"feature_set", name},
                  {"extractor", extractor.to_json()},
                  {"binary", binary.model.to_json()},
                  {"multilabel", multilabel.to_json()},
                  {"epochs", binary.epochs},
                  {"loss_history", binary.loss_history},
                  {"warnings", warnings}};
    fs::write_file_atomic(run.path("models/" + name + ".json"), fs::dump_compact(model) + "\n");
    features::export_triplets(run.path("features"), name + ".train", x);

    // Binary-model weights by magnitude, for inspecting which features matter.
    std::vector<std::size_t> order(x.names.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    const auto& w = binary.model.weights;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return std::abs(w[a]) > std::abs(w[b]); });
    std::string weights = "feature\tweight\n";
    for (auto i : order) weights += fmt::format("{}\t{:.6f}\n", tsv_cell(x.names[i]), w[i]);
    fs::write_file_atomic(run.path("models/" + name + ".weights.tsv"), weights);

    summary.models.push_back("logreg-" + name);
    spdlog::info("train: logreg-{} on {} rows x {} features, {} epochs, loss {:.6f} -> {:.6f}", name,
                 train_rows.size(), x.dim(), binary.epochs, binary.loss_history.front(),
                 binary.loss_history.back());
  }
  return summary;
}

// ---------------------------------------------------------------- predict

std::vector<std::string> default_models(const PipelineConfig& config) {
  std::vector<std::string> out;
  for (auto set : config.features.sets) out.push_back("logreg-" + std::string(features::to_string(set)));
  const bool has_all = std::count(config.features.sets.begin(), config.features.sets.end(), features::FeatureSet::kAll);
  if (config.llm.gateway.models.count(config.agent.model_role)) {
    out.push_back("agent");
    if (has_all) out.push_back("ensemble");
  }
  out.push_back("random");
  return out;
}

PredictSummary run_predict(const Run& run, const std::vector<std::string>& requested,
                           const std::vector<corpus::Split>& requested_splits) {
  const auto& cfg = run.config();
  const auto manifest = load_dataset(run);
  std::vector<std::string> models = requested.empty() ? default_models(cfg) : requested;
  // Ensemble reads the agent and logreg-all outputs, so it goes last.
  std::stable_partition(models.begin(), models.end(), [](const std::string& m) { return m != "ensemble"; });
  std::vector<corpus::Split> splits = requested_splits;
  if (splits.empty()) splits = {corpus::Split::kTest, corpus::Split::kValidation};

  for (const auto& m : models) {
    if (m != "agent" && m != "ensemble" && m != "random" && m.rfind("logreg-", 0) != 0) {
      throw Error(ErrorKind::kInvalidArgument, "unknown model " + m);
    }
  }

  make_dirs(run.path("predictions"));
  PredictSummary summary;
  std::optional<std::vector<corpus::PatentApplication>> applications;
  std::optional<features::DescriptionIndex> descriptions;
  auto ensure_applications = [&] {
    if (!applications) {
      applications = load_applications(run);
      descriptions = features::index_descriptions(*applications);
    }
  };
  std::unique_ptr<llm::Gateway> gateway;

  for (const auto& model : models) {
    for (auto split : splits) {
      const auto rows = rows_of(manifest, split);
      std::vector<classifiers::ScoredClaim> scores;

      if (model == "random") {
        scores = evaluation::random_baseline(
            rows, derive_seed(cfg.seed, fmt::format("random:{}", corpus::to_string(split))));
      } else if (model.rfind("logreg-", 0) == 0) {
        const std::string set = model.substr(7);
        features::feature_set_from_string(set);
        const auto j = json::parse(fs::read_file(run.require("models/" + set + ".json", "train")));
        const auto extractor = features::FeatureExtractor::from_json(j.at("extractor"));
        const auto binary = classifiers::LogisticModel::from_json(j.at("binary"));
        const auto multilabel = classifiers::MultiLabelLogistic::from_json(j.at("multilabel"));
        ensure_applications();
        const auto x = extractor.transform(rows, *descriptions);
        for (std::size_t i = 0; i < rows.size(); ++i) {
          classifiers::ScoredClaim s;
          s.application_id = rows[i].application_id();
          s.claim_number = rows[i].claim.number;
          s.probability = classifiers::predict_proba(binary, x.rows[i]);
          s.categories = multilabel.predict(x.rows[i]);
          scores.push_back(s);
        }
      } else if (model == "agent") {
        ensure_applications();
        if (!gateway) gateway = make_gateway(run);
        std::map<std::string, const corpus::PatentApplication*> by_id;
        for (const auto& a : *applications) by_id[a.application_id] = &a;
        std::vector<classifiers::AgentPrediction> predictions(rows.size());
        parallel_for(rows.size(), static_cast<std::size_t>(cfg.llm.gateway.max_in_flight), [&](std::size_t i) {
          const auto it = by_id.find(rows[i].application_id());
          if (it == by_id.end()) {
            throw Error(ErrorKind::kData, "application " + rows[i].application_id() + " missing from " + kApplications);
          }
          predictions[i] = classifiers::run_agent(rows[i].claim, *it->second, *gateway, cfg.agent);
          predictions[i].application_id = rows[i].application_id();
          predictions[i].claim_number = rows[i].claim.number;
        });
        for (const auto& p : predictions) {
          if (p.failed) ++summary.failed_agent_predictions;
          scores.push_back(classifiers::score_of(p));
        }
        fs::write_jsonl_atomic(run.path(raw_agent_name(split)), to_records(predictions));
        summary.written.push_back(raw_agent_name(split));
      } else {
        const auto agent = from_records<classifiers::ScoredClaim>(
            run.require(scores_name("agent", split), "predict --model agent"));
        const auto logreg = from_records<classifiers::ScoredClaim>(
            run.require(scores_name("logreg-all", split), "predict --model logreg-all"));
        scores = classifiers::ensemble(agent, logreg);
      }

      fs::write_jsonl_atomic(run.path(scores_name(model, split)), to_records(scores));
      summary.written.push_back(scores_name(model, split));
      spdlog::info("predict: {} on {} ({} claims)", model, corpus::to_string(split), scores.size());
    }
  }
  if (gateway) {
    const auto st = gateway->stats();
    spdlog::info("predict: {} model completions, {} cache hits, {} requests", st.completions, st.cache_hits,
                 st.network_requests);
  }
  return summary;
}

// ---------------------------------------------------------------- judge

JudgeSummary run_judge_stage(const Run& run, corpus::Split split) {
  const auto& cfg = run.config();
  const auto manifest = load_dataset(run);
  const auto predictions = from_records<classifiers::AgentPrediction>(
      run.require(raw_agent_name(split), fmt::format("predict --model agent --split {}", corpus::to_string(split))));
  auto gateway = make_gateway(run);
  const auto judged = evaluation::run_judge(rows_of(manifest, split), predictions, *gateway, cfg.judge, cfg.judge_workers);
  make_dirs(run.path("judge"));
  evaluation::save_judge_run(run.path(judge_name(split)), judged);

  JudgeSummary summary;
  summary.claims = judged.claims.size();
  summary.pairs = judged.verdicts.size();
  for (const auto& v : judged.verdicts) summary.failed_pairs += v.verdict.failed ? 1 : 0;
  spdlog::info("judge: {} claims, {} pairs, {} failed", summary.claims, summary.pairs, summary.failed_pairs);
  return summary;
}

// ---------------------------------------------------------------- evaluate

EvaluateSummary run_evaluate(const Run& run) {
  const auto& cfg = run.config();
  const auto manifest = load_dataset(run);
  const auto test_rows = rows_of(manifest, corpus::Split::kTest);
  const auto val_rows = rows_of(manifest, corpus::Split::kValidation);

  std::set<std::string> names;
  const auto dir = run.path("predictions");
  if (stdfs::is_directory(dir)) {
    const std::string suffix = ".test.jsonl";
    for (const auto& entry : stdfs::directory_iterator(dir)) {
      const auto file = entry.path().filename().string();
      if (file.size() > suffix.size() && file.compare(file.size() - suffix.size(), suffix.size(), suffix) == 0) {
        names.insert(file.substr(0, file.size() - suffix.size()));
      }
    }
  }
  if (names.empty()) {
    throw Error(ErrorKind::kPrerequisite,
                fmt::format("no test predictions in {}; run `defexam predict` first", dir.string()));
  }

  std::vector<evaluation::ModelEvaluation> evaluations;
  for (const auto& name : names) {
    const auto test = from_records<classifiers::ScoredClaim>(run.path(scores_name(name, corpus::Split::kTest)));
    const auto val = from_records<classifiers::ScoredClaim>(
        run.require(scores_name(name, corpus::Split::kValidation), "predict --split validation"));
    auto ev = evaluation::evaluate_scores(name, test_rows, test, val_rows, val);

    const auto judge_path = run.path(judge_name(corpus::Split::kTest));
    if (name == "agent" && stdfs::exists(judge_path)) {
      const auto judged = evaluation::load_judge_run(judge_path);
      const auto per_claim = evaluation::replay_judge(judged, cfg.judge.threshold);
      std::size_t failed_pairs = 0;
      for (const auto& v : judged.verdicts) failed_pairs += v.verdict.failed ? 1 : 0;
      ev.judge = evaluation::aggregate_judge(per_claim, failed_pairs);

      // Reason confidence against the best similarity that reason reached.
      std::map<classifiers::ClaimKey, classifiers::AgentPrediction> raw;
      for (auto& p : from_records<classifiers::AgentPrediction>(run.path(raw_agent_name(corpus::Split::kTest)))) {
        raw[{p.application_id, p.claim_number}] = std::move(p);
      }
      std::vector<double> confidences, similarities;
      for (std::size_t c = 0; c < judged.claims.size(); ++c) {
        const auto& claim = judged.claims[c];
        const auto it = raw.find({claim.application_id, claim.claim_number});
        if (it == raw.end() || claim.n == 0) continue;
        const auto& maxima = per_claim[c].model_maxima;
        for (std::size_t j = 0; j < maxima.size() && j < it->second.reasons.size(); ++j) {
          confidences.push_back(it->second.reasons[j].confidence.probability);
          similarities.push_back(maxima[j]);
        }
      }
      if (ev.calibration) ev.calibration->pearson = evaluation::pearson(confidences, similarities);
    }
    evaluations.push_back(std::move(ev));
  }

  make_dirs(run.path("reports"));
  evaluation::write_reports(run.path("reports"), evaluations);
  EvaluateSummary summary;
  summary.models.assign(names.begin(), names.end());
  spdlog::info("evaluate: {} models -> {}", summary.models.size(), run.path("reports").string());
  return summary;
}

// ---------------------------------------------------------------- sample-audit

AuditSummary run_sample_audit(const Run& run, std::optional<corpus::Split> split,
                              std::optional<std::size_t> count) {
  const auto& cfg = run.config();
  const auto manifest = load_dataset(run);
  const auto bundles = load_bundles(run);
  std::map<std::string, const ingest::DocumentBundle*> by_id;
  for (const auto& b : bundles) by_id[b.application.application_id] = &b;

  std::vector<const corpus::LabeledClaim*> pool;
  for (const auto& r : manifest.rows) {
    if (!split || r.split == *split) pool.push_back(&r);
  }
  Rng rng(derive_seed(cfg.seed, "audit"));
  rng.shuffle(pool);
  pool.resize(std::min(pool.size(), count.value_or(cfg.audit_sample_size)));
  std::sort(pool.begin(), pool.end(), [](const auto* a, const auto* b) {
    return std::pair(a->application_id(), a->claim.number) < std::pair(b->application_id(), b->claim.number);
  });

  std::vector<json> records;
  std::string md = "# Audit sample\n";
  for (const auto* r : pool) {
    const auto it = by_id.find(r->application_id());
    std::vector<corpus::Section> sections;
    std::string mail_date;
    if (it != by_id.end()) {
      sections = oa::select_112_sections(it->second->first_office_action);
      mail_date = it->second->first_office_action.mail_date.iso();
    }
    records.push_back({{"row", *r}, {"office_action_mail_date", mail_date}, {"office_action_112_sections", sections}});

    md += fmt::format("\n## {} claim {} ({}, {})\n\n{}. {}\n", r->application_id(), r->claim.number,
                      r->label ? "indefinite" : "definite", corpus::to_string(r->split), r->claim.number,
                      r->claim.text);
    for (const auto& reason : r->reasons) {
      md += fmt::format("\n- [{}] {}\n", corpus::id(reason.category), reason.judge_text());
    }
    md += fmt::format("\nOffice action ({}):\n\n{}\n", mail_date.empty() ? "not available" : mail_date,
                      sections.empty() ? "(no 112 sections)" : oa::render_sections(sections));
  }
  make_dirs(run.path("audit"));
  fs::write_jsonl_atomic(run.path("audit/sample.jsonl"), records);
  fs::write_file_atomic(run.path("audit/sample.md"), md);
  spdlog::info("sample-audit: {} rows", records.size());
  return {records.size()};
}

}  // namespace defexam::pipeline
