// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0

// defexam: staged pipeline from patent office actions to evaluation reports.

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "defexam/common/error.hpp"
#include "defexam/common/fs.hpp"
#include "defexam/pipeline/config.hpp"
#include "defexam/pipeline/stages.hpp"

namespace {

using defexam::Error;
using defexam::ErrorKind;
namespace pipeline = defexam::pipeline;
namespace corpus = defexam::corpus;

struct Options {
  std::string config_path;
  std::string run_dir;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> splits;
  std::vector<std::string> model_roles;
  std::vector<std::string> models;
  std::optional<std::size_t> count;
  bool verbose = false;
  bool quiet = false;
};

std::vector<corpus::Split> parse_splits(const std::vector<std::string>& names) {
  std::vector<corpus::Split> out;
  for (const auto& n : names) {
    auto s = corpus::split_from_string(n);
    if (!s) throw Error(ErrorKind::kInvalidArgument, "unknown split " + n);
    out.push_back(*s);
  }
  return out;
}

corpus::Split single_split(const Options& o, corpus::Split fallback) {
  const auto splits = parse_splits(o.splits);
  if (splits.size() > 1) throw Error(ErrorKind::kInvalidArgument, "this command takes one --split");
  return splits.empty() ? fallback : splits.front();
}

pipeline::Run open_run(const Options& o) {
  pipeline::PipelineConfig config;
  if (!o.config_path.empty()) config = pipeline::PipelineConfig::load(o.config_path);
  if (o.seed) config.seed = *o.seed;
  config.apply_model_roles(o.model_roles);
  config.validate();
  pipeline::Run run(config, o.run_dir);
  defexam::fs::write_file_atomic(run.path("config.json"), config.to_json().dump(2) + "\n");
  return run;
}

int run_command(const std::string& command, const Options& o) {
  const auto run = open_run(o);
  if (command == "fetch") {
    pipeline::run_fetch(run);
  } else if (command == "parse") {
    pipeline::run_parse(run);
  } else if (command == "build") {
    pipeline::run_build(run);
  } else if (command == "train") {
    pipeline::run_train(run);
  } else if (command == "predict") {
    const auto s = pipeline::run_predict(run, o.models, parse_splits(o.splits));
    if (s.failed_agent_predictions > 0) {
      spdlog::warn("predict: {} agent predictions failed and count as definite", s.failed_agent_predictions);
    }
  } else if (command == "judge") {
    pipeline::run_judge_stage(run, single_split(o, corpus::Split::kTest));
  } else if (command == "evaluate") {
    pipeline::run_evaluate(run);
  } else if (command == "sample-audit") {
    const auto splits = parse_splits(o.splits);
    if (splits.size() > 1) throw Error(ErrorKind::kInvalidArgument, "sample-audit takes one --split");
    pipeline::run_sample_audit(run, splits.empty() ? std::nullopt : std::optional(splits.front()), o.count);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  auto logger = spdlog::stderr_color_mt("defexam");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("%^%l%$: %v");

  Options o;
  CLI::App app{"defexam: claim indefiniteness dataset, classifiers and evaluation"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("-c,--config", o.config_path, "pipeline config (JSON); defaults apply when omitted");
  app.add_option("-r,--run-dir", o.run_dir, "run directory holding every artifact")->required();
  app.add_option("--seed", o.seed, "override the config seed");
  app.add_option("--model-role", o.model_roles, "role=model override, e.g. agent=gpt-4o (repeatable)");
  app.add_option("--split", o.splits, "train, test or validation (predict accepts several)");
  app.add_flag("-v,--verbose", o.verbose, "debug logging");
  app.add_flag("-q,--quiet", o.quiet, "warnings and errors only");

  app.add_subcommand("fetch", "search seed applications and download office-action bundles");
  app.add_subcommand("parse", "extract rejections from the 112 sections of each office action");
  app.add_subcommand("build", "sample definite claims, split, and write statistics");
  app.add_subcommand("train", "fit features and logistic regression models on the train split");
  auto* predict = app.add_subcommand("predict", "score a split with logreg, agent, ensemble or random");
  predict->add_option("-m,--model", o.models,
                      "logreg-linguistic, logreg-tfidf, logreg-all, agent, ensemble, random (repeatable)");
  app.add_subcommand("judge", "grade agent reasons against examiner reasons");
  app.add_subcommand("evaluate", "metrics, judge aggregates and calibration reports");
  auto* audit = app.add_subcommand("sample-audit", "seeded sample of rows with office-action text");
  audit->add_option("-n,--count", o.count, "rows to sample");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : defexam::exit_code(ErrorKind::kInvalidArgument);
  }
  spdlog::set_level(o.verbose ? spdlog::level::debug : o.quiet ? spdlog::level::warn : spdlog::level::info);

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run_command(command, o);
  } catch (const Error& e) {
    spdlog::error("{} ({} error)", e.what(), defexam::to_string(e.kind()));
    return defexam::exit_code(e.kind());
  } catch (const nlohmann::json::exception& e) {
    spdlog::error("malformed artifact: {}", e.what());
    return defexam::exit_code(ErrorKind::kData);
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
}
