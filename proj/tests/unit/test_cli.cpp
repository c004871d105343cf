// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <memory>
#include <string>

#include <gtest/gtest.h>

#include "defexam/common/error.hpp"
#include "defexam/common/fs.hpp"
#include "fixture.hpp"
#include "mocks.hpp"

namespace defexam {
namespace {

using nlohmann::json;
namespace stdfs = std::filesystem;

int cli(const std::string& args) {
  const std::string command = std::string(DEFEXAM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

struct World {
  explicit World(std::size_t applications = 24)
      : apps(std::make_shared<std::vector<testing::FixtureApplication>>(
            testing::make_fixture({.applications = applications, .seed = 13, .rejected_fraction = 0.3}))),
        base(std::make_shared<std::string>()),
        portal(testing::portal_handler(apps, base)),
        llm(testing::llm_handler(testing::ScriptedModel(apps))) {
    *base = portal.url();
  }

  std::shared_ptr<std::vector<testing::FixtureApplication>> apps;
  std::shared_ptr<std::string> base;
  testing::MockHttpServer portal;
  testing::MockHttpServer llm;
};

stdfs::path write_config(const stdfs::path& dir, const json& config) {
  const auto path = dir / "config.input.json";
  fs::write_file_atomic(path, config.dump(2));
  return path;
}

TEST(Cli, FullPipelineSucceeds) {
  World world;
  const auto dir = testing::fresh_temp_dir("cli_full");
  const auto config = write_config(dir, testing::mock_pipeline_config(world.portal.url(), world.llm.url()));
  const std::string common = "-c " + config.string() + " -r " + (dir / "run").string() + " -q ";
  for (const char* stage : {"fetch", "parse", "build", "train", "predict", "judge", "evaluate", "sample-audit -n 3"}) {
    ASSERT_EQ(cli(common + stage), 0) << stage;
  }
  EXPECT_TRUE(stdfs::exists(dir / "run" / "reports" / "summary.md"));
  EXPECT_TRUE(stdfs::exists(dir / "run" / "audit" / "sample.jsonl"));
  EXPECT_EQ(fs::read_jsonl(dir / "run" / "audit" / "sample.jsonl").size(), 3u);
  EXPECT_EQ(cli(common + "predict -m agent --split test"), 0);
  EXPECT_EQ(cli(common + "--model-role agent=other predict -m random"), 0);
}

TEST(Cli, ConfigErrorsExitTwo) {
  const auto dir = testing::fresh_temp_dir("cli_config");
  auto bad = testing::mock_pipeline_config("http://127.0.0.1:1", "http://127.0.0.1:1");
  bad["unexpected"] = true;
  EXPECT_EQ(cli("-c " + write_config(dir, bad).string() + " -r " + (dir / "run").string() + " fetch"),
            exit_code(ErrorKind::kConfig));
  EXPECT_EQ(exit_code(ErrorKind::kConfig), 2);
  EXPECT_EQ(cli("-c " + (dir / "absent.json").string() + " -r " + (dir / "run").string() + " fetch"), 2);
  EXPECT_EQ(cli("-r " + (dir / "run").string() + " --model-role agent fetch"), 2);
}

TEST(Cli, MissingArtifactsExitThree) {
  const auto dir = testing::fresh_temp_dir("cli_prereq");
  EXPECT_EQ(cli("-r " + (dir / "run").string() + " parse"), 3);
  EXPECT_EQ(cli("-r " + (dir / "run").string() + " evaluate"), 3);
}

TEST(Cli, UnreachablePortalExitsFour) {
  const auto dir = testing::fresh_temp_dir("cli_network");
  auto config = testing::mock_pipeline_config("http://127.0.0.1:9", "http://127.0.0.1:9");
  config["retry"]["max_attempts"] = 1;
  EXPECT_EQ(cli("-c " + write_config(dir, config).string() + " -r " + (dir / "run").string() + " fetch"), 4);
}

TEST(Cli, FailedExtractionEverywhereExitsFive) {
  World world(10);
  testing::MockHttpServer broken_llm(
      testing::llm_handler([](const json&) { return testing::completion("I cannot produce JSON."); }));
  const auto dir = testing::fresh_temp_dir("cli_extraction");
  const auto config = write_config(dir, testing::mock_pipeline_config(world.portal.url(), broken_llm.url()));
  const std::string common = "-c " + config.string() + " -r " + (dir / "run").string() + " ";
  ASSERT_EQ(cli(common + "fetch"), 0);
  EXPECT_EQ(cli(common + "parse"), 5);
  EXPECT_TRUE(stdfs::exists(dir / "run" / "extractions.jsonl"));
}

TEST(Cli, BadArgumentsExitEight) {
  const auto dir = testing::fresh_temp_dir("cli_args");
  EXPECT_EQ(cli("fetch"), 8);  // --run-dir is required
  EXPECT_EQ(cli("-r " + (dir / "run").string()), 8);
  EXPECT_EQ(cli("-r " + (dir / "run").string() + " no-such-command"), 8);
  EXPECT_EQ(cli("-r " + (dir / "run").string() + " --split sometimes judge"), 8);
  EXPECT_EQ(cli("--help"), 0);
}

}  // namespace
}  // namespace defexam
