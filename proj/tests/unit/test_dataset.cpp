// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "defexam/common/error.hpp"
#include "defexam/common/random.hpp"
#include "defexam/dataset/builder.hpp"
#include "defexam/dataset/statistics.hpp"
#include "fixture.hpp"
#include "oracles.hpp"

namespace defexam::dataset {
namespace {

using corpus::LabeledClaim;
using corpus::Split;

corpus::PatentApplication app(const std::string& id, int claims) {
  corpus::PatentApplication a;
  a.application_id = id;
  a.filing_date = {2016, 2, 3};
  for (int i = 1; i <= claims; ++i) {
    a.claims.push_back({i, "A claim number " + std::to_string(i) + ".", {}, id});
  }
  return a;
}

LabeledClaim row(const std::string& id, int number, bool label, Split split = Split::kTrain) {
  LabeledClaim r;
  r.claim = {number, "The system of claim 1, wherein it works.", {1}, id};
  if (number == 1) r.claim.parent_numbers.clear();
  r.label = label;
  r.split = split;
  if (label) {
    corpus::RejectionReason reason;
    reason.reason_text = "indefinite";
    reason.claims = {number};
    reason.category = corpus::Category::kRelativeTerm;
    r.reasons = {reason};
  }
  return r;
}

TEST(Collect, EmptyInput) { EXPECT_TRUE(collect_indefinite_claims({}, {}).empty()); }

TEST(Collect, SortedAcrossApplications) {
  std::vector<ingest::DocumentBundle> bundles(2);
  std::map<std::string, oa::RawRejectionRecord> records;
  for (int k = 0; k < 2; ++k) {
    const std::string id = k == 0 ? "16000002" : "16000001";
    bundles[k].application = app(id, 5);
    oa::RawRejectionRecord r;
    r.rejection_reasons.push_back({"Relative term.", std::nullopt, {5, 1, std::string("3-3")}, "relative_term", {}});
    records[id] = r;
  }
  const auto rows = collect_indefinite_claims(bundles, records);
  ASSERT_EQ(rows.size(), 6u);
  std::vector<std::pair<std::string, int>> keys;
  for (const auto& r : rows) keys.emplace_back(r.application_id(), r.claim.number);
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
  EXPECT_EQ(keys.front(), (std::pair<std::string, int>{"16000001", 1}));
  EXPECT_EQ(keys.back(), (std::pair<std::string, int>{"16000002", 5}));
}

TEST(Clean, ExcludesOfficeActionsMentioning112b) {
  const auto apps = testing::make_fixture({.applications = 30, .seed = 21});
  const auto bundles = testing::fixture_bundles(apps);
  const auto clean = select_clean_applications(bundles, {apps[0].id});
  std::set<std::string> clean_ids;
  for (const auto& a : clean) clean_ids.insert(a.application_id);
  for (const auto& b : bundles) {
    const bool mentions = b.first_office_action.full_text.find("112(b)") != std::string::npos;
    const bool excluded = b.application.application_id == apps[0].id;
    EXPECT_EQ(clean_ids.count(b.application.application_id) == 1, !mentions && !excluded);
  }
  EXPECT_TRUE(std::is_sorted(clean.begin(), clean.end(),
                             [](const auto& a, const auto& b) { return a.application_id < b.application_id; }));
}

TEST(Sampling, ZeroTarget) { EXPECT_TRUE(sample_definite_claims({app("1", 3)}, 0, 2.0, 1).empty()); }

// Rows come back sorted; recover the per-application draw sizes in the order
// the sampler visited applications (sorted ids shuffled with the seed).
std::vector<std::size_t> draws_in_visit_order(const std::vector<LabeledClaim>& rows,
                                              const std::vector<corpus::PatentApplication>& apps,
                                              std::uint64_t seed) {
  std::vector<std::string> ids;
  for (const auto& a : apps) ids.push_back(a.application_id);
  std::sort(ids.begin(), ids.end());
  Rng rng(seed);
  rng.shuffle(ids);
  std::map<std::string, std::size_t> per_app;
  for (const auto& r : rows) per_app[r.application_id()]++;
  std::vector<std::size_t> draws;
  for (const auto& id : ids) {
    if (per_app.count(id)) draws.push_back(per_app[id]);
  }
  return draws;
}

TEST(Sampling, AlternatesToTrackAverage) {
  std::vector<corpus::PatentApplication> apps;
  for (int i = 0; i < 4; ++i) apps.push_back(app("app" + std::to_string(i), 10));
  const auto rows = sample_definite_claims(apps, 10, 2.5, 42);
  ASSERT_EQ(rows.size(), 10u);
  EXPECT_EQ(draws_in_visit_order(rows, apps, 42), testing::oracle::sampling_draws(2.5, 10));
  EXPECT_EQ(draws_in_visit_order(rows, apps, 42), (std::vector<std::size_t>{2, 3, 2, 3}));
  std::set<std::pair<std::string, int>> unique;
  for (const auto& r : rows) {
    EXPECT_FALSE(r.label);
    EXPECT_TRUE(r.reasons.empty());
    unique.emplace(r.application_id(), r.claim.number);
  }
  EXPECT_EQ(unique.size(), rows.size());
}

TEST(Sampling, MatchesReferenceSimulation) {
  Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    const double avg = 1.0 + 4.0 * rng.uniform01();
    const std::size_t target = 1 + rng.below(60);
    std::vector<corpus::PatentApplication> apps;
    for (int i = 0; i < 70; ++i) apps.push_back(app("a" + std::to_string(1000 + i), 10));
    const auto seed = rng.next();
    const auto rows = sample_definite_claims(apps, target, avg, seed);
    EXPECT_EQ(rows.size(), target);
    EXPECT_EQ(draws_in_visit_order(rows, apps, seed), testing::oracle::sampling_draws(avg, target))
        << avg << " " << target;
  }
}

TEST(Sampling, SeededAndShortfall) {
  std::vector<corpus::PatentApplication> apps;
  for (int i = 0; i < 6; ++i) apps.push_back(app("s" + std::to_string(i), 4));
  EXPECT_EQ(sample_definite_claims(apps, 9, 1.5, 3), sample_definite_claims(apps, 9, 1.5, 3));
  EXPECT_NE(sample_definite_claims(apps, 9, 1.5, 3), sample_definite_claims(apps, 9, 1.5, 4));
  try {
    sample_definite_claims(apps, 25, 2.0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kData);
    EXPECT_NE(std::string(e.what()).find("shortfall 1"), std::string::npos);
  }
}

std::vector<LabeledClaim> rows_for_apps(int n_apps, int claims_each = 2) {
  std::vector<LabeledClaim> rows;
  for (int a = 0; a < n_apps; ++a) {
    for (int c = 1; c <= claims_each; ++c) rows.push_back(row("app" + std::to_string(100 + a), c, a % 2 == 0));
  }
  return rows;
}

std::map<std::string, Split> app_splits(const DatasetManifest& m) {
  std::map<std::string, Split> out;
  for (const auto& r : m.rows) {
    auto [it, inserted] = out.emplace(r.application_id(), r.split);
    EXPECT_EQ(it->second, r.split) << r.application_id();
  }
  return out;
}

TEST(Split, TenApplicationsSixThreeOne) {
  const auto m = split_dataset(rows_for_apps(10), {0.6, 0.3, 0.1}, 5);
  std::map<Split, int> apps;
  for (const auto& [id, s] : app_splits(m)) apps[s]++;
  EXPECT_EQ(apps[Split::kTrain], 6);
  EXPECT_EQ(apps[Split::kTest], 3);
  EXPECT_EQ(apps[Split::kValidation], 1);
  EXPECT_EQ(m.seed, 5u);
  EXPECT_EQ(m.split_counts().at(Split::kTrain).applications, 6u);
}

TEST(Split, DeterministicAndLeakFree) {
  const auto rows = rows_for_apps(40, 3);
  const auto a = split_dataset(rows, {0.6, 0.3, 0.1}, 11);
  const auto b = split_dataset(rows, {0.6, 0.3, 0.1}, 11);
  const auto c = split_dataset(rows, {0.6, 0.3, 0.1}, 12);
  EXPECT_EQ(a.rows, b.rows);
  EXPECT_NE(app_splits(a), app_splits(c));
  EXPECT_TRUE(check_manifest(a, 3).empty());
  EXPECT_TRUE(check_manifest(c, 3).empty());
}

TEST(Split, ExactFractionsUpToRounding) {
  for (int n = 3; n <= 60; ++n) {
    const auto m = split_dataset(rows_for_apps(n, 1), {0.6, 0.3, 0.1}, static_cast<std::uint64_t>(n));
    std::map<Split, int> apps;
    for (const auto& [id, s] : app_splits(m)) apps[s]++;
    EXPECT_LE(std::abs(apps[Split::kTrain] - 0.6 * n), 1.0) << n;
    EXPECT_LE(std::abs(apps[Split::kTest] - 0.3 * n), 1.0) << n;
    EXPECT_LE(std::abs(apps[Split::kValidation] - 0.1 * n), 1.0) << n;
  }
}

TEST(Split, TooFewApplications) { EXPECT_THROW(split_dataset(rows_for_apps(2), {0.6, 0.3, 0.1}, 1), Error); }

TEST(Manifest, CheckFindsViolations) {
  DatasetManifest m;
  m.rows = {row("a", 1, true, Split::kTrain), row("a", 2, false, Split::kTest), row("b", 1, false, Split::kTrain)};
  m.rows[2].reasons = m.rows[0].reasons;
  const auto problems = check_manifest(m, 5);
  EXPECT_GE(problems.size(), 2u);
  DatasetManifest imbalanced;
  imbalanced.rows = {row("a", 1, true), row("a", 2, true), row("a", 3, true), row("b", 1, false)};
  EXPECT_FALSE(check_manifest(imbalanced, 1).empty());
  EXPECT_TRUE(check_manifest(imbalanced, 2).empty());
}

TEST(Manifest, SaveLoadRoundTrip) {
  auto m = split_dataset(rows_for_apps(9), {0.6, 0.3, 0.1}, 3);
  m.creation_config = {{"note", "x"}};
  const auto dir = testing::fresh_temp_dir("manifest");
  save_manifest(dir / "m.jsonl", m);
  const auto back = load_manifest(dir / "m.jsonl");
  EXPECT_EQ(back.rows, m.rows);
  EXPECT_EQ(back.seed, m.seed);
  EXPECT_EQ(back.creation_config, m.creation_config);
}

TEST(Statistics, SingleDefiniteClaim) {
  DatasetManifest m;
  m.rows = {row("a", 1, false)};
  const auto stats = compute_statistics(m);
  EXPECT_EQ(stats.find("claims", "indefinite")->counts[0], 0u);
  EXPECT_DOUBLE_EQ(stats.find("claims", "indefinite")->percents[0], 0.0);
  for (const auto& cell : stats.characteristics) {
    if (cell.indefinite) {
      EXPECT_EQ(cell.count, 0u);
      EXPECT_FALSE(cell.characters);
      EXPECT_FALSE(cell.words);
    }
  }
  EXPECT_THROW(compute_statistics(DatasetManifest{}), Error);
}

TEST(Statistics, HandComputedMeans) {
  DatasetManifest m;
  m.rows = {row("a", 1, true), row("a", 2, true), row("b", 1, false), row("b", 2, false)};
  m.rows[0].claim.text = "A bus; a processor.";                  // 19 chars, 4 words, 2 segments
  m.rows[1].claim.text = "The bus of claim 1, wherein fast.";    // 33 chars, 7 words, 2 segments
  m.rows[1].claim.parent_numbers = {1};
  m.rows[2].claim.text = "A memory.";                            // 9 chars, 2 words, 1 segment
  m.rows[3].claim.text = "The memory of claims 1 or 2.";         // 28 chars, 6 words, 1 segment
  m.rows[3].claim.parent_numbers = {1, 2};
  const auto stats = compute_statistics(m);
  auto cell = [&](bool indefinite, const std::string& independence) {
    for (const auto& c : stats.characteristics) {
      if (c.indefinite == indefinite && c.independence == independence) return c;
    }
    ADD_FAILURE() << independence;
    return CharacteristicCell{};
  };
  EXPECT_DOUBLE_EQ(*cell(true, "all").characters, (19 + 33) / 2.0);
  EXPECT_DOUBLE_EQ(*cell(true, "all").words, (4 + 7) / 2.0);
  EXPECT_DOUBLE_EQ(*cell(true, "all").features, 2.0);
  EXPECT_DOUBLE_EQ(*cell(true, "all").parents, 0.5);
  EXPECT_DOUBLE_EQ(*cell(false, "all").characters, (9 + 28) / 2.0);
  EXPECT_DOUBLE_EQ(*cell(false, "dependent").parents, 2.0);
  EXPECT_DOUBLE_EQ(*cell(false, "independent").words, 2.0);
  EXPECT_DOUBLE_EQ(cell(true, "all").percent_samples, 50.0);
  EXPECT_DOUBLE_EQ(cell(true, "independent").percent_samples, 25.0);
  EXPECT_DOUBLE_EQ(stats.find("claims", "indefinite")->percents[0], 50.0);
  EXPECT_EQ(stats.find("reasons", "relative_term")->counts[0], 2u);
  EXPECT_EQ(stats.find("applications", "indefinite")->counts[0], 1u);
}

TEST(Statistics, PercentagesRecomputeFromCounts) {
  auto m = split_dataset(rows_for_apps(25, 3), {0.6, 0.3, 0.1}, 9);
  const auto stats = compute_statistics(m);
  for (const auto& r : stats.split_rows) {
    const auto* total = stats.find(r.section, "total");
    ASSERT_NE(total, nullptr);
    for (std::size_t c = 0; c < 4; ++c) {
      const double expected = &r == total ? (total->counts[0] ? 100.0 * r.counts[c] / total->counts[0] : 0.0)
                                          : (total->counts[c] ? 100.0 * r.counts[c] / total->counts[c] : 0.0);
      EXPECT_NEAR(r.percents[c], expected, 0.01) << r.section << "/" << r.row << " col " << c;
    }
  }
  const auto dir = testing::fresh_temp_dir("stats");
  write_statistics(dir, stats);
  for (const char* f : {"dataset_splits.tsv", "claim_characteristics.tsv", "filing_years.tsv"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
  }
}

TEST(Statistics, YearCounts) {
  DatasetManifest m;
  m.rows = {row("a", 1, true), row("b", 1, false), row("c", 1, false)};
  m.rows[0].filing_date = Date{2015, 1, 1};
  m.rows[1].filing_date = Date{2015, 6, 1};
  m.rows[2].filing_date = std::nullopt;
  const auto stats = compute_statistics(m);
  ASSERT_EQ(stats.years.size(), 1u);
  EXPECT_EQ(stats.years[0].year, 2015);
  EXPECT_DOUBLE_EQ(stats.years[0].indefinite_fraction(), 0.5);
  EXPECT_EQ(stats.rows_without_filing_date, 1u);
}

}  // namespace
}  // namespace defexam::dataset
