// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "defexam/common/date.hpp"
#include "defexam/ingest/portal.hpp"
#include "defexam/oa/extraction.hpp"

// Synthetic patent applications with office actions, for tests that need a
// corpus without network access.

namespace defexam::testing {

struct FixtureReason {
  std::vector<oa::ClaimRef> claims;  // as the extraction model would write them
  std::string category;              // category id; may be parse-only
  std::string reason_text;
  std::optional<std::string> context;
  std::vector<std::string> recitations;  // as quoted by the examiner (may carry quote noise)
};

enum class Defect { kNone, kNoOfficeAction, kFiledBeforeFloor, kNoXmlRendition, kMalformedClaims };

struct FixtureApplication {
  std::string id;
  Date filing_date;
  std::vector<std::string> cpc_codes;
  std::vector<std::string> claim_texts;  // claim i + 1
  std::vector<std::string> paragraphs;
  Date office_action_date;
  bool rejected_112b = false;   // the office action holds a 112(b) rejection
  bool has_112_section = false; // some section heading mentions 112
  std::vector<FixtureReason> reasons;
  Defect defect = Defect::kNone;
  // Schema-violating extraction replies the scripted model sends before the
  // valid one.
  int invalid_extraction_replies = 0;

  std::string office_action_xml() const;
  std::string claims_xml() const;
  std::string specification_xml() const;
  /// Extraction reply in the wire format (rejectedClaims, rejectionReasons).
  nlohmann::json extraction_reply() const;
};

struct FixtureOptions {
  std::size_t applications = 12;
  std::uint64_t seed = 1;
  double rejected_fraction = 0.45;
  std::size_t defects = 0;  // applications that must be skipped during fetch
};

std::vector<FixtureApplication> make_fixture(const FixtureOptions& options);

/// Bundles built from the fixture XML with the production converters, as
/// fetch would produce them. Defective applications are left out.
std::vector<ingest::DocumentBundle> fixture_bundles(const std::vector<FixtureApplication>& apps);

/// Extraction records keyed by application id, parsed from the fixture replies.
std::map<std::string, oa::RawRejectionRecord> fixture_records(
    const std::vector<FixtureApplication>& apps);

/// The extraction user message for each application whose office action has
/// a 112 section, mapped to the application.
std::map<std::string, const FixtureApplication*> extraction_messages(
    const std::vector<FixtureApplication>& apps);

/// Empty directory under the system temp dir, removed first if present.
std::filesystem::path fresh_temp_dir(const std::string& name);

/// Phrases that the fixture plants in indefinite claims.
const std::vector<std::string>& planted_markers();

}  // namespace defexam::testing
