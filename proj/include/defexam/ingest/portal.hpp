// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "defexam/common/date.hpp"
#include "defexam/common/http.hpp"
#include "defexam/common/retry.hpp"
#include "defexam/corpus/types.hpp"

namespace defexam::ingest {

struct DocumentBundle {
  corpus::PatentApplication application;
  corpus::OfficeActionDocument first_office_action;
  Date claims_doc_date;
  Date spec_doc_date;
};

void to_json(nlohmann::json& j, const DocumentBundle& bundle);
void from_json(const nlohmann::json& j, DocumentBundle& bundle);

/// An application excluded during ingestion, with the reason.
struct SkipRecord {
  std::string application_id;
  std::string reason;
};

void to_json(nlohmann::json& j, const SkipRecord& skip);
void from_json(const nlohmann::json& j, SkipRecord& skip);

struct FetchOutcome {
  std::optional<DocumentBundle> bundle;
  std::optional<SkipRecord> skip;
};

/// One entry of an application's document list.
struct PortalDocument {
  std::string document_id;
  std::string code;  // e.g. CTNF, CTFR, CLM, SPEC
  Date official_date;
  std::string xml_url;  // empty when no XML rendition exists
};

struct PortalConfig {
  std::string base_url = "https://api.uspto.gov";
  std::string api_key_env = "USPTO_API_KEY";
  std::string api_key_header = "X-API-KEY";
  std::string search_path = "/api/v1/patent/applications/search";
  std::string application_path = "/api/v1/patent/applications/";  // + id + suffix
  std::string metadata_suffix = "/meta-data";
  std::string documents_suffix = "/documents";
  std::set<std::string> office_action_codes = {"CTNF", "CTFR"};
  std::string claims_code = "CLM";
  std::string spec_code = "SPEC";
  Date min_filing_date{2014, 1, 1};
  int page_size = 100;
  int max_concurrency = 4;
  RetryPolicy retry;
  std::filesystem::path cache_dir;  // required for fetch_document_bundle
};

/// Client for the patent file-wrapper API: seed search and first-office-action
/// bundle download with an on-disk cache (one directory per application).
class PortalClient {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  PortalClient(PortalConfig config, std::shared_ptr<HttpTransport> transport,
               Sleeper sleeper = nullptr);

  /// Application ids whose CPC codes start with `cpc_prefix`, filed on or
  /// after `min_filing_date`, and (if requested) holding at least one
  /// rejection document. Sorted by id. The result is cached per query, so
  /// a rerun sees the same seed set.
  std::vector<std::string> search_seed_applications(const std::string& cpc_prefix,
                                                    const Date& min_filing_date,
                                                    bool require_rejection);

  /// Bundle of the chronologically first office action and the latest claims
  /// and specification documents on or before its mail date. Served from the
  /// cache when present. Missing or malformed documents yield a skip record;
  /// transport failures after retries throw NetworkError.
  FetchOutcome fetch_document_bundle(const std::string& application_id);

  /// fetch_document_bundle over many ids, up to max_concurrency at a time.
  /// Results are in input order.
  std::vector<FetchOutcome> fetch_document_bundles(const std::vector<std::string>& ids);

  std::vector<PortalDocument> list_documents(const std::string& application_id);

  long request_count() const { return requests_.load(); }

 private:
  nlohmann::json get_json(const std::string& target);
  std::string get_text(const std::string& target);
  std::string to_target(const std::string& url) const;
  FetchOutcome download_bundle(const std::string& application_id);
  std::vector<std::string> search_uncached(const std::string& query, const std::string& cpc_prefix,
                                           const Date& min_filing_date, bool require_rejection);

  PortalConfig config_;
  std::shared_ptr<HttpTransport> transport_;
  Sleeper sleeper_;
  std::string api_key_;
  std::atomic<long> requests_{0};
};

/// Chronologically first office action; ties go to the smaller document id.
std::optional<PortalDocument> select_first_office_action(const std::vector<PortalDocument>& docs,
                                                         const std::set<std::string>& oa_codes);

/// Latest document with `code` dated on or before `cutoff`; ties go to the
/// larger document id.
std::optional<PortalDocument> select_latest_before(const std::vector<PortalDocument>& docs,
                                                   const std::string& code, const Date& cutoff);

/// Appends skip records to a line-delimited log.
void append_skip_log(const std::filesystem::path& path, const std::vector<SkipRecord>& skips);

}  // namespace defexam::ingest
