// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#include "defexam/ingest/portal.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <thread>

#include <spdlog/spdlog.h>

#include "defexam/common/error.hpp"
#include "defexam/common/fs.hpp"
#include "defexam/common/hashing.hpp"
#include "defexam/common/parallel.hpp"
#include "defexam/corpus/serialization.hpp"
#include "defexam/ingest/convert.hpp"

namespace defexam::ingest {

using nlohmann::json;

void to_json(json& j, const DocumentBundle& bundle) {
  j = {{"application", bundle.application},
       {"first_office_action", bundle.first_office_action},
       {"claims_doc_date", bundle.claims_doc_date},
       {"spec_doc_date", bundle.spec_doc_date}};
}

void from_json(const json& j, DocumentBundle& bundle) {
  bundle.application = j.at("application").get<corpus::PatentApplication>();
  bundle.first_office_action = j.at("first_office_action").get<corpus::OfficeActionDocument>();
  bundle.claims_doc_date = j.at("claims_doc_date").get<Date>();
  bundle.spec_doc_date = j.at("spec_doc_date").get<Date>();
}

void to_json(json& j, const SkipRecord& skip) {
  j = {{"application_id", skip.application_id}, {"reason", skip.reason}};
}

void from_json(const json& j, SkipRecord& skip) {
  skip.application_id = j.at("application_id").get<std::string>();
  skip.reason = j.at("reason").get<std::string>();
}

std::optional<PortalDocument> select_first_office_action(const std::vector<PortalDocument>& docs,
                                                         const std::set<std::string>& oa_codes) {
  std::optional<PortalDocument> best;
  for (const auto& d : docs) {
    if (!oa_codes.count(d.code)) continue;
    if (!best || d.official_date < best->official_date ||
        (d.official_date == best->official_date && d.document_id < best->document_id)) {
      best = d;
    }
  }
  return best;
}

std::optional<PortalDocument> select_latest_before(const std::vector<PortalDocument>& docs,
                                                   const std::string& code, const Date& cutoff) {
  std::optional<PortalDocument> best;
  for (const auto& d : docs) {
    if (d.code != code || cutoff < d.official_date) continue;
    if (!best || best->official_date < d.official_date ||
        (d.official_date == best->official_date && best->document_id < d.document_id)) {
      best = d;
    }
  }
  return best;
}

void append_skip_log(const std::filesystem::path& path, const std::vector<SkipRecord>& skips) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::app);
  for (const auto& s : skips) out << fs::dump_compact(json(s)) << '\n';
}

PortalClient::PortalClient(PortalConfig config, std::shared_ptr<HttpTransport> transport,
                           Sleeper sleeper)
    : config_(std::move(config)), transport_(std::move(transport)), sleeper_(std::move(sleeper)) {
  if (!sleeper_) sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  if (!config_.api_key_env.empty()) {
    if (const char* key = std::getenv(config_.api_key_env.c_str())) api_key_ = key;
  }
}

std::string PortalClient::get_text(const std::string& target) {
  HttpHeaders headers;
  if (!api_key_.empty()) headers.emplace_back(config_.api_key_header, api_key_);
  HttpResponse response;
  for (int attempt = 1; attempt <= config_.retry.max_attempts; ++attempt) {
    sleeper_(config_.retry.backoff_before(attempt));
    response = transport_->get(target, headers);
    ++requests_;
    if (response.status >= 200 && response.status < 300) return response.body;
    if (!is_transient_status(response.status)) break;
    spdlog::warn("portal returned {} for {} (attempt {}/{})", response.status, target, attempt,
                 config_.retry.max_attempts);
  }
  throw NetworkError(response.status, "portal request " + target + " failed with status " +
                                          std::to_string(response.status) +
                                          (response.error.empty() ? "" : ": " + response.error));
}

json PortalClient::get_json(const std::string& target) {
  const auto body = get_text(target);
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kProtocol, "portal returned invalid JSON for " + target + ": " +
                                          e.what());
  }
}

std::string PortalClient::to_target(const std::string& url) const {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) return url;
  const auto path = url.find('/', scheme + 3);
  return path == std::string::npos ? "/" : url.substr(path);
}

namespace {

std::vector<std::string> cpc_codes_of(const json& metadata) {
  std::vector<std::string> out;
  if (auto it = metadata.find("cpcClassificationBag"); it != metadata.end() && it->is_array()) {
    for (const auto& code : *it) {
      if (code.is_string()) out.push_back(code.get<std::string>());
    }
  }
  return out;
}

bool has_cpc_prefix(const std::vector<std::string>& codes, const std::string& prefix) {
  // Portal codes may contain spaces ("G06F  40/30"); compare without them.
  auto squash = [](std::string s) {
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    return s;
  };
  const auto p = squash(prefix);
  return std::any_of(codes.begin(), codes.end(),
                     [&](const std::string& c) { return squash(c).rfind(p, 0) == 0; });
}

}  // namespace

std::vector<std::string> PortalClient::search_seed_applications(const std::string& cpc_prefix,
                                                                const Date& min_filing_date,
                                                                bool require_rejection) {
  if (cpc_prefix.empty()) throw Error(ErrorKind::kInvalidArgument, "cpc_prefix must not be empty");
  const auto query = "applicationMetaData.cpcClassificationBag:" + cpc_prefix +
                     "* AND applicationMetaData.filingDate:[" + min_filing_date.iso() + " TO *]";
  if (config_.cache_dir.empty()) {
    return search_uncached(query, cpc_prefix, min_filing_date, require_rejection);
  }
  const auto path = config_.cache_dir / "search" /
                    (sha256_hex(query + (require_rejection ? "|rejected" : "|any")) + ".json");
  if (std::filesystem::exists(path)) {
    return json::parse(fs::read_file(path)).at("application_ids").get<std::vector<std::string>>();
  }
  auto ids = search_uncached(query, cpc_prefix, min_filing_date, require_rejection);
  fs::write_file_atomic(path, json({{"query", query}, {"require_rejection", require_rejection},
                                    {"application_ids", ids}})
                                  .dump(2) +
                                  "\n");
  return ids;
}

std::vector<std::string> PortalClient::search_uncached(const std::string& query,
                                                       const std::string& cpc_prefix,
                                                       const Date& min_filing_date,
                                                       bool require_rejection) {
  std::set<std::string> candidates;
  for (int offset = 0;; offset += config_.page_size) {
    const auto page = get_json(config_.search_path + "?q=" + url_encode(query) +
                               "&offset=" + std::to_string(offset) +
                               "&limit=" + std::to_string(config_.page_size));
    const auto bag = page.value("patentFileWrapperDataBag", json::array());
    for (const auto& entry : bag) {
      const auto id = entry.value("applicationNumberText", std::string());
      const auto meta = entry.value("applicationMetaData", json::object());
      const auto filing = Date::parse(meta.value("filingDate", std::string()));
      if (id.empty() || !filing || *filing < min_filing_date) continue;
      if (!has_cpc_prefix(cpc_codes_of(meta), cpc_prefix)) continue;
      candidates.insert(id);
    }
    const auto total = page.value("count", 0);
    if (bag.empty() || offset + config_.page_size >= total) break;
  }
  std::vector<std::string> ids(candidates.begin(), candidates.end());
  if (!require_rejection) return ids;

  std::vector<char> keep(ids.size(), 0);
  parallel_for(ids.size(), static_cast<std::size_t>(config_.max_concurrency), [&](std::size_t i) {
    keep[i] = select_first_office_action(list_documents(ids[i]), config_.office_action_codes)
                  .has_value();
  });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (keep[i]) out.push_back(ids[i]);
  }
  return out;
}

std::vector<PortalDocument> PortalClient::list_documents(const std::string& application_id) {
  const auto listing = get_json(config_.application_path + application_id +
                                config_.documents_suffix);
  std::vector<PortalDocument> docs;
  for (const auto& d : listing.value("documentBag", json::array())) {
    PortalDocument doc;
    doc.document_id = d.value("documentIdentifier", std::string());
    doc.code = d.value("documentCode", std::string());
    const auto date = Date::parse(d.value("officialDate", std::string()));
    if (!date) continue;
    doc.official_date = *date;
    for (const auto& option : d.value("downloadOptionBag", json::array())) {
      if (option.value("mimeTypeIdentifier", std::string()) == "XML") {
        doc.xml_url = option.value("downloadUrl", std::string());
      }
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

FetchOutcome PortalClient::fetch_document_bundle(const std::string& application_id) {
  if (config_.cache_dir.empty()) throw Error(ErrorKind::kConfig, "portal cache_dir not set");
  const auto dir = config_.cache_dir / application_id;
  if (std::filesystem::exists(dir / "bundle.json")) {
    return {json::parse(fs::read_file(dir / "bundle.json")).get<DocumentBundle>(), std::nullopt};
  }
  if (std::filesystem::exists(dir / "skip.json")) {
    return {std::nullopt, json::parse(fs::read_file(dir / "skip.json")).get<SkipRecord>()};
  }
  auto outcome = download_bundle(application_id);
  if (outcome.bundle) {
    fs::write_file_atomic(dir / "bundle.json", fs::dump_compact(json(*outcome.bundle)));
  } else {
    spdlog::info("skipping {}: {}", application_id, outcome.skip->reason);
    fs::write_file_atomic(dir / "skip.json", fs::dump_compact(json(*outcome.skip)));
  }
  return outcome;
}

FetchOutcome PortalClient::download_bundle(const std::string& application_id) {
  auto skip = [&](std::string reason) {
    return FetchOutcome{std::nullopt, SkipRecord{application_id, std::move(reason)}};
  };
  const auto dir = config_.cache_dir / application_id;

  const auto metadata_page = get_json(config_.application_path + application_id +
                                      config_.metadata_suffix);
  json metadata = json::object();
  if (auto bag = metadata_page.find("patentFileWrapperDataBag");
      bag != metadata_page.end() && bag->is_array() && !bag->empty()) {
    metadata = bag->at(0).value("applicationMetaData", json::object());
  }
  const auto filing = Date::parse(metadata.value("filingDate", std::string()));
  if (!filing) return skip("metadata lacks a filing date");
  if (*filing < config_.min_filing_date) {
    return skip("filed " + filing->iso() + ", before " + config_.min_filing_date.iso());
  }

  const auto docs = list_documents(application_id);
  const auto oa = select_first_office_action(docs, config_.office_action_codes);
  if (!oa) return skip("no office action document");
  const auto claims_doc = select_latest_before(docs, config_.claims_code, oa->official_date);
  if (!claims_doc) return skip("no claims document on or before the first office action");
  const auto spec_doc = select_latest_before(docs, config_.spec_code, oa->official_date);
  if (!spec_doc) return skip("no specification document on or before the first office action");
  for (const auto* d : {&*oa, &*claims_doc, &*spec_doc}) {
    if (d->xml_url.empty()) return skip("document " + d->document_id + " has no XML rendition");
  }

  const auto oa_xml = get_text(to_target(oa->xml_url));
  const auto claims_xml = get_text(to_target(claims_doc->xml_url));
  const auto spec_xml = get_text(to_target(spec_doc->xml_url));
  fs::write_file_atomic(dir / "office_action.xml", oa_xml);
  fs::write_file_atomic(dir / "claims.xml", claims_xml);
  fs::write_file_atomic(dir / "specification.xml", spec_xml);

  DocumentBundle bundle;
  try {
    const auto oa_doc = convert_xml_to_text(oa_xml);
    const auto claims_doc_text = convert_xml_to_text(claims_xml);
    const auto spec_doc_text = convert_xml_to_text(spec_xml);
    fs::write_file_atomic(dir / "office_action.md", oa_doc.markdown);
    fs::write_file_atomic(dir / "claims.md", claims_doc_text.markdown);
    fs::write_file_atomic(dir / "specification.md", spec_doc_text.markdown);

    bundle.first_office_action.application_id = application_id;
    bundle.first_office_action.mail_date = oa->official_date;
    bundle.first_office_action.sections = oa_doc.sections;
    bundle.first_office_action.full_text = oa_doc.markdown;
    bundle.first_office_action.raw_source_ref = application_id + "/office_action.xml";

    auto& app = bundle.application;
    app.application_id = application_id;
    app.filing_date = *filing;
    app.cpc_codes = cpc_codes_of(metadata);
    app.claims = extract_claims(claims_xml, application_id);
    app.description_paragraphs = extract_description_paragraphs(spec_xml);
    app.office_action_refs = {oa->document_id};
  } catch (const Error& e) {
    return skip(std::string("malformed document: ") + e.what());
  }
  bundle.claims_doc_date = claims_doc->official_date;
  bundle.spec_doc_date = spec_doc->official_date;
  return {std::move(bundle), std::nullopt};
}

std::vector<FetchOutcome> PortalClient::fetch_document_bundles(
    const std::vector<std::string>& ids) {
  std::vector<FetchOutcome> out(ids.size());
  parallel_for(ids.size(), static_cast<std::size_t>(config_.max_concurrency),
               [&](std::size_t i) { out[i] = fetch_document_bundle(ids[i]); });
  return out;
}

}  // namespace defexam::ingest
