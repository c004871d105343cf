// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0

#include "defexam/pipeline/config.hpp"

#include <cmath>
#include <set>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "defexam/common/error.hpp"
#include "defexam/common/fs.hpp"
#include "defexam/common/hashing.hpp"

namespace defexam::pipeline {
namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& message) {
  throw Error(ErrorKind::kConfig, message);
}

// Reads one JSON object and rejects keys nobody asked for, so typos in a
// config file surface instead of silently falling back to defaults.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) config_error(fmt::format("config: {} must be an object", label()));
  }

  template <typename T>
  void read(const char* key, T& out) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) return;
    try {
      out = it->template get<T>();
    } catch (const json::exception& e) {
      config_error(fmt::format("config: {}.{} has the wrong type ({})", label(), key, e.what()));
    }
  }

  template <typename T>
  void read(const char* key, std::optional<T>& out) {
    T value{};
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) return;
    read(key, value);
    out = std::move(value);
  }

  // Present, non-null child object; nullptr otherwise.
  const json* child(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  std::string child_path(const char* key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.count(key)) config_error(fmt::format("config: unknown key {}.{}", label(), key));
    }
  }

 private:
  std::string label() const { return path_.empty() ? "<root>" : path_; }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

RetryPolicy read_retry(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  RetryPolicy p;
  long initial = p.initial_backoff.count();
  long max = p.max_backoff.count();
  r.read("max_attempts", p.max_attempts);
  r.read("initial_backoff_ms", initial);
  r.read("backoff_multiplier", p.backoff_multiplier);
  r.read("max_backoff_ms", max);
  r.finish();
  p.initial_backoff = std::chrono::milliseconds(initial);
  p.max_backoff = std::chrono::milliseconds(max);
  return p;
}

json retry_json(const RetryPolicy& p) {
  return {{"max_attempts", p.max_attempts},
          {"initial_backoff_ms", p.initial_backoff.count()},
          {"backoff_multiplier", p.backoff_multiplier},
          {"max_backoff_ms", p.max_backoff.count()}};
}

Date read_date(const std::string& text, const std::string& key) {
  auto d = Date::parse(text);
  if (!d) config_error(fmt::format("config: {} is not a date: {}", key, text));
  return *d;
}

}  // namespace

PipelineConfig PipelineConfig::from_json(const json& j) {
  PipelineConfig c;
  ObjectReader root(j, "");
  root.read("seed", c.seed);

  RetryPolicy retry;
  if (const json* r = root.child("retry")) retry = read_retry(*r, "retry");
  c.portal.client.retry = retry;
  c.llm.gateway.retry = retry;

  if (const json* p = root.child("portal")) {
    ObjectReader r(*p, "portal");
    auto& client = c.portal.client;
    std::string min_date = client.min_filing_date.iso();
    std::string cache = c.portal.cache_dir.string();
    r.read("base_url", client.base_url);
    r.read("api_key_env", client.api_key_env);
    r.read("api_key_header", client.api_key_header);
    r.read("search_path", client.search_path);
    r.read("application_path", client.application_path);
    r.read("office_action_codes", client.office_action_codes);
    r.read("min_filing_date", min_date);
    r.read("page_size", client.page_size);
    r.read("max_concurrency", client.max_concurrency);
    r.read("cpc_prefix", c.portal.cpc_prefix);
    r.read("require_rejection", c.portal.require_rejection);
    r.read("application_ids", c.portal.application_ids);
    r.read("cache_dir", cache);
    r.finish();
    client.min_filing_date = read_date(min_date, "portal.min_filing_date");
    c.portal.cache_dir = cache;
  }

  if (const json* l = root.child("llm")) {
    ObjectReader r(*l, "llm");
    auto& g = c.llm.gateway;
    std::string cache = c.llm.cache_dir.string();
    r.read("endpoint", g.endpoint);
    r.read("completions_path", g.completions_path);
    r.read("api_key_env", g.api_key_env);
    r.read("models", g.models);
    r.read("max_in_flight", g.max_in_flight);
    r.read("timeout_seconds", c.llm.timeout_seconds);
    r.read("cache_dir", cache);
    r.finish();
    c.llm.cache_dir = cache;
  }

  if (const json* e = root.child("extraction")) {
    ObjectReader r(*e, "extraction");
    r.read("max_attempts", c.extraction.max_attempts);
    r.read("max_tokens", c.extraction.max_tokens);
    r.finish();
  }

  if (const json* m = root.child("matching")) {
    ObjectReader r(*m, "matching");
    r.read("threshold", c.matching.threshold);
    r.read("window_tolerance", c.matching.window_tolerance);
    r.finish();
  }

  if (const json* d = root.child("dataset")) {
    ObjectReader r(*d, "dataset");
    std::vector<double> fractions(c.dataset.fractions.begin(), c.dataset.fractions.end());
    r.read("fractions", fractions);
    r.finish();
    if (fractions.size() != 3) config_error("config: dataset.fractions needs three values");
    std::copy(fractions.begin(), fractions.end(), c.dataset.fractions.begin());
  }

  if (const json* f = root.child("features")) {
    ObjectReader r(*f, "features");
    std::vector<std::string> sets;
    std::optional<std::vector<std::string>> triggers;
    r.read("sets", sets);
    r.read("max_features", c.features.max_features);
    r.read("triggers", triggers);
    r.finish();
    if (!sets.empty()) {
      c.features.sets.clear();
      for (const auto& name : sets) {
        try {
          c.features.sets.push_back(features::feature_set_from_string(name));
        } catch (const Error&) {
          config_error(fmt::format("config: unknown feature set {}", name));
        }
      }
    }
    if (triggers) c.features.linguistic.triggers = *triggers;
  }

  if (const json* lr = root.child("logistic")) {
    ObjectReader r(*lr, "logistic");
    r.read("initial_step", c.logistic.initial_step);
    r.read("l2", c.logistic.l2);
    r.read("max_epochs", c.logistic.max_epochs);
    r.read("gradient_tolerance", c.logistic.gradient_tolerance);
    r.finish();
  }

  if (const json* a = root.child("agent")) {
    ObjectReader r(*a, "agent");
    r.read("max_tool_calls", c.agent.max_tool_calls);
    r.read("search_top_k", c.agent.search_top_k);
    r.read("max_schema_retries", c.agent.max_schema_retries);
    r.read("max_tokens", c.agent.max_tokens);
    r.finish();
  }

  if (const json* jd = root.child("judge")) {
    ObjectReader r(*jd, "judge");
    r.read("threshold", c.judge.threshold);
    r.read("top_logprobs", c.judge.top_logprobs);
    r.read("analysis_max_tokens", c.judge.analysis_max_tokens);
    r.read("max_workers", c.judge_workers);
    r.finish();
  }

  if (const json* au = root.child("audit")) {
    ObjectReader r(*au, "audit");
    r.read("sample_size", c.audit_sample_size);
    r.finish();
  }

  root.finish();
  c.logistic.seed = derive_seed(c.seed, "logistic");
  c.validate();
  return c;
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
  std::string text;
  try {
    text = fs::read_file(path);
  } catch (const std::exception& e) {
    config_error(fmt::format("config: cannot read {}: {}", path.string(), e.what()));
  }
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) config_error(fmt::format("config: {} is not valid JSON", path.string()));
  return from_json(j);
}

json PipelineConfig::to_json() const {
  json sets = json::array();
  for (auto s : features.sets) sets.push_back(std::string(features::to_string(s)));
  const auto& client = portal.client;
  return {
      {"seed", seed},
      {"retry", retry_json(client.retry)},
      {"portal",
       {{"base_url", client.base_url},
        {"api_key_env", client.api_key_env},
        {"api_key_header", client.api_key_header},
        {"search_path", client.search_path},
        {"application_path", client.application_path},
        {"office_action_codes", client.office_action_codes},
        {"min_filing_date", client.min_filing_date.iso()},
        {"page_size", client.page_size},
        {"max_concurrency", client.max_concurrency},
        {"cpc_prefix", portal.cpc_prefix},
        {"require_rejection", portal.require_rejection},
        {"application_ids", portal.application_ids},
        {"cache_dir", portal.cache_dir.string()}}},
      {"llm",
       {{"endpoint", llm.gateway.endpoint},
        {"completions_path", llm.gateway.completions_path},
        {"api_key_env", llm.gateway.api_key_env},
        {"models", llm.gateway.models},
        {"max_in_flight", llm.gateway.max_in_flight},
        {"timeout_seconds", llm.timeout_seconds},
        {"cache_dir", llm.cache_dir.string()}}},
      {"extraction",
       {{"max_attempts", extraction.max_attempts},
        {"max_tokens", extraction.max_tokens ? json(*extraction.max_tokens) : json()}}},
      {"matching",
       {{"threshold", matching.threshold}, {"window_tolerance", matching.window_tolerance}}},
      {"dataset", {{"fractions", dataset.fractions}}},
      {"features",
       {{"sets", sets},
        {"max_features", features.max_features},
        {"triggers", features.linguistic.triggers}}},
      {"logistic",
       {{"initial_step", logistic.initial_step},
        {"l2", logistic.l2},
        {"max_epochs", logistic.max_epochs},
        {"gradient_tolerance", logistic.gradient_tolerance}}},
      {"agent",
       {{"max_tool_calls", agent.max_tool_calls},
        {"search_top_k", agent.search_top_k},
        {"max_schema_retries", agent.max_schema_retries},
        {"max_tokens", agent.max_tokens ? json(*agent.max_tokens) : json()}}},
      {"judge",
       {{"threshold", judge.threshold},
        {"top_logprobs", judge.top_logprobs},
        {"analysis_max_tokens",
         judge.analysis_max_tokens ? json(*judge.analysis_max_tokens) : json()},
        {"max_workers", judge_workers}}},
      {"audit", {{"sample_size", audit_sample_size}}},
  };
}

void PipelineConfig::validate() const {
  double sum = 0;
  for (double f : dataset.fractions) {
    if (!(f > 0 && f < 1)) config_error("config: dataset.fractions must lie in (0, 1)");
    sum += f;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    config_error(fmt::format("config: dataset.fractions sum to {}, not 1", sum));
  }
  if (!(judge.threshold >= 0 && judge.threshold <= 100)) {
    config_error("config: judge.threshold must lie in [0, 100]");
  }
  if (judge.top_logprobs < 1 || judge.top_logprobs > 20) {
    config_error("config: judge.top_logprobs must lie in [1, 20]");
  }
  if (!(matching.threshold > 0 && matching.threshold <= 1)) {
    config_error("config: matching.threshold must lie in (0, 1]");
  }
  if (!(matching.window_tolerance >= 0 && matching.window_tolerance < 1)) {
    config_error("config: matching.window_tolerance must lie in [0, 1)");
  }
  if (extraction.max_attempts < 1) config_error("config: extraction.max_attempts must be >= 1");
  if (agent.max_tool_calls < 0) config_error("config: agent.max_tool_calls must be >= 0");
  if (agent.max_schema_retries < 0) config_error("config: agent.max_schema_retries must be >= 0");
  if (agent.search_top_k < 1) config_error("config: agent.search_top_k must be >= 1");
  if (features.sets.empty()) config_error("config: features.sets is empty");
  if (features.max_features < 1) config_error("config: features.max_features must be >= 1");
  if (!(logistic.l2 >= 0)) config_error("config: logistic.l2 must be >= 0");
  if (!(logistic.initial_step > 0)) config_error("config: logistic.initial_step must be > 0");
  if (logistic.max_epochs < 1) config_error("config: logistic.max_epochs must be >= 1");
  if (llm.gateway.max_in_flight < 1) config_error("config: llm.max_in_flight must be >= 1");
  if (portal.client.max_concurrency < 1) config_error("config: portal.max_concurrency must be >= 1");
  if (portal.client.page_size < 1) config_error("config: portal.page_size must be >= 1");
  if (portal.client.retry.max_attempts < 1) config_error("config: retry.max_attempts must be >= 1");
  if (judge_workers < 1) config_error("config: judge.max_workers must be >= 1");
  if (audit_sample_size < 1) config_error("config: audit.sample_size must be >= 1");
}

void PipelineConfig::apply_model_roles(const std::vector<std::string>& assignments) {
  for (const auto& a : assignments) {
    auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == a.size()) {
      config_error(fmt::format("--model-role expects role=model, got '{}'", a));
    }
    llm.gateway.models[a.substr(0, eq)] = a.substr(eq + 1);
  }
}

std::uint64_t derive_seed(std::uint64_t seed, const std::string& purpose) {
  const std::string digest = sha256_hex(fmt::format("{}:{}", seed, purpose));
  return std::stoull(digest.substr(0, 16), nullptr, 16);
}

}  // namespace defexam::pipeline
