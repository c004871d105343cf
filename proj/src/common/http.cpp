// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0

#include <httplib.h>

#include "defexam/common/http.hpp"

#include <mutex>

#include "defexam/common/error.hpp"

namespace defexam {
namespace {

struct ParsedUrl {
  std::string scheme_host_port;
  std::string path_prefix;
};

ParsedUrl parse_base_url(const std::string& base_url) {
  const auto scheme_end = base_url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorKind::kConfig, "base URL lacks a scheme: " + base_url);
  }
  const auto path_start = base_url.find('/', scheme_end + 3);
  ParsedUrl out;
  out.scheme_host_port = base_url.substr(0, path_start);
  if (path_start != std::string::npos) {
    out.path_prefix = base_url.substr(path_start);
    while (!out.path_prefix.empty() && out.path_prefix.back() == '/') out.path_prefix.pop_back();
  }
  return out;
}

httplib::Headers to_httplib(const HttpHeaders& headers) {
  httplib::Headers out;
  for (const auto& [k, v] : headers) out.emplace(k, v);
  return out;
}

HttpResponse from_result(const httplib::Result& result) {
  HttpResponse out;
  if (!result) {
    out.error = httplib::to_string(result.error());
    return out;
  }
  out.status = result->status;
  out.body = result->body;
  return out;
}

// httplib::Client is not safe for concurrent use, so each call builds its
// own client; connections are cheap relative to LLM and portal latency.
class HttplibTransport final : public HttpTransport {
 public:
  HttplibTransport(ParsedUrl url, std::chrono::seconds timeout)
      : url_(std::move(url)), timeout_(timeout) {}

  HttpResponse get(const std::string& target, const HttpHeaders& headers) override {
    auto client = make_client();
    return from_result(client.Get(url_.path_prefix + target, to_httplib(headers)));
  }

  HttpResponse post(const std::string& target, const std::string& body,
                    const std::string& content_type, const HttpHeaders& headers) override {
    auto client = make_client();
    return from_result(
        client.Post(url_.path_prefix + target, to_httplib(headers), body, content_type));
  }

 private:
  httplib::Client make_client() const {
    httplib::Client client(url_.scheme_host_port);
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);
    client.set_write_timeout(timeout_);
    client.set_follow_location(true);
    return client;
  }

  ParsedUrl url_;
  std::chrono::seconds timeout_;
};

}  // namespace

std::shared_ptr<HttpTransport> make_http_transport(const std::string& base_url,
                                                   std::chrono::seconds timeout) {
  return std::make_shared<HttplibTransport>(parse_base_url(base_url), timeout);
}

std::string url_encode(std::string_view value) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : value) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0x0F]);
    }
  }
  return out;
}

}  // namespace defexam
