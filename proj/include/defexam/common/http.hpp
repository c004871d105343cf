// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace defexam {

using HttpHeaders = std::vector<std::pair<std::string, std::string>>;

struct HttpResponse {
  int status = 0;  // 0: no response (connection failure, timeout)
  std::string body;
  std::string error;
};

/// Minimal blocking HTTP interface; `target` is a path plus query string
/// relative to the transport's base URL. Implementations must be safe to call
/// from several threads at once.
class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpResponse get(const std::string& target, const HttpHeaders& headers) = 0;
  virtual HttpResponse post(const std::string& target, const std::string& body,
                            const std::string& content_type, const HttpHeaders& headers) = 0;
};

/// Transport for "http://host[:port]" or "https://host[:port]" base URLs.
/// A path component in the base URL is prepended to every target.
std::shared_ptr<HttpTransport> make_http_transport(
    const std::string& base_url, std::chrono::seconds timeout = std::chrono::seconds(120));

/// Percent-encodes everything outside the RFC 3986 unreserved set.
std::string url_encode(std::string_view value);

}  // namespace defexam
