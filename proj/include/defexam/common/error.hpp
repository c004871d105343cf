// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace defexam {

/// Failure classes. The CLI maps each one to a distinct exit code.
enum class ErrorKind {
  kConfig,
  kPrerequisite,
  kNetwork,
  kExtraction,
  kProtocol,
  kData,
  kInvalidArgument,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Transport failure that survived all retries. `status` is 0 when no HTTP
/// response was received at all.
class NetworkError : public Error {
 public:
  NetworkError(int status, const std::string& message)
      : Error(ErrorKind::kNetwork, message), status_(status) {}

  int status() const { return status_; }

 private:
  int status_;
};

std::string_view to_string(ErrorKind kind);

/// Process exit code for an error class; 0 is reserved for success.
int exit_code(ErrorKind kind);

}  // namespace defexam
