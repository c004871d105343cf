// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#include "defexam/common/error.hpp"

namespace defexam {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig: return "config";
    case ErrorKind::kPrerequisite: return "prerequisite";
    case ErrorKind::kNetwork: return "network";
    case ErrorKind::kExtraction: return "extraction";
    case ErrorKind::kProtocol: return "protocol";
    case ErrorKind::kData: return "data";
    case ErrorKind::kInvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfig: return 2;
    case ErrorKind::kPrerequisite: return 3;
    case ErrorKind::kNetwork: return 4;
    case ErrorKind::kExtraction: return 5;
    case ErrorKind::kProtocol: return 6;
    case ErrorKind::kData: return 7;
    case ErrorKind::kInvalidArgument: return 8;
  }
  return 1;
}

}  // namespace defexam
