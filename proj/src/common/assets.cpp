// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#include "defexam/common/assets.hpp"

#include "defexam/common/error.hpp"
#include "defexam/common/text.hpp"

namespace defexam::assets {

std::string_view require(std::string_view name) {
  auto found = find(name);
  if (!found) throw Error(ErrorKind::kConfig, "missing built-in asset: " + std::string(name));
  return *found;
}

std::vector<std::string> lines(std::string_view content) {
  std::vector<std::string> out;
  for (const auto& line : text::split(content, '\n')) {
    auto trimmed = text::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    out.emplace_back(trimmed);
  }
  return out;
}

}  // namespace defexam::assets
