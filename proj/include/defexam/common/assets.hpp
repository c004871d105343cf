// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Text assets (prompt templates, lexicons) compiled into the binary from the
// assets/ directory. Names are paths relative to that directory.
namespace defexam::assets {

std::optional<std::string_view> find(std::string_view name);
std::vector<std::string_view> names();

/// Like find() but throws a config error when the asset does not exist.
std::string_view require(std::string_view name);

/// Non-empty lines of a line-oriented asset, skipping '#' comments.
std::vector<std::string> lines(std::string_view content);

}  // namespace defexam::assets
