// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace defexam::fs {

namespace stdfs = std::filesystem;

std::string read_file(const stdfs::path& path);

/// Writes to a sibling temporary file and renames it into place, so readers
/// never observe a partially written file.
void write_file_atomic(const stdfs::path& path, std::string_view content);

/// One JSON value per line. Blank lines are skipped.
std::vector<nlohmann::json> read_jsonl(const stdfs::path& path);
void write_jsonl_atomic(const stdfs::path& path, const std::vector<nlohmann::json>& records);

/// Serializes with sorted keys and no insignificant whitespace.
std::string dump_compact(const nlohmann::json& value);

}  // namespace defexam::fs
