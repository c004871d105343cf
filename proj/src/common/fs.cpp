// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#include "defexam/common/fs.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "defexam/common/error.hpp"
#include "defexam/common/text.hpp"

namespace defexam::fs {

std::string read_file(const stdfs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kData, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file_atomic(const stdfs::path& path, std::string_view content) {
  static std::atomic<unsigned long> counter{0};
  if (path.has_parent_path()) stdfs::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp." + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) +
         "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kData, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorKind::kData, "short write to " + tmp.string());
  }
  stdfs::rename(tmp, path);
}

std::vector<nlohmann::json> read_jsonl(const stdfs::path& path) {
  std::vector<nlohmann::json> out;
  const auto content = read_file(path);
  std::size_t line_number = 0;
  for (const auto& line : text::split(content, '\n')) {
    ++line_number;
    if (text::trim(line).empty()) continue;
    try {
      out.push_back(nlohmann::json::parse(line));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::kData, path.string() + ":" + std::to_string(line_number) + ": " +
                                        e.what());
    }
  }
  return out;
}

void write_jsonl_atomic(const stdfs::path& path, const std::vector<nlohmann::json>& records) {
  std::string content;
  for (const auto& record : records) {
    content += dump_compact(record);
    content += '\n';
  }
  write_file_atomic(path, content);
}

std::string dump_compact(const nlohmann::json& value) {
  return value.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

}  // namespace defexam::fs
