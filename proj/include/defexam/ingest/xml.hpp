// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "defexam/common/error.hpp"

namespace defexam::ingest {

/// Element or text node of a parsed document. Comments, processing
/// instructions and the DOCTYPE are discarded; CDATA becomes text.
struct XmlNode {
  enum class Kind { kElement, kText };

  Kind kind = Kind::kElement;
  std::string name;  // element name, lower-cased
  std::vector<std::pair<std::string, std::string>> attributes;
  std::string text;  // text nodes only, entities decoded
  std::vector<XmlNode> children;

  bool is_element(std::string_view n) const { return kind == Kind::kElement && name == n; }
  std::string attribute(std::string_view key) const;
  /// Concatenated text of all descendant text nodes.
  std::string text_content() const;
};

class XmlError : public Error {
 public:
  XmlError(std::size_t offset, const std::string& message)
      : Error(ErrorKind::kData, "XML error at byte " + std::to_string(offset) + ": " + message),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Parses a well-formed document and returns its root element. Throws
/// XmlError with the byte offset of the first problem.
XmlNode parse_xml(std::string_view document);

}  // namespace defexam::ingest
