// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#include "defexam/ingest/xml.hpp"

#include <cctype>

#include "defexam/common/text.hpp"
#include "defexam/common/utf8.hpp"

namespace defexam::ingest {
namespace {

bool is_name_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || c == '-' || c == '.' || c == ':' || u >= 0x80;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

class Parser {
 public:
  explicit Parser(std::string_view doc) : doc_(doc) {}

  XmlNode parse_document() {
    if (doc_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
    skip_misc();
    if (pos_ >= doc_.size() || doc_[pos_] != '<') fail("expected root element");
    XmlNode root = parse_element();
    skip_misc();
    if (pos_ != doc_.size()) fail("content after root element");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw XmlError(pos_, message); }

  bool starts_with(std::string_view s) const { return doc_.substr(pos_, s.size()) == s; }

  void skip_spaces() {
    while (pos_ < doc_.size() && is_space(doc_[pos_])) ++pos_;
  }

  void skip_past(std::string_view terminator, const char* what) {
    const auto end = doc_.find(terminator, pos_);
    if (end == std::string_view::npos) fail(std::string("unterminated ") + what);
    pos_ = end + terminator.size();
  }

  // Whitespace, comments, processing instructions and DOCTYPE.
  void skip_misc() {
    while (true) {
      skip_spaces();
      if (starts_with("<?")) {
        skip_past("?>", "processing instruction");
      } else if (starts_with("<!--")) {
        skip_past("-->", "comment");
      } else if (starts_with("<!DOCTYPE") || starts_with("<!doctype")) {
        skip_doctype();
      } else {
        return;
      }
    }
  }

  void skip_doctype() {
    int depth = 0;
    for (; pos_ < doc_.size(); ++pos_) {
      if (doc_[pos_] == '[') ++depth;
      if (doc_[pos_] == ']') --depth;
      if (doc_[pos_] == '>' && depth <= 0) {
        ++pos_;
        return;
      }
    }
    fail("unterminated DOCTYPE");
  }

  std::string parse_name() {
    const auto start = pos_;
    while (pos_ < doc_.size() && is_name_char(doc_[pos_])) ++pos_;
    if (pos_ == start) fail("expected a name");
    return text::to_lower_ascii(doc_.substr(start, pos_ - start));
  }

  std::string decode_entities(std::string_view raw, std::size_t raw_offset) const {
    std::string out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] != '&') {
        out.push_back(raw[i]);
        continue;
      }
      const auto semi = raw.find(';', i);
      if (semi == std::string_view::npos || semi - i > 12) {
        throw XmlError(raw_offset + i, "unterminated entity reference");
      }
      const auto entity = raw.substr(i + 1, semi - i - 1);
      if (entity == "amp") out.push_back('&');
      else if (entity == "lt") out.push_back('<');
      else if (entity == "gt") out.push_back('>');
      else if (entity == "quot") out.push_back('"');
      else if (entity == "apos") out.push_back('\'');
      else if (entity == "nbsp") out.push_back(' ');
      else if (!entity.empty() && entity[0] == '#') {
        const bool hex = entity.size() > 1 && (entity[1] == 'x' || entity[1] == 'X');
        const auto digits = std::string(entity.substr(hex ? 2 : 1));
        char32_t cp = 0;
        try {
          cp = static_cast<char32_t>(std::stoul(digits, nullptr, hex ? 16 : 10));
        } catch (...) {
          throw XmlError(raw_offset + i, "invalid character reference");
        }
        out += utf8::encode(cp);
      } else {
        throw XmlError(raw_offset + i, "unknown entity &" + std::string(entity) + ";");
      }
      i = semi;
    }
    return out;
  }

  std::string parse_attribute_value() {
    if (pos_ >= doc_.size() || (doc_[pos_] != '"' && doc_[pos_] != '\'')) {
      fail("expected quoted attribute value");
    }
    const char quote = doc_[pos_++];
    const auto start = pos_;
    const auto end = doc_.find(quote, pos_);
    if (end == std::string_view::npos) fail("unterminated attribute value");
    pos_ = end + 1;
    return decode_entities(doc_.substr(start, end - start), start);
  }

  XmlNode parse_element() {
    ++pos_;  // '<'
    XmlNode node;
    node.name = parse_name();
    while (true) {
      skip_spaces();
      if (pos_ >= doc_.size()) fail("unterminated start tag");
      if (starts_with("/>")) {
        pos_ += 2;
        return node;
      }
      if (doc_[pos_] == '>') {
        ++pos_;
        break;
      }
      auto key = parse_name();
      skip_spaces();
      if (pos_ >= doc_.size() || doc_[pos_] != '=') fail("expected '=' after attribute name");
      ++pos_;
      skip_spaces();
      node.attributes.emplace_back(std::move(key), parse_attribute_value());
    }
    parse_content(node);
    return node;
  }

  void parse_content(XmlNode& node) {
    while (true) {
      if (pos_ >= doc_.size()) fail("unclosed element <" + node.name + ">");
      if (starts_with("</")) {
        pos_ += 2;
        const auto close_offset = pos_;
        const auto name = parse_name();
        if (name != node.name) {
          throw XmlError(close_offset, "mismatched closing tag </" + name + "> for <" +
                                           node.name + ">");
        }
        skip_spaces();
        if (pos_ >= doc_.size() || doc_[pos_] != '>') fail("expected '>'");
        ++pos_;
        return;
      }
      if (starts_with("<!--")) {
        skip_past("-->", "comment");
      } else if (starts_with("<![CDATA[")) {
        pos_ += 9;
        const auto end = doc_.find("]]>", pos_);
        if (end == std::string_view::npos) fail("unterminated CDATA section");
        append_text(node, std::string(doc_.substr(pos_, end - pos_)));
        pos_ = end + 3;
      } else if (starts_with("<?")) {
        skip_past("?>", "processing instruction");
      } else if (doc_[pos_] == '<') {
        node.children.push_back(parse_element());
      } else {
        const auto start = pos_;
        const auto end = doc_.find('<', pos_);
        pos_ = end == std::string_view::npos ? doc_.size() : end;
        append_text(node, decode_entities(doc_.substr(start, pos_ - start), start));
      }
    }
  }

  static void append_text(XmlNode& node, std::string text) {
    if (!node.children.empty() && node.children.back().kind == XmlNode::Kind::kText) {
      node.children.back().text += text;
      return;
    }
    XmlNode t;
    t.kind = XmlNode::Kind::kText;
    t.text = std::move(text);
    node.children.push_back(std::move(t));
  }

  std::string_view doc_;
  std::size_t pos_ = 0;
};

void collect_text(const XmlNode& node, std::string& out) {
  if (node.kind == XmlNode::Kind::kText) {
    out += node.text;
    return;
  }
  for (const auto& child : node.children) collect_text(child, out);
}

}  // namespace

std::string XmlNode::attribute(std::string_view key) const {
  for (const auto& [k, v] : attributes) {
    if (k == key) return v;
  }
  return {};
}

std::string XmlNode::text_content() const {
  std::string out;
  collect_text(*this, out);
  return out;
}

XmlNode parse_xml(std::string_view document) { return Parser(document).parse_document(); }

}  // namespace defexam::ingest
