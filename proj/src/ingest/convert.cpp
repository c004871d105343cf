// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#include "defexam/ingest/convert.hpp"

#include <cctype>
#include <regex>

#include <spdlog/spdlog.h>

#include "defexam/common/text.hpp"
#include "defexam/corpus/claim_text.hpp"

namespace defexam::ingest {
namespace {

bool is_paragraph(const XmlNode& n) {
  return n.kind == XmlNode::Kind::kElement &&
         (n.name == "p" || n.name == "para" || n.name == "paragraph");
}

// 0 when `n` is not a heading element, otherwise its Markdown level.
int heading_level(const XmlNode& n) {
  if (n.kind != XmlNode::Kind::kElement) return 0;
  if (n.name == "heading") {
    const auto level = n.attribute("level");
    if (level.size() == 1 && level[0] >= '1' && level[0] <= '6') return level[0] - '0';
    return 1;
  }
  if (n.name.size() == 2 && n.name[0] == 'h' && n.name[1] >= '1' && n.name[1] <= '6') {
    return n.name[1] - '0';
  }
  return 0;
}

class MarkdownRenderer {
 public:
  ConvertedDocument render(const XmlNode& root) {
    walk(root);
    flush_loose_text();
    ConvertedDocument out;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if (i > 0) out.markdown += "\n\n";
      out.markdown += blocks_[i];
    }
    out.sections = std::move(sections_);
    out.warnings = std::move(warnings_);
    return out;
  }

 private:
  void walk(const XmlNode& node) {
    for (const auto& child : node.children) {
      if (child.kind == XmlNode::Kind::kText) {
        loose_text_ += child.text;
        continue;
      }
      if (const int level = heading_level(child)) {
        flush_loose_text();
        const auto heading = text::collapse_whitespace(inline_text(child));
        blocks_.push_back(std::string(static_cast<std::size_t>(level), '#') + " " + heading);
        sections_.push_back({heading, {}});
      } else if (is_paragraph(child)) {
        flush_loose_text();
        add_paragraph(text::collapse_whitespace(inline_text(child)));
      } else if (is_inline(child)) {
        loose_text_ += inline_text(child);
      } else {
        flush_loose_text();
        walk(child);
      }
    }
  }

  static bool is_inline(const XmlNode& n) {
    static const char* kInline[] = {"b", "strong", "i", "em", "u", "underline", "sub",
                                    "sup", "br", "span", "claim-ref", "figref", "smallcaps"};
    for (const char* name : kInline) {
      if (n.name == name) return true;
    }
    return false;
  }

  void flush_loose_text() {
    const auto collapsed = text::collapse_whitespace(loose_text_);
    loose_text_.clear();
    if (!collapsed.empty()) add_paragraph(collapsed);
  }

  void add_paragraph(const std::string& paragraph) {
    if (paragraph.empty()) return;
    blocks_.push_back(paragraph);
    if (sections_.empty()) sections_.push_back({"", {}});
    auto& body = sections_.back().body;
    if (!body.empty()) body += "\n\n";
    body += paragraph;
  }

  std::string inline_text(const XmlNode& node) {
    std::string out;
    for (const auto& child : node.children) {
      if (child.kind == XmlNode::Kind::kText) {
        out += child.text;
      } else if (child.name == "b" || child.name == "strong") {
        out += wrap("**", inline_text(child));
      } else if (child.name == "i" || child.name == "em") {
        out += wrap("*", inline_text(child));
      } else if (child.name == "u" || child.name == "underline") {
        const auto inner = inline_text(child);
        warnings_.push_back("underline formatting dropped (no Markdown equivalent): '" +
                            text::collapse_whitespace(inner) + "'");
        out += inner;
      } else if (child.name == "br") {
        out += ' ';
      } else {
        out += inline_text(child);
      }
    }
    return out;
  }

  static std::string wrap(const char* marker, const std::string& inner) {
    const auto trimmed = text::trim(inner);
    if (trimmed.empty()) return inner;
    return std::string(marker) + std::string(trimmed) + marker;
  }

  std::vector<std::string> blocks_;
  std::vector<corpus::Section> sections_;
  std::vector<std::string> warnings_;
  std::string loose_text_;
};

void find_elements(const XmlNode& node, std::string_view name, std::vector<const XmlNode*>& out,
                   bool descend_into_matches) {
  for (const auto& child : node.children) {
    if (child.kind != XmlNode::Kind::kElement) continue;
    if (child.name == name) {
      out.push_back(&child);
      if (!descend_into_matches) continue;
    }
    find_elements(child, name, out, descend_into_matches);
  }
}

std::optional<int> leading_number(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && !std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  std::size_t j = i;
  while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
  if (i == j) return std::nullopt;
  return std::stoi(std::string(s.substr(i, std::min<std::size_t>(j - i, 9))));
}

}  // namespace

ConvertedDocument convert_xml_node(const XmlNode& root) {
  auto out = MarkdownRenderer().render(root);
  for (const auto& w : out.warnings) spdlog::debug("conversion warning: {}", w);
  return out;
}

ConvertedDocument convert_xml_to_text(std::string_view xml_document) {
  return convert_xml_node(parse_xml(xml_document));
}

std::vector<corpus::Claim> extract_claims(std::string_view xml_document,
                                          const std::string& application_id) {
  const auto root = parse_xml(xml_document);
  std::vector<const XmlNode*> claim_nodes;
  if (root.name == "claim") {
    claim_nodes.push_back(&root);
  } else {
    find_elements(root, "claim", claim_nodes, false);
  }
  static const std::regex kNumberPrefix(R"(^\s*\d+\s*\.\s*)");
  std::vector<corpus::Claim> claims;
  for (const auto* node : claim_nodes) {
    auto number = leading_number(node->attribute("num"));
    if (!number) number = leading_number(node->attribute("id"));
    if (!number) number = static_cast<int>(claims.size()) + 1;
    auto body = text::collapse_whitespace(node->text_content());
    body = std::regex_replace(body, kNumberPrefix, "");
    if (body.empty()) continue;
    corpus::Claim claim;
    claim.number = *number;
    claim.text = body;
    claim.parent_numbers = corpus::parse_claim_dependencies(body, claim.number);
    claim.application_id = application_id;
    claims.push_back(std::move(claim));
  }
  if (claims.empty()) {
    throw Error(ErrorKind::kData, "claims document of " + application_id + " contains no claims");
  }
  return claims;
}

std::vector<std::string> extract_description_paragraphs(std::string_view xml_document) {
  const auto root = parse_xml(xml_document);
  std::vector<const XmlNode*> paragraphs;
  for (const char* name : {"p", "para", "paragraph"}) find_elements(root, name, paragraphs, false);
  std::vector<std::string> out;
  if (!paragraphs.empty()) {
    // find_elements per tag name loses document order when tags are mixed;
    // documents use a single paragraph tag in practice.
    for (const auto* p : paragraphs) {
      auto text = text::collapse_whitespace(p->text_content());
      if (!text.empty()) out.push_back(std::move(text));
    }
    if (!out.empty()) return out;
  }
  return corpus::segment_description_paragraphs(convert_xml_node(root).markdown);
}

}  // namespace defexam::ingest
