// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "defexam/corpus/types.hpp"
#include "defexam/ingest/xml.hpp"

namespace defexam::ingest {

struct ConvertedDocument {
  std::string markdown;
  std::vector<corpus::Section> sections;
  std::vector<std::string> warnings;
};

/// Renders a portal XML document as Markdown. Heading elements (heading,
/// h1..h6) become "#" headings, paragraph elements (p, para, paragraph)
/// become paragraphs, bold/italic become Markdown emphasis. Underline has no
/// Markdown form: the text is kept and a warning is emitted. Each heading
/// opens a section; paragraphs before the first heading form a section with
/// an empty heading. Throws XmlError on malformed input.
ConvertedDocument convert_xml_to_text(std::string_view xml_document);
ConvertedDocument convert_xml_node(const XmlNode& root);

/// Claims of a claims document, in document order. Claim numbers come from
/// the "num" attribute (or the id "CLM-00001"); a leading "1." in the text is
/// removed. Throws a data error when the document holds no claims.
std::vector<corpus::Claim> extract_claims(std::string_view xml_document,
                                          const std::string& application_id);

/// Paragraphs of a specification document: the text of each paragraph
/// element, or, if there are none, the segmented Markdown text.
std::vector<std::string> extract_description_paragraphs(std::string_view xml_document);

}  // namespace defexam::ingest
