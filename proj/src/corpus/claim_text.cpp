// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#include "defexam/corpus/claim_text.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>

#include <spdlog/spdlog.h>

#include "defexam/common/error.hpp"
#include "defexam/common/text.hpp"

namespace defexam::corpus {
namespace {

constexpr int kMaxRangeSpan = 500;

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Cursor over lower-cased claim text used by the reference-list parser.
class Scanner {
 public:
  explicit Scanner(std::string_view s, std::size_t pos) : s_(s), pos_(pos) {}

  std::size_t pos() const { return pos_; }
  void skip_spaces() {
    while (pos_ < s_.size() && is_space(s_[pos_])) ++pos_;
  }

  std::optional<int> number() {
    std::size_t end = pos_;
    while (end < s_.size() && is_digit(s_[end]) && end - pos_ < 6) ++end;
    if (end == pos_ || (end < s_.size() && is_alnum(s_[end]))) return std::nullopt;
    const int value = std::stoi(std::string(s_.substr(pos_, end - pos_)));
    pos_ = end;
    return value;
  }

  // Consumes `token` if present; word tokens must end at a word boundary.
  bool accept(std::string_view token) {
    if (s_.substr(pos_, token.size()) != token) return false;
    const std::size_t end = pos_ + token.size();
    if (is_alnum(token.back()) && end < s_.size() && is_alnum(s_[end])) return false;
    pos_ = end;
    return true;
  }

  bool at_digit() const { return pos_ < s_.size() && is_digit(s_[pos_]); }

 private:
  std::string_view s_;
  std::size_t pos_;
};

bool accept_range_separator(Scanner& sc) {
  static constexpr std::string_view kSeparators[] = {
      "-", "\xE2\x80\x93", "\xE2\x80\x94", "through", "thru", "to"};
  for (auto sep : kSeparators) {
    if (sc.accept(sep)) return true;
  }
  return false;
}

bool accept_list_separator(Scanner& sc) {
  bool any = false;
  while (true) {
    sc.skip_spaces();
    if (sc.accept(",") || sc.accept("and/or") || sc.accept("or") || sc.accept("and")) {
      any = true;
      continue;
    }
    return any;
  }
}

// Parses "N", "N-M", "N, M, or K" ... after the word "claim(s)".
void parse_reference_list(Scanner& sc, std::set<int>& out) {
  while (true) {
    sc.skip_spaces();
    const auto first = sc.number();
    if (!first) return;
    Scanner lookahead = sc;
    lookahead.skip_spaces();
    if (accept_range_separator(lookahead)) {
      lookahead.skip_spaces();
      if (const auto last = lookahead.number()) {
        sc = lookahead;
        if (*last < *first || *last - *first > kMaxRangeSpan) {
          spdlog::debug("skipping unparseable claim range {}-{}", *first, *last);
        } else {
          for (int n = *first; n <= *last; ++n) out.insert(n);
        }
      } else {
        out.insert(*first);
      }
    } else {
      out.insert(*first);
    }
    Scanner after = sc;
    if (!accept_list_separator(after)) return;
    after.skip_spaces();
    if (!after.at_digit()) return;
    sc = after;
  }
}

}  // namespace

std::vector<int> parse_claim_dependencies(std::string_view claim_text,
                                          std::optional<int> own_number) {
  const auto lower = text::to_lower_ascii(claim_text);
  std::set<int> refs;

  for (std::size_t pos = lower.find("claim"); pos != std::string::npos;
       pos = lower.find("claim", pos + 1)) {
    if (pos > 0 && is_alnum(lower[pos - 1])) continue;
    Scanner sc(lower, pos + 5);
    sc.accept("s");
    const auto before_space = sc.pos();
    sc.skip_spaces();
    if (sc.pos() == before_space) continue;
    parse_reference_list(sc, refs);
  }

  static const std::regex kPreceding(
      R"(\b(any|all|each|one)\b[^.;:]{0,24}?\b(preceding|previous|foregoing|prior)\s+claims?\b)");
  if (std::regex_search(lower, kPreceding)) {
    if (own_number) {
      for (int n = 1; n < *own_number; ++n) refs.insert(n);
    } else {
      spdlog::debug("'preceding claim' reference without own claim number; skipped");
    }
  }

  if (own_number) refs.erase(*own_number);
  refs.erase(0);
  return {refs.begin(), refs.end()};
}

std::vector<std::string> segment_description_paragraphs(std::string_view description_text) {
  if (text::trim(description_text).empty()) {
    throw Error(ErrorKind::kData, "unusable specification document: description is empty");
  }
  static const std::regex kMarker(R"(\[\d{3,5}\])");

  std::vector<std::string> blocks;
  std::string current;
  for (const auto& line : text::split(description_text, '\n')) {
    if (text::trim(line).empty()) {
      if (!current.empty()) blocks.push_back(std::move(current));
      current.clear();
      continue;
    }
    if (!current.empty()) current.push_back('\n');
    current += line;
  }
  if (!current.empty()) blocks.push_back(std::move(current));

  std::vector<std::string> paragraphs;
  for (const auto& block : blocks) {
    std::size_t start = 0;
    for (std::sregex_iterator it(block.begin(), block.end(), kMarker), end; it != end; ++it) {
      const auto piece = text::collapse_whitespace(
          std::string_view(block).substr(start, static_cast<std::size_t>(it->position()) - start));
      if (!piece.empty()) paragraphs.push_back(piece);
      start = static_cast<std::size_t>(it->position() + it->length());
    }
    const auto tail = text::collapse_whitespace(std::string_view(block).substr(start));
    if (!tail.empty()) paragraphs.push_back(tail);
  }
  return paragraphs;
}

int feature_segment_count(std::string_view claim_text) {
  const auto lower = text::to_lower_ascii(claim_text);
  int count = 0;
  auto count_segment = [&](std::string_view segment) {
    if (std::any_of(segment.begin(), segment.end(), is_alnum)) ++count;
  };
  std::size_t start = 0;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    const bool wherein = lower.compare(i, 7, "wherein") == 0 &&
                         (i == 0 || !is_alnum(lower[i - 1])) &&
                         (i + 7 >= lower.size() || !is_alnum(lower[i + 7]));
    if (lower[i] == ';' || wherein) {
      count_segment(std::string_view(lower).substr(start, i - start));
      start = wherein ? i + 7 : i + 1;
      if (wherein) i += 6;
    }
  }
  count_segment(std::string_view(lower).substr(start));
  return count;
}

}  // namespace defexam::corpus
