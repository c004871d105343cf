// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#include "defexam/oa/matching.hpp"

#include <algorithm>
#include <cmath>

#include "defexam/common/text.hpp"
#include "defexam/common/utf8.hpp"

namespace defexam::oa {

namespace {

bool is_space(char32_t c) {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' || c == U'\v' ||
         c == 0x00A0 || c == 0x2007 || c == 0x202F || (c >= 0x2000 && c <= 0x200A);
}

char32_t fold(char32_t c) {
  switch (c) {
    case 0x2018: case 0x2019: case 0x201A: case 0x201B: case 0x2032:
      return U'\'';
    case 0x201C: case 0x201D: case 0x201E: case 0x201F: case 0x2033:
      return U'"';
    case 0x2010: case 0x2011: case 0x2012: case 0x2013: case 0x2014: case 0x2015: case 0x2212:
      return U'-';
    default:
      break;
  }
  if (c >= U'A' && c <= U'Z') return c + 32;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 32;  // Latin-1 capitals
  return c;
}

bool is_quote(char32_t c) { return c == U'\'' || c == U'"'; }

}  // namespace

NormalizedText normalize_for_matching(std::string_view text, bool strip_enclosing_quotes) {
  const auto scalars = utf8::decode(text);
  NormalizedText out;
  std::size_t i = 0;
  while (i < scalars.size()) {
    if (is_space(scalars[i])) {
      const auto begin = i;
      while (i < scalars.size() && is_space(scalars[i])) ++i;
      if (!out.text.empty() && i < scalars.size()) {
        out.text.push_back(U' ');
        out.origin_begin.push_back(begin);
        out.origin_end.push_back(i);
      }
      continue;
    }
    out.text.push_back(fold(scalars[i]));
    out.origin_begin.push_back(i);
    out.origin_end.push_back(i + 1);
    ++i;
  }
  if (strip_enclosing_quotes && out.text.size() >= 2 && is_quote(out.text.front()) &&
      out.text.back() == out.text.front()) {
    auto trim = [&](std::size_t first, std::size_t last) {
      out.text = out.text.substr(first, last - first);
      out.origin_begin = {out.origin_begin.begin() + first, out.origin_begin.begin() + last};
      out.origin_end = {out.origin_end.begin() + first, out.origin_end.begin() + last};
    };
    std::size_t first = 1, last = out.text.size() - 1;
    while (first < last && out.text[first] == U' ') ++first;
    while (last > first && out.text[last - 1] == U' ') --last;
    trim(first, last);
  }
  return out;
}

double similarity(std::u32string_view a, std::u32string_view b) {
  const auto longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(text::edit_distance(a, b)) / static_cast<double>(longest);
}

std::optional<corpus::RecitationSpan> fuzzy_match_recitation(std::string_view recitation,
                                                             std::string_view claim_text,
                                                             const MatchOptions& options) {
  const auto needle = normalize_for_matching(recitation, true);
  const auto hay = normalize_for_matching(claim_text);
  const auto& r = needle.text;
  const auto& c = hay.text;
  if (r.empty() || c.empty()) return std::nullopt;

  const std::size_t len = r.size();
  const std::size_t n = c.size();
  auto span_of = [&](std::size_t start, std::size_t width, double score) {
    return corpus::RecitationSpan{0, hay.origin_begin[start], hay.origin_end[start + width - 1],
                                  score};
  };

  if (const auto pos = c.find(r); pos != std::u32string::npos) return span_of(pos, len, 1.0);

  const double eps = 1e-9;
  std::size_t lo = static_cast<std::size_t>(
      std::max(1.0, std::ceil(static_cast<double>(len) * (1.0 - options.window_tolerance) - eps)));
  std::size_t hi = static_cast<std::size_t>(
      std::floor(static_cast<double>(len) * (1.0 + options.window_tolerance) + eps));
  hi = std::max(hi, len);
  lo = std::min(lo, len);
  hi = std::min(hi, n);
  lo = std::min(lo, hi);

  double best_score = -1.0;
  std::size_t best_start = 0, best_width = 0;
  // One DP per start: row j holds distances between r[0, i) and c[start, start + j).
  std::vector<std::size_t> prev(hi + 1), cur(hi + 1);
  // Windows never begin or end on a space, so a span re-normalizes to exactly
  // the window it was scored on.
  for (std::size_t start = 0; start + lo <= n; ++start) {
    if (c[start] == U' ') continue;
    const std::size_t max_w = std::min(hi, n - start);
    for (std::size_t j = 0; j <= max_w; ++j) prev[j] = j;
    for (std::size_t i = 1; i <= len; ++i) {
      cur[0] = i;
      for (std::size_t j = 1; j <= max_w; ++j) {
        const std::size_t sub = prev[j - 1] + (r[i - 1] == c[start + j - 1] ? 0 : 1);
        cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
      }
      std::swap(prev, cur);
    }
    for (std::size_t w = lo; w <= max_w; ++w) {
      if (c[start + w - 1] == U' ') continue;
      const double score =
          1.0 - static_cast<double>(prev[w]) / static_cast<double>(std::max(len, w));
      if (score > best_score + eps) {
        best_score = score;
        best_start = start;
        best_width = w;
      }
    }
  }
  if (best_width == 0 || best_score < options.threshold - eps) return std::nullopt;
  return span_of(best_start, best_width, best_score);
}

std::string scalar_substr(std::string_view text, std::size_t start, std::size_t end) {
  const auto scalars = utf8::decode(text);
  end = std::min(end, scalars.size());
  start = std::min(start, end);
  return utf8::encode(std::u32string_view(scalars).substr(start, end - start));
}

}  // namespace defexam::oa
