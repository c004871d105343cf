// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace defexam::text {

std::string_view trim(std::string_view s);
std::string to_lower_ascii(std::string_view s);

/// Collapses every run of ASCII whitespace into one space and trims the ends.
std::string collapse_whitespace(std::string_view s);

std::vector<std::string> split(std::string_view s, char delimiter);

bool contains_case_insensitive(std::string_view haystack, std::string_view needle);

/// Replaces each `{key}` occurrence for the given keys. Braces that do not
/// form a known placeholder are left untouched, so templates may embed JSON.
std::string render_template(std::string_view tmpl,
                            const std::map<std::string, std::string>& values);

/// Plain Levenshtein distance over arbitrary code units.
template <typename String>
std::size_t edit_distance(const String& a, const String& b);

}  // namespace defexam::text

#include "defexam/common/text_inl.hpp"
