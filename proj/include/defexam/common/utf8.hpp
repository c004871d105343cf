// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace defexam::utf8 {

// Invalid byte sequences decode to U+FFFD, one replacement per offending byte.
std::u32string decode(std::string_view text);
std::string encode(std::u32string_view text);
std::string encode(char32_t code_point);

/// Number of Unicode scalar values in `text`.
std::size_t length(std::string_view text);

}  // namespace defexam::utf8
