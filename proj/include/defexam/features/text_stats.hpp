// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace defexam::features {

/// Lower-cased runs of ASCII letters and digits; everything else separates.
std::vector<std::string> tokenize(std::string_view text);

/// Porter (1980) stem of a lower-case word.
std::string porter_stem(std::string_view word);

/// Vowel groups (a, e, i, o, u, y) with a silent-e correction; at least 1.
int count_syllables(std::string_view word);

/// Sentences split at '.', '?' or ';' followed by whitespace. Text without a
/// terminator is one sentence; segments without tokens are dropped.
std::vector<std::string> split_sentences(std::string_view text);

struct Readability {
  double flesch_reading_ease = 0;
  double flesch_kincaid_grade = 0;
  double gunning_fog = 0;
  double automated_readability_index = 0;
  double dale_chall = 0;
};

/// Standard readability formulas over tokenize() words. Texts without words
/// score 0 on every metric.
Readability readability(std::string_view text);

bool is_stopword(std::string_view token);
bool is_easy_word(std::string_view token);  // Dale-Chall familiar word list

}  // namespace defexam::features
