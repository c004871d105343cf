// Copyright 2026 The defexam Authors
// SPDX-License-Identifier: Apache-2.0
#include "defexam/features/text_stats.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "defexam/common/assets.hpp"

namespace defexam::features {

namespace {

bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

const std::unordered_set<std::string>& word_set(std::string_view asset) {
  // One set per asset name; the two lists are loaded on first use.
  static const auto load = [](std::string_view name) {
    std::unordered_set<std::string> out;
    for (auto& w : assets::lines(assets::require(name))) out.insert(std::move(w));
    return out;
  };
  static const auto stop = load("lexicons/stopwords_en_v1.txt");
  static const auto easy = load("lexicons/dale_chall_easy_words_v1.txt");
  return asset == "stop" ? stop : easy;
}

bool is_vowel_letter(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (is_alnum(c)) {
      cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

int count_syllables(std::string_view word) {
  int groups = 0;
  bool in_group = false;
  for (char raw : word) {
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(raw)));
    const bool v = is_vowel_letter(c);
    if (v && !in_group) ++groups;
    in_group = v;
  }
  const auto n = word.size();
  if (n >= 2 && std::tolower(static_cast<unsigned char>(word[n - 1])) == 'e') {
    const char prev = static_cast<char>(std::tolower(static_cast<unsigned char>(word[n - 2])));
    const bool consonant_le = prev == 'l' && n >= 3 &&
                              !is_vowel_letter(static_cast<char>(
                                  std::tolower(static_cast<unsigned char>(word[n - 3]))));
    if (!is_vowel_letter(prev) && !consonant_le) --groups;
  }
  return groups < 1 ? 1 : groups;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  auto flush = [&](std::size_t end) {
    const auto piece = std::string(text.substr(begin, end - begin));
    if (!tokenize(piece).empty()) out.push_back(piece);
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if ((c == '.' || c == '?' || c == ';') && i + 1 < text.size() &&
        std::isspace(static_cast<unsigned char>(text[i + 1]))) {
      flush(i + 1);
      begin = i + 1;
    }
  }
  flush(text.size());
  return out;
}

Readability readability(std::string_view text) {
  const auto words = tokenize(text);
  if (words.empty()) return {};
  const double w = static_cast<double>(words.size());
  const double s = static_cast<double>(std::max<std::size_t>(1, split_sentences(text).size()));
  double syllables = 0, complex = 0, chars = 0, difficult = 0;
  for (const auto& word : words) {
    const int syl = count_syllables(word);
    syllables += syl;
    if (syl >= 3) ++complex;
    chars += static_cast<double>(word.size());
    const bool alphabetic = std::all_of(word.begin(), word.end(),
                                        [](char c) { return std::isalpha(static_cast<unsigned char>(c)); });
    if (alphabetic && !is_easy_word(word)) ++difficult;
  }
  Readability r;
  r.flesch_reading_ease = 206.835 - 1.015 * (w / s) - 84.6 * (syllables / w);
  r.flesch_kincaid_grade = 0.39 * (w / s) + 11.8 * (syllables / w) - 15.59;
  r.gunning_fog = 0.4 * (w / s + 100.0 * complex / w);
  r.automated_readability_index = 4.71 * (chars / w) + 0.5 * (w / s) - 21.43;
  const double difficult_pct = 100.0 * difficult / w;
  r.dale_chall = 0.1579 * difficult_pct + 0.0496 * (w / s) + (difficult_pct > 5.0 ? 3.6365 : 0.0);
  return r;
}

bool is_stopword(std::string_view token) { return word_set("stop").count(std::string(token)) > 0; }
bool is_easy_word(std::string_view token) { return word_set("easy").count(std::string(token)) > 0; }

// Porter stemmer, following the step structure of the original description.
namespace {

class Stemmer {
 public:
  explicit Stemmer(std::string word) : b_(std::move(word)) {}

  std::string run() {
    if (b_.size() <= 2) return b_;
    step1ab();
    step1c();
    step2();
    step3();
    step4();
    step5();
    return b_;
  }

 private:
  bool cons(std::size_t i) const {
    switch (b_[i]) {
      case 'a': case 'e': case 'i': case 'o': case 'u':
        return false;
      case 'y':
        return i == 0 || !cons(i - 1);
      default:
        return true;
    }
  }

  // Number of VC sequences in b_[0, j_].
  int m() const {
    int n = 0;
    std::size_t i = 0;
    const std::size_t end = j_ + 1;
    while (i < end && cons(i)) ++i;
    while (i < end) {
      while (i < end && !cons(i)) ++i;
      if (i >= end) break;
      while (i < end && cons(i)) ++i;
      ++n;
    }
    return n;
  }

  bool vowel_in_stem() const {
    for (std::size_t i = 0; i <= j_; ++i) {
      if (!cons(i)) return true;
    }
    return false;
  }

  bool double_cons(std::size_t i) const { return i >= 1 && b_[i] == b_[i - 1] && cons(i); }

  bool cvc(std::size_t i) const {
    if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
    const char c = b_[i];
    return c != 'w' && c != 'x' && c != 'y';
  }

  // Sets j_ to the stem end when b_ ends with s.
  bool ends(std::string_view s) {
    if (s.size() > b_.size() || b_.compare(b_.size() - s.size(), s.size(), s) != 0) return false;
    stem_len_ = b_.size() - s.size();
    j_ = stem_len_ == 0 ? 0 : stem_len_ - 1;
    return true;
  }

  bool has_stem() const { return stem_len_ > 0; }

  void set_to(std::string_view s) { b_ = b_.substr(0, stem_len_) + std::string(s); }

  void replace_if_m(std::string_view s) {
    if (has_stem() && m() > 0) set_to(s);
  }

  void step1ab() {
    if (b_.back() == 's') {
      if (ends("sses")) {
        b_.resize(b_.size() - 2);
      } else if (ends("ies")) {
        set_to("i");
      } else if (b_.size() >= 2 && b_[b_.size() - 2] != 's') {
        b_.pop_back();
      }
    }
    if (ends("eed")) {
      if (has_stem() && m() > 0) b_.pop_back();
      return;
    }
    if ((ends("ed") || ends("ing")) && has_stem() && vowel_in_stem()) {
      b_.resize(stem_len_);
      const auto k = b_.size() - 1;
      if (ends("at")) {
        set_to("ate");
      } else if (ends("bl")) {
        set_to("ble");
      } else if (ends("iz")) {
        set_to("ize");
      } else if (double_cons(k)) {
        const char c = b_[k];
        if (c != 'l' && c != 's' && c != 'z') b_.pop_back();
      } else {
        stem_len_ = b_.size();
        j_ = k;
        if (m() == 1 && cvc(k)) b_.push_back('e');
      }
    }
  }

  void step1c() {
    if (ends("y") && has_stem() && vowel_in_stem()) b_.back() = 'i';
  }

  void step2() {
    static const std::pair<const char*, const char*> kRules[] = {
        {"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"},  {"anci", "ance"},
        {"izer", "ize"},    {"bli", "ble"},     {"alli", "al"},    {"entli", "ent"},
        {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
        {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
        {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},  {"biliti", "ble"},
        {"logi", "log"}};
    for (const auto& [suffix, repl] : kRules) {
      if (ends(suffix)) {
        replace_if_m(repl);
        return;
      }
    }
  }

  void step3() {
    static const std::pair<const char*, const char*> kRules[] = {
        {"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
        {"ical", "ic"},  {"ful", ""},   {"ness", ""}};
    for (const auto& [suffix, repl] : kRules) {
      if (ends(suffix)) {
        replace_if_m(repl);
        return;
      }
    }
  }

  void step4() {
    static const char* kSuffixes[] = {"al",   "ance", "ence", "er",  "ic",  "able", "ible",
                                      "ant",  "ement", "ment", "ent", "ion", "ou",   "ism",
                                      "ate",  "iti",  "ous",  "ive", "ize"};
    for (const char* suffix : kSuffixes) {
      if (!ends(suffix)) continue;
      if (std::string_view(suffix) == "ion") {
        if (!has_stem() || (b_[j_] != 's' && b_[j_] != 't')) return;
      }
      if (has_stem() && m() > 1) b_.resize(stem_len_);
      return;
    }
  }

  void step5() {
    stem_len_ = b_.size();
    j_ = b_.size() - 1;
    if (b_.back() == 'e') {
      j_ = b_.size() - 2;
      const int a = m();
      if (a > 1 || (a == 1 && !cvc(b_.size() - 2))) b_.pop_back();
    }
    j_ = b_.size() - 1;
    if (b_.back() == 'l' && double_cons(b_.size() - 1) && m() > 1) b_.pop_back();
  }

  std::string b_;
  std::size_t j_ = 0;
  std::size_t stem_len_ = 0;
};

}  // namespace

std::string porter_stem(std::string_view word) { return Stemmer(std::string(word)).run(); }

}  // namespace defexam::features
