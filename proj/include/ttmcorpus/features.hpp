// Copyright 2026 The ttmcorpus Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Text preprocessing and bag-of-words vectors.

#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ttmcorpus/builtin_data.hpp"
#include "ttmcorpus/error.hpp"
#include "ttmcorpus/text.hpp"

namespace ttm {

// Bytes >= 0x80 count as word characters so UTF-8 letters stay inside tokens.
inline bool is_token_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (u >= '0' && u <= '9') || (u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z') || u >= 0x80;
}

// Lowercase, split on anything that is not alphanumeric.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : text) {
    if (is_token_char(c)) {
      cur += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

struct SuffixRule {
  std::string suffix;
  std::string replacement;
  std::size_t min_stem = 0;
  bool needs_vowel = false;
  bool undouble = false;
  std::string not_after;
};

class Lemmatizer {
 public:
  Lemmatizer() = default;
  Lemmatizer(std::map<std::string, std::string> exceptions, std::vector<SuffixRule> rules)
      : exceptions_(std::move(exceptions)), rules_(std::move(rules)) {
    for (std::size_t i = 1; i < rules_.size(); ++i) {
      if (rules_[i].suffix.size() > rules_[i - 1].suffix.size()) {
        throw Error(ErrorKind::kBadFormat, "suffix rules must be ordered longest first ('" + rules_[i].suffix + "')");
      }
    }
  }

  static Lemmatizer load(std::istream& exceptions, std::istream& rules) {
    return Lemmatizer(parse_exceptions(exceptions), parse_rules(rules));
  }

  static Lemmatizer builtin() {
    std::istringstream ex{std::string(builtin::kLemmaExceptions)};
    std::istringstream ru{std::string(builtin::kLemmaRules)};
    return load(ex, ru);
  }

  // Applies the exception table, else the first matching rule, until the
  // result stops changing, so every lemma is a fixed point.
  std::string operator()(std::string_view token) const {
    std::string cur(token);
    for (int round = 0; round < 8; ++round) {
      std::string next = step(cur);
      if (next == cur) break;
      cur = std::move(next);
    }
    return cur;
  }

  const std::vector<SuffixRule>& rules() const { return rules_; }
  const std::map<std::string, std::string>& exceptions() const { return exceptions_; }

  static std::map<std::string, std::string> parse_exceptions(std::istream& in) {
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const std::string_view body = trim(strip_comment(line));
      if (body.empty()) continue;
      const auto parts = split_ws(body);
      if (parts.size() != 2) {
        throw Error(ErrorKind::kBadFormat, "lemma exceptions line " + std::to_string(lineno) + ": expected surface<TAB>lemma");
      }
      const auto [it, inserted] = out.emplace(parts[0], parts[1]);
      if (!inserted && it->second != parts[1]) {
        throw Error(ErrorKind::kBadFormat, "lemma exceptions line " + std::to_string(lineno) + ": '" + parts[0] + "' listed twice");
      }
    }
    return out;
  }

  static std::vector<SuffixRule> parse_rules(std::istream& in) {
    std::vector<SuffixRule> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const std::string_view body = trim(strip_comment(line));
      if (body.empty()) continue;
      const auto parts = split_ws(body);
      if (parts.size() < 3) {
        throw Error(ErrorKind::kBadFormat, "lemma rules line " + std::to_string(lineno) + ": expected suffix replacement min_stem");
      }
      SuffixRule r;
      r.suffix = parts[0];
      r.replacement = parts[1] == "-" ? "" : parts[1];
      r.min_stem = static_cast<std::size_t>(std::stoul(parts[2]));
      for (std::size_t i = 3; i < parts.size(); ++i) {
        const std::string& flag = parts[i];
        if (flag == "vowel") {
          r.needs_vowel = true;
        } else if (flag == "undouble") {
          r.undouble = true;
        } else if (flag.rfind("not-after=", 0) == 0) {
          r.not_after = flag.substr(10);
        } else {
          throw Error(ErrorKind::kBadFormat, "lemma rules line " + std::to_string(lineno) + ": unknown flag '" + flag + "'");
        }
      }
      out.push_back(std::move(r));
    }
    return out;
  }

 private:
  static bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y'; }

  std::string step(const std::string& token) const {
    if (const auto it = exceptions_.find(token); it != exceptions_.end()) return it->second;
    for (const auto& r : rules_) {
      if (token.size() <= r.suffix.size()) continue;
      if (token.compare(token.size() - r.suffix.size(), r.suffix.size(), r.suffix) != 0) continue;
      std::string stem = token.substr(0, token.size() - r.suffix.size());
      if (stem.size() < r.min_stem) continue;
      if (r.needs_vowel && std::none_of(stem.begin(), stem.end(), is_vowel)) continue;
      if (!r.not_after.empty() && r.not_after.find(stem.back()) != std::string::npos) continue;
      if (r.undouble && stem.size() >= 2) {
        const char last = stem.back();
        if (last == stem[stem.size() - 2] && !is_vowel(last) && last != 'l' && last != 's' && last != 'z' &&
            last != 'f') {
          stem.pop_back();
        }
      }
      return stem + r.replacement;
    }
    return token;
  }

  std::map<std::string, std::string> exceptions_;
  std::vector<SuffixRule> rules_;
};

inline std::set<std::string> parse_stopwords(std::istream& in) {
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view body = trim(strip_comment(line));
    if (!body.empty()) out.insert(to_lower(body));
  }
  if (out.empty()) throw Error(ErrorKind::kBadFormat, "stopword list is empty");
  return out;
}

struct TokenPipelineConfig {
  std::set<std::string> stopwords;
  Lemmatizer lemmatizer;

  static TokenPipelineConfig builtin() {
    std::istringstream sw{std::string(builtin::kStopwords)};
    return TokenPipelineConfig{parse_stopwords(sw), Lemmatizer::builtin()};
  }
};

// tokenize, lemmatize each token, drop stopwords; order preserved.
inline std::vector<std::string> preprocess(std::string_view text, const TokenPipelineConfig& config) {
  std::vector<std::string> out;
  for (const auto& tok : tokenize(text)) {
    std::string lemma = config.lemmatizer(tok);
    if (!config.stopwords.contains(lemma)) out.push_back(std::move(lemma));
  }
  return out;
}

// Dense token <-> index bijection, indices in order of first occurrence.
class Vocabulary {
 public:
  std::size_t add(const std::string& token) {
    const auto [it, inserted] = index_.emplace(token, tokens_.size());
    if (inserted) tokens_.push_back(token);
    return it->second;
  }

  std::optional<std::size_t> find(const std::string& token) const {
    const auto it = index_.find(token);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(const std::string& token) const { return index_.contains(token); }
  std::size_t size() const { return tokens_.size(); }
  const std::string& token(std::size_t i) const { return tokens_.at(i); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  bool operator==(const Vocabulary& o) const { return tokens_ == o.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
};

template <class TokenLists>
Vocabulary build_vocabulary(const TokenLists& lists) {
  Vocabulary v;
  for (const auto& list : lists) {
    for (const auto& tok : list) v.add(tok);
  }
  return v;
}

// Sorted (index, count) pairs; indices strictly increasing, counts >= 1.
struct SparseVector {
  std::vector<std::pair<std::size_t, double>> entries;

  bool empty() const { return entries.empty(); }
  bool operator==(const SparseVector&) const = default;
};

// Out-of-vocabulary tokens are dropped.
inline SparseVector vectorize(const std::vector<std::string>& tokens, const Vocabulary& vocab) {
  std::map<std::size_t, double> counts;
  for (const auto& tok : tokens) {
    if (const auto idx = vocab.find(tok)) counts[*idx] += 1.0;
  }
  SparseVector v;
  v.entries.assign(counts.begin(), counts.end());
  return v;
}

}  // namespace ttm
