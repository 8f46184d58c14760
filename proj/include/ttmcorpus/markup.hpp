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

// Bracketed span markup: `[Tag : text]`, optionally `[TAG{FAMILY}: text]`,
// nested to any depth. Parsing strips the markup into a plain sentence and
// a forest of labeled half-open byte ranges over it.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ttmcorpus/error.hpp"
#include "ttmcorpus/labels.hpp"
#include "ttmcorpus/text.hpp"

namespace ttm {

struct SpanNode {
  std::string label;  // canonical
  Family family = Family::kOther;
  std::size_t start = 0;  // [start, end) over AnnotatedSentence::plain_text
  std::size_t end = 0;
  std::vector<SpanNode> children;

  std::size_t width() const { return end - start; }
  bool operator==(const SpanNode&) const = default;
};

struct AnnotatedSentence {
  std::string plain_text;
  std::vector<SpanNode> roots;

  bool operator==(const AnnotatedSentence&) const = default;
};

// Pre-order walk. `ancestors` runs from the root down to the parent.
using SpanVisitor = std::function<void(const SpanNode&, const std::vector<const SpanNode*>& ancestors)>;

inline void for_each_span(const std::vector<SpanNode>& nodes, const SpanVisitor& fn,
                          std::vector<const SpanNode*>& ancestors) {
  for (const auto& n : nodes) {
    fn(n, ancestors);
    ancestors.push_back(&n);
    for_each_span(n.children, fn, ancestors);
    ancestors.pop_back();
  }
}

inline void for_each_span(const AnnotatedSentence& s, const SpanVisitor& fn) {
  std::vector<const SpanNode*> ancestors;
  for_each_span(s.roots, fn, ancestors);
}

inline std::string_view covered_text(const AnnotatedSentence& s, const SpanNode& n) {
  return std::string_view(s.plain_text).substr(n.start, n.end - n.start);
}

// Checks the forest invariants: non-empty in-bounds ranges, children inside
// parents, siblings sorted and disjoint, no edge whitespace inside a span.
// Returns a description of the first violation.
inline std::optional<std::string> find_invariant_violation(const AnnotatedSentence& s) {
  const std::size_t len = s.plain_text.size();
  std::function<std::optional<std::string>(const std::vector<SpanNode>&, std::size_t, std::size_t)> check =
      [&](const std::vector<SpanNode>& nodes, std::size_t lo, std::size_t hi) -> std::optional<std::string> {
    std::size_t prev_end = lo;
    for (const auto& n : nodes) {
      if (n.start >= n.end) return "empty span '" + n.label + "'";
      if (n.end > len) return "span '" + n.label + "' past end of text";
      if (n.start < prev_end || n.end > hi) return "span '" + n.label + "' overlaps a sibling or leaves its parent";
      if (is_space(s.plain_text[n.start]) || is_space(s.plain_text[n.end - 1])) {
        return "span '" + n.label + "' begins or ends with whitespace";
      }
      prev_end = n.end;
      if (auto bad = check(n.children, n.start, n.end)) return bad;
    }
    return std::nullopt;
  };
  return check(s.roots, 0, len);
}

namespace detail {

struct OpenSpan {
  std::size_t raw_pos;
  std::string label;
  Family family;
  std::optional<std::size_t> start;
  std::vector<SpanNode> children;
};

inline Error markup_error(ErrorKind kind, std::size_t pos, const std::string& what) {
  return Error(kind, what + " at position " + std::to_string(pos));
}

}  // namespace detail

// Whitespace runs in the text become single spaces; whitespace right after a
// tag's ':' and at the sentence edges is dropped.
inline AnnotatedSentence parse_sentence(std::string_view raw, const LabelRegistry& registry) {
  AnnotatedSentence out;
  std::string& text = out.plain_text;
  std::vector<detail::OpenSpan> stack;
  bool pending_space = false;

  std::size_t i = 0;
  while (i < raw.size()) {
    const char c = raw[i];
    if (c == '[') {
      std::size_t j = i + 1;
      while (j < raw.size() && raw[j] != ':' && raw[j] != '{' && raw[j] != '[' && raw[j] != ']') ++j;
      if (j == raw.size()) throw detail::markup_error(ErrorKind::kUnbalancedBracket, i, "unclosed '['");
      if (raw[j] == '[' || raw[j] == ']') {
        throw detail::markup_error(ErrorKind::kMalformedTag, i, "tag without ':'");
      }
      const std::string_view tag = trim(raw.substr(i + 1, j - i - 1));
      if (tag.empty()) throw detail::markup_error(ErrorKind::kMalformedTag, i, "empty tag");

      std::optional<Family> suffix;
      if (raw[j] == '{') {
        const std::size_t close = raw.find('}', j);
        if (close == std::string_view::npos) {
          throw detail::markup_error(ErrorKind::kMalformedTag, j, "unclosed family suffix");
        }
        const std::string_view fam = raw.substr(j + 1, close - j - 1);
        suffix = parse_family(fam);
        if (!suffix) {
          throw detail::markup_error(ErrorKind::kMalformedTag, j, "unknown family '" + std::string(fam) + "'");
        }
        j = close + 1;
        while (j < raw.size() && is_space(raw[j])) ++j;
        if (j == raw.size() || raw[j] != ':') {
          throw detail::markup_error(ErrorKind::kMalformedTag, i, "expected ':' after family suffix");
        }
      }

      const LabelInfo* info = registry.find(tag);
      if (info == nullptr) {
        throw detail::markup_error(ErrorKind::kUnknownTag, i, "'" + std::string(tag) + "'");
      }
      if (suffix && *suffix != info->family) {
        throw detail::markup_error(ErrorKind::kFamilyMismatch, i,
                                   "'" + std::string(tag) + "' is " + std::string(family_name(info->family)) +
                                       ", marked " + std::string(family_name(*suffix)));
      }
      stack.push_back(detail::OpenSpan{i, info->name, info->family, std::nullopt, {}});
      i = j + 1;
      while (i < raw.size() && is_space(raw[i])) ++i;
      continue;
    }

    if (c == ']') {
      if (stack.empty()) throw detail::markup_error(ErrorKind::kUnbalancedBracket, i, "unmatched ']'");
      detail::OpenSpan top = std::move(stack.back());
      stack.pop_back();
      if (!top.start) {
        throw detail::markup_error(ErrorKind::kEmptySpan, top.raw_pos, "span '" + top.label + "' has no text");
      }
      SpanNode node{std::move(top.label), top.family, *top.start, text.size(), std::move(top.children)};
      (stack.empty() ? out.roots : stack.back().children).push_back(std::move(node));
      ++i;
      continue;
    }

    if (is_space(c)) {
      if (!text.empty()) pending_space = true;
      ++i;
      continue;
    }

    if (pending_space) {
      text += ' ';
      pending_space = false;
    }
    for (auto& open : stack) {
      if (!open.start) open.start = text.size();
    }
    text += c;
    ++i;
  }

  if (!stack.empty()) {
    throw detail::markup_error(ErrorKind::kUnbalancedBracket, stack.back().raw_pos, "unclosed '['");
  }
  return out;
}

namespace detail {

inline void serialize_range(const std::string& text, const std::vector<SpanNode>& nodes, std::size_t lo,
                            std::size_t hi, std::string& out) {
  std::size_t pos = lo;
  for (const auto& n : nodes) {
    out.append(text, pos, n.start - pos);
    out += '[';
    out += n.label;
    out += " : ";
    serialize_range(text, n.children, n.start, n.end, out);
    out += ']';
    pos = n.end;
  }
  out.append(text, pos, hi - pos);
}

}  // namespace detail

// Canonical `[label : text]` markup. Requires an invariant-valid sentence
// whose text holds no brackets.
inline std::string serialize_sentence(const AnnotatedSentence& s) {
  std::string out;
  detail::serialize_range(s.plain_text, s.roots, 0, s.plain_text.size(), out);
  return out;
}

}  // namespace ttm
