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

#pragma once

#include <algorithm>
#include <cstddef>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ttmcorpus/builtin_data.hpp"
#include "ttmcorpus/error.hpp"
#include "ttmcorpus/labels.hpp"
#include "ttmcorpus/text.hpp"

namespace ttm {

// Which processes of change commonly drive progress from which stage.
// Rows are processes, columns stages, both in registry order.
class CompatibilityMatrix {
 public:
  explicit CompatibilityMatrix(const LabelRegistry& registry)
      : stages_(registry.names(Family::kSoc)),
        processes_(registry.names(Family::kPoc)),
        cells_(stages_.size() * processes_.size(), false) {}

  bool compatible(std::string_view stage, std::string_view process) const {
    return cells_[cell(stage, process)];
  }

  void set(std::string_view stage, std::string_view process, bool value) { cells_[cell(stage, process)] = value; }

  const std::vector<std::string>& stages() const { return stages_; }
  const std::vector<std::string>& processes() const { return processes_; }

  bool operator==(const CompatibilityMatrix&) const = default;

 private:
  std::size_t cell(std::string_view stage, std::string_view process) const {
    const auto s = std::find(stages_.begin(), stages_.end(), stage);
    const auto p = std::find(processes_.begin(), processes_.end(), process);
    if (s == stages_.end()) throw Error(ErrorKind::kUnknownLabel, "stage '" + std::string(stage) + "'");
    if (p == processes_.end()) throw Error(ErrorKind::kUnknownLabel, "process '" + std::string(process) + "'");
    return static_cast<std::size_t>(p - processes_.begin()) * stages_.size() +
           static_cast<std::size_t>(s - stages_.begin());
  }

  std::vector<std::string> stages_;
  std::vector<std::string> processes_;
  std::vector<bool> cells_;
};

// Every process needs a stage, every stage a process, and consciousness
// raising must cover exactly the three pre-action stages.
inline void check_matrix(const CompatibilityMatrix& m) {
  for (const auto& p : m.processes()) {
    const bool any = std::any_of(m.stages().begin(), m.stages().end(),
                                 [&](const std::string& s) { return m.compatible(s, p); });
    if (!any) throw Error(ErrorKind::kBadFormat, "process '" + p + "' is compatible with no stage");
  }
  for (const auto& s : m.stages()) {
    const bool any = std::any_of(m.processes().begin(), m.processes().end(),
                                 [&](const std::string& p) { return m.compatible(s, p); });
    if (!any) throw Error(ErrorKind::kBadFormat, "stage '" + s + "' admits no process");
  }
  for (const auto& s : m.stages()) {
    const bool expected = s == "Precontemplation" || s == "Contemplation" || s == "Preparation";
    if (m.compatible(s, "consciousness-raising") != expected) {
      throw Error(ErrorKind::kBadFormat, "consciousness-raising must be marked exactly for the pre-action stages");
    }
  }
}

// `process: stage, stage, ...` per line, `#` comments. Every process needs
// exactly one row.
inline CompatibilityMatrix load_matrix(std::istream& in, const LabelRegistry& registry) {
  CompatibilityMatrix m(registry);
  std::map<std::string, int> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view body = trim(strip_comment(line));
    if (body.empty()) continue;
    const std::string where = "matrix line " + std::to_string(lineno);
    const auto colon = body.find(':');
    if (colon == std::string_view::npos) throw Error(ErrorKind::kBadFormat, where + ": expected 'process: stages'");
    const std::string_view head = trim(body.substr(0, colon));
    const LabelInfo* process = registry.find(head);
    if (process == nullptr || process->family != Family::kPoc) {
      throw Error(ErrorKind::kUnknownLabel, where + ": '" + std::string(head) + "' is not a process of change");
    }
    if (!rows.emplace(process->name, lineno).second) {
      throw Error(ErrorKind::kBadFormat, where + ": second row for '" + process->name + "'");
    }
    for (const auto& item : split_list(body.substr(colon + 1))) {
      const LabelInfo* stage = registry.find(item);
      if (stage == nullptr || stage->family != Family::kSoc) {
        throw Error(ErrorKind::kUnknownLabel, where + ": '" + item + "' is not a stage of change");
      }
      m.set(stage->name, process->name, true);
    }
  }
  for (const auto& p : m.processes()) {
    if (!rows.contains(p)) throw Error(ErrorKind::kMissingRow, "no row for process '" + p + "'");
  }
  check_matrix(m);
  return m;
}

inline CompatibilityMatrix default_matrix() {
  std::istringstream in{std::string(builtin::kCompatibility)};
  return load_matrix(in, builtin_registry());
}

}  // namespace ttm
