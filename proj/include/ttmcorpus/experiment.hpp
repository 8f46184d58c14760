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

// End-to-end classification experiment: for each label family, a majority
// baseline plus cross-validated accuracy with whole sentences and with
// oracle segments as classifier input.

#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "ttmcorpus/corpus.hpp"
#include "ttmcorpus/crossval.hpp"
#include "ttmcorpus/features.hpp"
#include "ttmcorpus/interchange.hpp"
#include "ttmcorpus/segmentation.hpp"

namespace ttm {

struct ExperimentConfig {
  std::vector<Family> families{kAllFamilies.begin(), kAllFamilies.end()};
  std::vector<Mode> modes{Mode::kUnsegmented, Mode::kSegmented};
  std::size_t k = 10;
  TrainOptions train;
  std::uint64_t seed = 7;
};

inline std::vector<LabeledTokens> prepare(const std::vector<Instance>& instances, const TokenPipelineConfig& pipeline) {
  std::vector<LabeledTokens> out;
  out.reserve(instances.size());
  for (const auto& inst : instances) out.push_back({preprocess(inst.text, pipeline), inst.gold});
  return out;
}

// A failed cell keeps its error text instead of a report.
struct ExperimentCell {
  Mode mode = Mode::kUnsegmented;
  std::size_t instances = 0;
  std::optional<EvalReport> report;
  std::string error;
};

struct ExperimentRow {
  Family family = Family::kSoc;
  std::optional<MajorityBaseline> majority;  // over unsegmented instances
  std::string majority_error;
  std::vector<ExperimentCell> cells;

  const ExperimentCell* cell(Mode m) const {
    for (const auto& c : cells) {
      if (c.mode == m) return &c;
    }
    return nullptr;
  }
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<ExperimentRow> rows;
};

inline ExperimentReport run_experiment(const Corpus& corpus, const ExperimentConfig& cfg,
                                       const TokenPipelineConfig& pipeline) {
  if (cfg.k < 2) throw Error(ErrorKind::kBadFormat, "k must be at least 2");
  ExperimentReport rep{cfg, {}};
  const LogRegTrainer trainer{cfg.train};
  for (const Family f : cfg.families) {
    ExperimentRow row;
    row.family = f;
    try {
      std::vector<Label> golds;
      for (const auto& inst : extract_instances(corpus, f, Mode::kUnsegmented)) golds.push_back(inst.gold);
      row.majority = majority_baseline(golds);
    } catch (const Error& e) {
      row.majority_error = e.what();
    }
    for (const Mode m : cfg.modes) {
      ExperimentCell cell;
      cell.mode = m;
      try {
        const auto instances = extract_instances(corpus, f, m);
        cell.instances = instances.size();
        EvalReport r = cross_validate(prepare(instances, pipeline), cfg.k, cfg.seed, trainer);
        r.metadata["family"] = family_name(f);
        r.metadata["mode"] = mode_name(m);
        r.metadata["lambda"] = format_double(cfg.train.lambda);
        r.metadata["max_iter"] = std::to_string(cfg.train.max_iter);
        r.metadata["tol"] = format_double(cfg.train.tol);
        cell.report = std::move(r);
      } catch (const Error& e) {
        cell.error = Error(e).with_context(std::string(family_name(f)) + "/" + std::string(mode_name(m))).what();
      }
      row.cells.push_back(std::move(cell));
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

inline Json to_json(const EvalReport& r) {
  Json j;
  j["accuracy"] = r.accuracy;
  j["correct"] = r.correct();
  j["total"] = r.total();
  j["labels"] = r.labels;
  j["confusion"] = r.confusion;
  j["fold_accuracies"] = r.fold_accuracies;
  j["fold_sizes"] = r.fold_sizes;
  Json meta = Json::object();
  for (const auto& [k, v] : r.metadata) meta[k] = v;
  j["metadata"] = std::move(meta);
  return j;
}

inline Json to_json(const ExperimentReport& rep) {
  Json j;
  Json cfg;
  cfg["k"] = rep.config.k;
  cfg["seed"] = rep.config.seed;
  cfg["lambda"] = rep.config.train.lambda;
  cfg["max_iter"] = rep.config.train.max_iter;
  cfg["tol"] = rep.config.train.tol;
  j["config"] = std::move(cfg);
  Json rows = Json::array();
  for (const auto& row : rep.rows) {
    Json jr;
    jr["family"] = family_name(row.family);
    if (row.majority) {
      jr["majority"] = {{"label", row.majority->label}, {"accuracy", row.majority->accuracy}};
    } else {
      jr["majority"] = {{"error", row.majority_error}};
    }
    for (const auto& c : row.cells) {
      Json jc;
      jc["instances"] = c.instances;
      if (c.report) {
        jc["report"] = to_json(*c.report);
      } else {
        jc["error"] = c.error;
      }
      jr[std::string(mode_name(c.mode))] = std::move(jc);
    }
    rows.push_back(std::move(jr));
  }
  j["rows"] = std::move(rows);
  return j;
}

inline std::string format_accuracy(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

// Rows SOC / POC / OTHER; columns majority, unsegmented, segmented.
inline std::string format_table(const ExperimentReport& rep) {
  const auto pad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
  };
  std::string out = pad("task", 8) + pad("majority", 12);
  for (const Mode m : rep.config.modes) out += pad(std::string(mode_name(m)), 14);
  out.pop_back();
  while (!out.empty() && out.back() == ' ') out.pop_back();
  out += '\n';
  std::vector<std::string> errors;
  for (const auto& row : rep.rows) {
    std::string line = pad(std::string(family_name(row.family)), 8);
    line += pad(row.majority ? format_accuracy(row.majority->accuracy) : "error", 12);
    for (const auto& c : row.cells) {
      line += pad(c.report ? format_accuracy(c.report->accuracy) : "error", 14);
      if (!c.report) errors.push_back(c.error);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + '\n';
  }
  for (const auto& e : errors) out += "# " + e + '\n';
  return out;
}

}  // namespace ttm
