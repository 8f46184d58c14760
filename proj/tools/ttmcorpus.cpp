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

// ttmcorpus: command line front end.
//
// Exit codes: 0 success, 1 validation errors found, 2 usage error,
// 3 data error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ttmcorpus.hpp"

namespace {

enum ExitCode { kOk = 0, kValidationFailed = 1, kUsage = 2, kDataError = 3 };

struct GlobalOptions {
  std::uint64_t seed = 7;
  std::string registry_overrides;
  std::string matrix;
  std::string stopwords;
  std::string lemma_exceptions;
  std::string lemma_rules;
  std::string format = "text";
};

class Usage : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ttm::LabelRegistry make_registry(const GlobalOptions& g) {
  ttm::LabelRegistry r = ttm::builtin_registry();
  if (!g.registry_overrides.empty()) {
    std::istringstream in(ttm::read_file(g.registry_overrides));
    r.apply_overrides(in);
  }
  return r;
}

ttm::CompatibilityMatrix make_matrix(const GlobalOptions& g, const ttm::LabelRegistry& r) {
  if (g.matrix.empty()) return ttm::default_matrix();
  std::istringstream in(ttm::read_file(g.matrix));
  return ttm::load_matrix(in, r);
}

ttm::TokenPipelineConfig make_pipeline(const GlobalOptions& g) {
  ttm::TokenPipelineConfig cfg = ttm::TokenPipelineConfig::builtin();
  if (!g.stopwords.empty()) {
    std::istringstream in(ttm::read_file(g.stopwords));
    cfg.stopwords = ttm::parse_stopwords(in);
  }
  if (!g.lemma_exceptions.empty() || !g.lemma_rules.empty()) {
    std::istringstream ex(g.lemma_exceptions.empty() ? std::string(ttm::builtin::kLemmaExceptions)
                                                     : ttm::read_file(g.lemma_exceptions));
    std::istringstream ru(g.lemma_rules.empty() ? std::string(ttm::builtin::kLemmaRules) : ttm::read_file(g.lemma_rules));
    cfg.lemmatizer = ttm::Lemmatizer::load(ex, ru);
  }
  return cfg;
}

std::string stem_of(const std::string& path) {
  const auto slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto dot = base.find_last_of('.');
  return dot == std::string::npos || dot == 0 ? base : base.substr(0, dot);
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Transcripts, or interchange JSON when the name ends in .json; "-" is stdin.
ttm::Corpus load_corpus(const std::string& path, const ttm::LabelRegistry& r) {
  try {
    if (ends_with(path, ".json")) return ttm::corpus_from_json(ttm::Json::parse(ttm::read_file(path)));
    if (path == "-") return ttm::parse_corpus(std::cin, r, "stdin");
    std::istringstream in(ttm::read_file(path));
    return ttm::parse_corpus(in, r, stem_of(path));
  } catch (const ttm::Error& e) {
    throw e.with_context(path);
  } catch (const nlohmann::json::exception& e) {
    throw ttm::Error(ttm::ErrorKind::kBadFormat, path + ": " + e.what());
  }
}

ttm::Corpus load_all(const std::vector<std::string>& paths, const ttm::LabelRegistry& r) {
  ttm::Corpus c;
  for (const auto& p : paths) c = ttm::concatenate(c, load_corpus(p, r));
  return c;
}

ttm::Family family_arg(const std::string& s) {
  const auto f = ttm::parse_family(s);
  if (!f) throw Usage("unknown family '" + s + "' (SOC, POC or OTHER)");
  return *f;
}

ttm::Mode mode_arg(const std::string& s) {
  if (s == "segmented") return ttm::Mode::kSegmented;
  if (s == "unsegmented") return ttm::Mode::kUnsegmented;
  throw Usage("unknown mode '" + s + "' (segmented or unsegmented)");
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ttm::Error(ttm::ErrorKind::kIo, "cannot write '" + path + "'");
  out << text;
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

std::string rtrim(std::string s) {
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

std::string format_eval(const ttm::EvalReport& r) {
  std::ostringstream out;
  out << "accuracy " << ttm::format_accuracy(r.accuracy) << " (" << r.correct() << "/" << r.total() << ")\n";
  if (r.fold_accuracies.size() > 1) {
    out << "folds   ";
    for (const double a : r.fold_accuracies) out << ' ' << ttm::format_accuracy(a);
    out << '\n';
  }
  std::size_t w = 6;
  for (const auto& l : r.labels) w = std::max(w, l.size() + 2);
  std::string head = pad("gold\\pred", w);
  for (const auto& l : r.labels) head += pad(l, w);
  out << rtrim(head) << '\n';
  for (std::size_t i = 0; i < r.labels.size(); ++i) {
    std::string line = pad(r.labels[i], w);
    for (const auto v : r.confusion[i]) line += pad(std::to_string(v), w);
    out << rtrim(line) << '\n';
  }
  return out.str();
}

std::string format_stats(const ttm::CorpusStats& s, const std::string& fmt) {
  if (fmt == "json") {
    ttm::Json j;
    j["num_users"] = s.num_users;
    j["num_dialogues"] = s.num_dialogues;
    j["num_turns"] = s.num_turns;
    j["num_word_tokens"] = s.num_word_tokens;
    j["avg_turns_per_dialogue"] = {{"num", s.avg_turns_per_dialogue.num}, {"den", s.avg_turns_per_dialogue.den}};
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "users            " << s.num_users << '\n';
  out << "dialogues        " << s.num_dialogues << '\n';
  out << "turns            " << s.num_turns << '\n';
  out << "word tokens      " << s.num_word_tokens << '\n';
  out << "avg turns/dialog " << s.avg_turns_per_dialogue.num << "/" << s.avg_turns_per_dialogue.den << " ("
      << ttm::format_accuracy(s.avg_turns_per_dialogue.value()) << ")\n";
  return out.str();
}

std::vector<ttm::LabeledTokens> labeled(const ttm::Corpus& c, ttm::Family f, ttm::Mode m,
                                        const ttm::TokenPipelineConfig& pipeline) {
  return ttm::prepare(ttm::extract_instances(c, f, m), pipeline);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parse, validate, segment and classify stage/process annotated chat dialogues."};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--registry-overrides", g.registry_overrides, "Extra label aliases: `label: alias, ...` per line");
  app.add_option("--matrix", g.matrix, "Stage/process compatibility matrix file");
  app.add_option("--stopwords", g.stopwords, "Stopword list, one per line");
  app.add_option("--lemma-exceptions", g.lemma_exceptions, "Lemma exceptions, surface<TAB>lemma");
  app.add_option("--lemma-rules", g.lemma_rules, "Ordered lemma suffix rules");
  auto* format_opt = app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> files;
  std::string output;

  auto* parse = app.add_subcommand("parse", "Parse transcripts; interchange JSON by default, canonical markup with --format text");
  parse->add_option("files", files, "Transcript or JSON files")->required();
  parse->add_option("-o,--output", output, "Output file");

  auto* validate = app.add_subcommand("validate", "Report structural annotation issues");
  validate->add_option("files", files, "Corpus files")->required();

  auto* stats = app.add_subcommand("stats", "Corpus statistics over all given files together");
  stats->add_option("files", files, "Corpus files")->required();

  std::string markup;
  std::string family_filter;
  auto* segment = app.add_subcommand("segment", "Per-family oracle segments: family<TAB>label<TAB>text");
  segment->add_option("files", files, "Corpus files");
  segment->add_option("--markup", markup, "Segment one markup sentence instead of files");
  segment->add_option("--family", family_filter, "Only this family");

  auto* lint = app.add_subcommand("lint", "Flag process suggestions the matrix does not mark for the seeker's stage");
  lint->add_option("files", files, "Corpus files")->required();

  std::string file_a, file_b;
  auto* kappa = app.add_subcommand("kappa", "Sentence-level Cohen's kappa between two annotations of one dialogue");
  kappa->add_option("first", file_a, "First annotator's transcript")->required();
  kappa->add_option("second", file_b, "Second annotator's transcript")->required();

  std::size_t n_dialogues = 0, n_sentences = 0;
  std::string templates;
  double noise = 0.2;
  std::size_t min_turns = 6, max_turns = 14;
  auto* generate = app.add_subcommand("generate", "Write a synthetic annotated corpus");
  auto* dia_opt = generate->add_option("--dialogues", n_dialogues, "Number of dialogues");
  auto* sen_opt = generate->add_option("--sentences", n_sentences, "Exact number of sentences");
  dia_opt->excludes(sen_opt);
  generate->add_option("--noise", noise, "Word swap probability in [0, 1)")->capture_default_str();
  generate->add_option("--templates", templates, "Template file");
  generate->add_option("--min-turns", min_turns, "Shortest dialogue")->capture_default_str();
  generate->add_option("--max-turns", max_turns, "Longest dialogue")->capture_default_str();
  generate->add_option("-o,--output", output, "Output transcript file");

  std::string family_name = "SOC", mode = "segmented", model_path, report_path;
  ttm::TrainOptions train_opt;
  const auto add_train_options = [&](CLI::App* cmd) {
    cmd->add_option("--lambda", train_opt.lambda, "L2 strength")->capture_default_str();
    cmd->add_option("--max-iter", train_opt.max_iter, "Iteration cap")->capture_default_str();
    cmd->add_option("--tol", train_opt.tol, "Gradient infinity-norm tolerance")->capture_default_str();
  };
  auto* train = app.add_subcommand("train", "Train one family's classifier on a corpus");
  train->add_option("files", files, "Corpus files")->required();
  train->add_option("--family", family_name, "SOC, POC or OTHER")->capture_default_str();
  train->add_option("--mode", mode, "segmented or unsegmented")->capture_default_str();
  train->add_option("-m,--model", model_path, "Model output file")->required();
  train->add_option("--report", report_path, "Also write the JSON report here");
  add_train_options(train);

  auto* eval = app.add_subcommand("eval", "Evaluate a trained model on a corpus");
  eval->add_option("-m,--model", model_path, "Model file")->required();
  eval->add_option("files", files, "Corpus files")->required();
  eval->add_option("--family", family_name, "SOC, POC or OTHER")->capture_default_str();
  eval->add_option("--mode", mode, "segmented or unsegmented")->capture_default_str();
  eval->add_option("--report", report_path, "Also write the JSON report here");

  std::size_t k = 10;
  auto* experiment = app.add_subcommand("experiment", "Majority / unsegmented / segmented accuracy per family");
  experiment->add_option("files", files, "Corpus files (omit to use a generated corpus)");
  experiment->add_option("-k,--folds", k, "Cross-validation folds")->capture_default_str();
  experiment->add_option("--generate-sentences", n_sentences, "Size of the generated corpus")->default_val(300);
  experiment->add_option("--noise", noise, "Noise of the generated corpus")->capture_default_str();
  experiment->add_option("--templates", templates, "Template file for the generated corpus");
  experiment->add_option("-o,--output", output, "Write the JSON report here");
  add_train_options(experiment);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    const ttm::LabelRegistry registry = make_registry(g);
    const bool json = g.format == "json";

    if (*parse) {
      const ttm::Corpus c = load_all(files, registry);
      if (format_opt->count() > 0 && !json) {
        std::ostringstream out;
        ttm::write_transcript(out, c);
        write_output(output, out.str());
      } else {
        write_output(output, ttm::to_json(c).dump(2) + "\n");
      }
      return kOk;
    }

    if (*validate) {
      const ttm::Corpus c = load_all(files, registry);
      const auto issues = ttm::validate_corpus(c, registry);
      bool errors = false;
      ttm::Json arr = ttm::Json::array();
      for (const auto& i : issues) {
        errors = errors || i.severity == ttm::Severity::kError;
        const std::string sev = i.severity == ttm::Severity::kError ? "error" : "warning";
        if (json) {
          arr.push_back({{"severity", sev}, {"kind", ttm::issue_kind_name(i.kind)}, {"dialogue", i.dialogue_id},
                         {"turn", i.turn}, {"sentence", i.sentence}, {"message", i.message}});
        } else {
          std::cout << i.dialogue_id << ":" << i.turn << ":" << i.sentence << ": " << sev << ": "
                    << ttm::issue_kind_name(i.kind) << ": " << i.message << '\n';
        }
      }
      if (json) std::cout << arr.dump(2) << '\n';
      return errors ? kValidationFailed : kOk;
    }

    if (*stats) {
      std::cout << format_stats(ttm::corpus_stats(load_all(files, registry)), g.format);
      return kOk;
    }

    if (*segment) {
      std::vector<ttm::Family> fams(ttm::kAllFamilies.begin(), ttm::kAllFamilies.end());
      if (!family_filter.empty()) fams = {family_arg(family_filter)};
      std::vector<ttm::AnnotatedSentence> sentences;
      if (!markup.empty()) {
        sentences.push_back(ttm::parse_sentence(markup, registry));
      } else {
        if (files.empty()) throw Usage("segment needs --markup or corpus files");
        for (const auto& d : load_all(files, registry).dialogues) {
          for (const auto& t : d.turns) sentences.insert(sentences.end(), t.sentences.begin(), t.sentences.end());
        }
      }
      ttm::Json arr = ttm::Json::array();
      for (std::size_t si = 0; si < sentences.size(); ++si) {
        for (const auto f : fams) {
          for (const auto& seg : ttm::flatten_family(sentences[si], f)) {
            if (json) {
              arr.push_back({{"sentence", si}, {"family", ttm::family_name(f)}, {"label", seg.label}, {"text", seg.text}});
            } else {
              std::cout << ttm::family_name(f) << '\t' << seg.label << '\t' << seg.text << '\n';
            }
          }
        }
      }
      if (json) std::cout << arr.dump(2) << '\n';
      return kOk;
    }

    if (*lint) {
      const ttm::Corpus c = load_all(files, registry);
      const ttm::CompatibilityMatrix m = make_matrix(g, registry);
      ttm::Json arr = ttm::Json::array();
      for (const auto& d : c.dialogues) {
        for (const auto& w : ttm::lint_dialogue(d, m)) {
          if (json) {
            arr.push_back({{"dialogue", d.id}, {"turn", w.turn}, {"sentence", w.sentence}, {"process", w.process},
                           {"stage", w.stage}, {"text", w.text}});
          } else {
            std::cout << d.id << ":" << w.turn << ":" << w.sentence << ": warning: '" << w.process
                      << "' is not usually suited to stage '" << w.stage << "': " << w.text << '\n';
          }
        }
      }
      if (json) std::cout << arr.dump(2) << '\n';
      return kOk;
    }

    if (*kappa) {
      std::istringstream ia(ttm::read_file(file_a)), ib(ttm::read_file(file_b));
      const ttm::Dialogue a = ttm::parse_transcript(ia, registry, stem_of(file_a));
      const ttm::Dialogue b = ttm::parse_transcript(ib, registry, stem_of(file_b));
      ttm::Json arr = ttm::Json::array();
      if (!json) std::cout << "family  kappa\n";
      for (const auto f : ttm::kAllFamilies) {
        const auto r = ttm::cohens_kappa(ttm::sentence_labels(a, f), ttm::sentence_labels(b, f));
        if (json) {
          arr.push_back({{"family", ttm::family_name(f)}, {"kappa", r.value}, {"degenerate", r.degenerate}});
        } else {
          std::cout << pad(std::string(ttm::family_name(f)), 8) << ttm::format_accuracy(r.value)
                    << (r.degenerate ? "  (single shared label)" : "") << '\n';
        }
      }
      if (json) std::cout << arr.dump(2) << '\n';
      return kOk;
    }

    const auto make_spec = [&]() {
      ttm::GeneratorSpec spec;
      if (templates.empty()) {
        spec.pools = ttm::builtin_templates(registry);
      } else {
        std::istringstream in(ttm::read_file(templates));
        spec.pools = ttm::load_templates(in, registry);
      }
      spec.noise = noise;
      spec.min_turns = min_turns;
      spec.max_turns = max_turns;
      spec.seed = g.seed;
      return spec;
    };

    if (*generate) {
      if (dia_opt->count() == 0 && sen_opt->count() == 0) throw Usage("generate needs --dialogues or --sentences");
      const ttm::GeneratorSpec spec = make_spec();
      const ttm::Corpus c = dia_opt->count() > 0 ? ttm::generate_corpus(spec, n_dialogues, registry)
                                                 : ttm::generate_corpus_sentences(spec, n_sentences, registry);
      std::ostringstream out;
      if (json) {
        out << ttm::to_json(c).dump(2) << '\n';
      } else {
        ttm::write_transcript(out, c);
      }
      write_output(output, out.str());
      return kOk;
    }

    const ttm::TokenPipelineConfig pipeline = make_pipeline(g);

    const auto emit_report = [&](const ttm::EvalReport& r) {
      const std::string j = ttm::to_json(r).dump(2) + "\n";
      if (!report_path.empty()) write_output(report_path, j);
      std::cout << (json ? j : format_eval(r));
    };

    if (*train) {
      const ttm::Family f = family_arg(family_name);
      const auto data = labeled(load_all(files, registry), f, mode_arg(mode), pipeline);
      if (data.empty()) throw ttm::Error(ttm::ErrorKind::kTooFewInstances, "corpus has no sentences");
      std::vector<std::vector<std::string>> lists;
      for (const auto& d : data) lists.push_back(d.tokens);
      const ttm::Vocabulary vocab = ttm::build_vocabulary(lists);
      std::vector<ttm::SparseVector> x;
      std::vector<ttm::Label> y;
      for (const auto& d : data) {
        x.push_back(ttm::vectorize(d.tokens, vocab));
        y.push_back(d.gold);
      }
      train_opt.seed = g.seed;
      ttm::LogRegModel model = ttm::train_logreg(x, y, vocab.size(), train_opt);
      model.vocabulary = vocab;
      std::ostringstream m;
      ttm::save_model(m, model);
      write_output(model_path, m.str());
      ttm::EvalReport r = ttm::evaluate(model, data, vocab);
      r.metadata["family"] = ttm::family_name(f);
      r.metadata["mode"] = mode;
      r.metadata["split"] = "train";
      r.metadata["lambda"] = ttm::format_double(train_opt.lambda);
      r.metadata["iterations"] = std::to_string(model.info.iterations);
      emit_report(r);
      return kOk;
    }

    if (*eval) {
      const ttm::Family f = family_arg(family_name);
      std::istringstream in(ttm::read_file(model_path));
      const ttm::LogRegModel model = ttm::load_model(in);
      for (const auto& c : model.classes) {
        const ttm::LabelInfo* info = registry.find(c);
        if (!ttm::is_null(c) && (info == nullptr || info->family != f)) {
          throw ttm::Error(ttm::ErrorKind::kUnknownLabel,
                           "model class '" + c + "' is not a " + std::string(ttm::family_name(f)) + " label");
        }
      }
      const auto data = labeled(load_all(files, registry), f, mode_arg(mode), pipeline);
      ttm::EvalReport r = ttm::evaluate(model, data, model.vocabulary);
      r.metadata["family"] = ttm::family_name(f);
      r.metadata["mode"] = mode;
      r.metadata["split"] = "eval";
      emit_report(r);
      return kOk;
    }

    if (*experiment) {
      ttm::Corpus c;
      if (files.empty()) {
        c = ttm::generate_corpus_sentences(make_spec(), n_sentences, registry);
      } else {
        c = load_all(files, registry);
      }
      ttm::ExperimentConfig cfg;
      cfg.k = k;
      cfg.seed = g.seed;
      cfg.train = train_opt;
      const ttm::ExperimentReport rep = ttm::run_experiment(c, cfg, pipeline);
      const std::string j = ttm::to_json(rep).dump(2) + "\n";
      if (!output.empty()) write_output(output, j);
      std::cout << (json ? j : ttm::format_table(rep));
      return kOk;
    }
  } catch (const Usage& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ttm::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsage;
}
