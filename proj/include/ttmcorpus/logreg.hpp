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

// Multinomial logistic regression with an L2 penalty on the weights.
//
// Objective over n instances with classes c and scores s_ic = w_c . x_i + b_c:
//
//   J(W, b) = sum_i [ log sum_c exp(s_ic) - s_i,y_i ] + (lambda / 2) ||W||^2
//
// Biases are not penalized. Minimized with L-BFGS and a backtracking Armijo
// line search, so accepted steps never increase J.

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <string>
#include <system_error>
#include <vector>

#include "ttmcorpus/error.hpp"
#include "ttmcorpus/features.hpp"
#include "ttmcorpus/labels.hpp"

namespace ttm {

// Weights row-major (class x feature), then one bias per class.
struct LogRegParams {
  std::size_t num_classes = 0;
  std::size_t num_features = 0;
  std::vector<double> weights;
  std::vector<double> biases;

  LogRegParams() = default;
  LogRegParams(std::size_t classes, std::size_t features)
      : num_classes(classes), num_features(features), weights(classes * features, 0.0), biases(classes, 0.0) {}

  double& w(std::size_t c, std::size_t j) { return weights[c * num_features + j]; }
  double w(std::size_t c, std::size_t j) const { return weights[c * num_features + j]; }

  bool operator==(const LogRegParams&) const = default;
};

struct ObjectiveAndGradient {
  double value = 0.0;
  LogRegParams gradient;
};

inline std::vector<double> class_scores(const LogRegParams& p, const SparseVector& x) {
  std::vector<double> s(p.biases);
  for (std::size_t c = 0; c < p.num_classes; ++c) {
    for (const auto& [j, v] : x.entries) s[c] += p.w(c, j) * v;
  }
  return s;
}

// In place: scores -> probabilities. Returns log sum exp of the scores.
inline double softmax_inplace(std::vector<double>& s) {
  const double m = *std::max_element(s.begin(), s.end());
  double z = 0.0;
  for (double& v : s) {
    v = std::exp(v - m);
    z += v;
  }
  for (double& v : s) v /= z;
  return m + std::log(z);
}

inline ObjectiveAndGradient nll_and_gradient(const LogRegParams& p, const std::vector<SparseVector>& x,
                                             const std::vector<std::size_t>& y, double lambda) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::kDimensionMismatch, std::to_string(x.size()) + " vectors, " + std::to_string(y.size()) + " labels");
  }
  if (p.weights.size() != p.num_classes * p.num_features || p.biases.size() != p.num_classes) {
    throw Error(ErrorKind::kDimensionMismatch, "parameter block does not match its shape");
  }
  ObjectiveAndGradient out{0.0, LogRegParams(p.num_classes, p.num_features)};
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (y[i] >= p.num_classes) throw Error(ErrorKind::kDimensionMismatch, "label index out of range");
    for (const auto& [j, v] : x[i].entries) {
      if (j >= p.num_features) throw Error(ErrorKind::kDimensionMismatch, "feature index out of range");
    }
    std::vector<double> prob = class_scores(p, x[i]);
    const double score_y = prob[y[i]];
    out.value += softmax_inplace(prob) - score_y;
    prob[y[i]] -= 1.0;
    for (std::size_t c = 0; c < p.num_classes; ++c) {
      const double r = prob[c];
      out.gradient.biases[c] += r;
      for (const auto& [j, v] : x[i].entries) out.gradient.w(c, j) += r * v;
    }
  }
  double sq = 0.0;
  for (std::size_t k = 0; k < p.weights.size(); ++k) {
    sq += p.weights[k] * p.weights[k];
    out.gradient.weights[k] += lambda * p.weights[k];
  }
  out.value += 0.5 * lambda * sq;
  return out;
}

struct TrainOptions {
  double lambda = 1e-8;
  std::size_t max_iter = 500;
  double tol = 1e-6;
  std::uint64_t seed = 0;
  std::size_t memory = 10;
};

struct TrainingInfo {
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
  double final_objective = 0.0;
  bool converged = false;
  std::vector<double> objective_trace;  // J after each accepted step, J(0) first
};

struct LogRegModel {
  std::vector<Label> classes;
  Vocabulary vocabulary;
  LogRegParams params;
  double lambda = 0.0;
  TrainingInfo info;

  std::vector<double> predict_proba(const SparseVector& x) const {
    std::vector<double> s = class_scores(params, x);
    softmax_inplace(s);
    return s;
  }

  // argmax, first listed class on ties
  Label predict(const SparseVector& x) const {
    const std::vector<double> s = class_scores(params, x);
    return classes[static_cast<std::size_t>(std::max_element(s.begin(), s.end()) - s.begin())];
  }
};

namespace detail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline std::vector<double> flatten(const LogRegParams& p) {
  std::vector<double> v(p.weights);
  v.insert(v.end(), p.biases.begin(), p.biases.end());
  return v;
}

inline void unflatten(const std::vector<double>& v, LogRegParams& p) {
  std::copy(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(p.weights.size()), p.weights.begin());
  std::copy(v.begin() + static_cast<std::ptrdiff_t>(p.weights.size()), v.end(), p.biases.begin());
}

}  // namespace detail

// Classes are the distinct labels in sorted order. With a single class the
// result is a constant predictor and no optimization runs.
inline LogRegModel train_logreg(const std::vector<SparseVector>& x, const std::vector<Label>& golds,
                                std::size_t num_features, const TrainOptions& opt = {}) {
  if (x.size() != golds.size()) {
    throw Error(ErrorKind::kDimensionMismatch, std::to_string(x.size()) + " vectors, " + std::to_string(golds.size()) + " labels");
  }
  if (x.empty()) throw Error(ErrorKind::kTooFewInstances, "no training instances");
  LogRegModel model;
  const std::set<Label> distinct(golds.begin(), golds.end());
  model.classes.assign(distinct.begin(), distinct.end());
  model.lambda = opt.lambda;
  model.params = LogRegParams(model.classes.size(), num_features);
  model.info.seed = opt.seed;

  std::vector<std::size_t> y(golds.size());
  for (std::size_t i = 0; i < golds.size(); ++i) {
    y[i] = static_cast<std::size_t>(std::lower_bound(model.classes.begin(), model.classes.end(), golds[i]) -
                                    model.classes.begin());
  }
  if (model.classes.size() == 1) {
    model.info.converged = true;
    return model;
  }

  LogRegParams& p = model.params;
  auto eval = [&](const std::vector<double>& theta, std::vector<double>& grad) {
    detail::unflatten(theta, p);
    ObjectiveAndGradient og = nll_and_gradient(p, x, y, opt.lambda);
    grad = detail::flatten(og.gradient);
    return og.value;
  };
  const auto inf_norm = [](const std::vector<double>& g) {
    double m = 0.0;
    for (double v : g) m = std::max(m, std::abs(v));
    return m;
  };

  std::vector<double> theta = detail::flatten(p);
  std::vector<double> grad;
  double f = eval(theta, grad);
  model.info.objective_trace.push_back(f);
  std::deque<std::vector<double>> s_hist, y_hist;
  std::deque<double> rho_hist;

  std::size_t iter = 0;
  for (; iter < opt.max_iter; ++iter) {
    if (inf_norm(grad) < opt.tol) {
      model.info.converged = true;
      break;
    }
    // Two-loop recursion for the search direction.
    std::vector<double> q = grad;
    std::vector<double> alpha(s_hist.size());
    for (std::size_t k = s_hist.size(); k-- > 0;) {
      alpha[k] = rho_hist[k] * detail::dot(s_hist[k], q);
      for (std::size_t i = 0; i < q.size(); ++i) q[i] -= alpha[k] * y_hist[k][i];
    }
    double gamma = 1.0;
    if (!s_hist.empty()) gamma = detail::dot(s_hist.back(), y_hist.back()) / detail::dot(y_hist.back(), y_hist.back());
    for (double& v : q) v *= gamma;
    for (std::size_t k = 0; k < s_hist.size(); ++k) {
      const double beta = rho_hist[k] * detail::dot(y_hist[k], q);
      for (std::size_t i = 0; i < q.size(); ++i) q[i] += (alpha[k] - beta) * s_hist[k][i];
    }
    std::vector<double> dir(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) dir[i] = -q[i];
    double slope = detail::dot(grad, dir);
    if (!(slope < 0.0)) {
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      for (std::size_t i = 0; i < dir.size(); ++i) dir[i] = -grad[i];
      slope = detail::dot(grad, dir);
    }

    double step = s_hist.empty() ? std::min(1.0, 1.0 / std::max(inf_norm(grad), 1e-12)) : 1.0;
    std::vector<double> next(theta.size()), next_grad;
    double f_next = f;
    bool accepted = false;
    for (int tries = 0; tries < 60; ++tries) {
      for (std::size_t i = 0; i < theta.size(); ++i) next[i] = theta[i] + step * dir[i];
      f_next = eval(next, next_grad);
      if (std::isfinite(f_next) && f_next <= f + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      detail::unflatten(theta, p);
      break;
    }

    std::vector<double> s(theta.size()), yv(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
      s[i] = next[i] - theta[i];
      yv[i] = next_grad[i] - grad[i];
    }
    const double sy = detail::dot(s, yv);
    if (sy > 1e-12) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(yv));
      rho_hist.push_back(1.0 / sy);
      if (s_hist.size() > opt.memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    theta = std::move(next);
    grad = std::move(next_grad);
    f = f_next;
    model.info.objective_trace.push_back(f);
  }
  if (!model.info.converged && inf_norm(grad) < opt.tol) model.info.converged = true;
  detail::unflatten(theta, p);
  model.info.iterations = iter;
  model.info.final_objective = f;
  return model;
}

// Shortest decimal that reads back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw Error(ErrorKind::kBadFormat, "not a number: '" + std::string(s) + "'");
  }
  return v;
}

inline constexpr std::string_view kModelMagic = "ttmcorpus-logreg";
inline constexpr int kModelVersion = 1;

// Text model file:
//
//   ttmcorpus-logreg 1
//   lambda <v>
//   seed <n>
//   iterations <n>
//   objective <v>
//   classes <C>         followed by C lines, one label each
//   vocabulary <V>      followed by V lines, one token each
//   bias <C values>
//   weights             followed by C lines of V values
inline void save_model(std::ostream& out, const LogRegModel& m) {
  out << kModelMagic << ' ' << kModelVersion << '\n';
  out << "lambda " << format_double(m.lambda) << '\n';
  out << "seed " << m.info.seed << '\n';
  out << "iterations " << m.info.iterations << '\n';
  out << "objective " << format_double(m.info.final_objective) << '\n';
  out << "classes " << m.classes.size() << '\n';
  for (const auto& c : m.classes) out << c << '\n';
  out << "vocabulary " << m.vocabulary.size() << '\n';
  for (const auto& t : m.vocabulary.tokens()) out << t << '\n';
  out << "bias";
  for (double b : m.params.biases) out << ' ' << format_double(b);
  out << "\nweights\n";
  for (std::size_t c = 0; c < m.params.num_classes; ++c) {
    for (std::size_t j = 0; j < m.params.num_features; ++j) {
      if (j) out << ' ';
      out << format_double(m.params.w(c, j));
    }
    out << '\n';
  }
}

inline LogRegModel load_model(std::istream& in) {
  std::string line;
  int lineno = 0;
  const auto next_line = [&]() -> std::string {
    if (!std::getline(in, line)) throw Error(ErrorKind::kBadFormat, "model file truncated after line " + std::to_string(lineno));
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  };
  const auto field = [&](std::string_view key) -> std::string {
    const std::string l = next_line();
    if (l.rfind(std::string(key) + " ", 0) != 0) {
      throw Error(ErrorKind::kBadFormat, "model line " + std::to_string(lineno) + ": expected '" + std::string(key) + "'");
    }
    return l.substr(key.size() + 1);
  };
  const auto count = [&](const std::string& s) {
    try {
      return static_cast<std::size_t>(std::stoull(s));
    } catch (const std::exception&) {
      throw Error(ErrorKind::kBadFormat, "model line " + std::to_string(lineno) + ": bad count '" + s + "'");
    }
  };

  const std::string version = field(kModelMagic);
  if (version != std::to_string(kModelVersion)) throw Error(ErrorKind::kBadFormat, "unsupported model version " + version);
  LogRegModel m;
  m.lambda = parse_double(field("lambda"));
  m.info.seed = count(field("seed"));
  m.info.iterations = count(field("iterations"));
  m.info.final_objective = parse_double(field("objective"));
  const std::size_t nc = count(field("classes"));
  for (std::size_t i = 0; i < nc; ++i) m.classes.push_back(next_line());
  const std::size_t nv = count(field("vocabulary"));
  for (std::size_t i = 0; i < nv; ++i) m.vocabulary.add(next_line());
  if (m.vocabulary.size() != nv) throw Error(ErrorKind::kBadFormat, "model vocabulary has duplicates");
  m.params = LogRegParams(nc, nv);
  const auto values = [&](const std::string& l, std::size_t expected) {
    const auto parts = split_ws(l);
    if (parts.size() != expected) {
      throw Error(ErrorKind::kBadFormat, "model line " + std::to_string(lineno) + ": expected " + std::to_string(expected) + " values");
    }
    std::vector<double> v;
    for (const auto& s : parts) v.push_back(parse_double(s));
    return v;
  };
  m.params.biases = values(nc == 0 ? std::string() : field("bias"), nc);
  if (next_line() != "weights") throw Error(ErrorKind::kBadFormat, "model line " + std::to_string(lineno) + ": expected 'weights'");
  for (std::size_t c = 0; c < nc; ++c) {
    const auto row = values(nv == 0 ? (next_line(), std::string()) : next_line(), nv);
    std::copy(row.begin(), row.end(), m.params.weights.begin() + static_cast<std::ptrdiff_t>(c * nv));
  }
  return m;
}

}  // namespace ttm
