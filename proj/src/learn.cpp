// SPDX-FileCopyrightText: Copyright (c) 2026 The beetox Authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "beetox/learn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "beetox/error.hpp"
#include "beetox/fingerprints.hpp"
#include "beetox/parallel.hpp"

namespace beetox {

namespace {

// Unbiased enough for n << 2^64 and identical on every platform, unlike std::uniform_int_distribution.
std::size_t bounded(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>((static_cast<unsigned __int128>(rng()) * n) >> 64);
}

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[bounded(rng, i)]);
  }
}

void check_labels(std::span<const int> labels) {
  for (int y : labels) {
    if (y != 0 && y != 1) {
      throw DataError("labels must be 0 or 1, got " + std::to_string(y));
    }
  }
}

double impurity(double w0, double w1, SplitCriterion criterion) {
  const double w = w0 + w1;
  if (w <= 0) {
    return 0;
  }
  const double p0 = w0 / w, p1 = w1 / w;
  if (criterion == SplitCriterion::kGini) {
    return 1.0 - p0 * p0 - p1 * p1;
  }
  double h = 0;
  for (double p : {p0, p1}) {
    if (p > 0) {
      h -= p * std::log2(p);
    }
  }
  return h;
}

struct TreeBuilder {
  const std::vector<double>& columns;  // column-major copy of the features
  std::size_t                n_rows;
  std::size_t                n_cols;
  std::span<const int>       y;
  const std::vector<double>& weight;  // class weight times bootstrap multiplicity
  const ForestSpec&          spec;
  int                        max_features;
  std::mt19937_64            rng;

  struct Split {
    int    feature   = -1;
    double threshold = 0;
    double score     = std::numeric_limits<double>::infinity();
  };

  double value(int sample, int feature) const { return columns[static_cast<std::size_t>(feature) * n_rows + sample]; }

  double children_score(double l0, double l1, double t0, double t1) const {
    const double r0 = t0 - l0, r1 = t1 - l1;
    return (l0 + l1) * impurity(l0, l1, spec.criterion) + (r0 + r1) * impurity(r0, r1, spec.criterion);
  }

  static constexpr int kMaxBuckets = 256;

  // Small non-negative integer spans (count fingerprints) are swept through per-value weight sums instead of a sort.
  // Returns false, leaving `best` untouched, when some value is not an integer offset from `lo`.
  bool bucket_split(std::span<const int> samples, int f, double lo, double t0, double t1, Split& best) {
    std::array<double, kMaxBuckets + 1> b0{}, b1{};
    std::array<int, kMaxBuckets + 1>    present{};
    for (int i : samples) {
      const double offset = value(i, f) - lo;
      const auto   k      = static_cast<int>(offset);
      if (offset != k) {
        return false;
      }
      (y[i] == 1 ? b1[k] : b0[k]) += weight[i];
      present[k] = 1;
    }
    double l0 = 0, l1 = 0;
    int    prev = -1;
    for (int k = 0; k <= kMaxBuckets; ++k) {
      if (!present[k]) {
        continue;
      }
      if (prev >= 0) {
        const double score = children_score(l0, l1, t0, t1);
        if (score < best.score) {
          best = {f, lo + prev + (k - prev) / 2.0, score};
        }
      }
      l0 += b0[k];
      l1 += b1[k];
      prev = k;
    }
    return true;
  }

  // `order` holds the features not yet known to be constant; those found constant here are dropped from it, since
  // they stay constant in every descendant.
  Split best_split(std::span<const int> samples, std::vector<int>& order) {
    Split                               best;
    std::vector<std::pair<double, int>> col(samples.size());
    double                              t0 = 0, t1 = 0;
    for (int i : samples) {
      (y[i] == 1 ? t1 : t0) += weight[i];
    }
    int              tried = 0;
    std::vector<int> constant;
    // Fisher-Yates drawn lazily; constant features do not count towards max_features.
    for (std::size_t k = 0; k < order.size() && tried < max_features; ++k) {
      std::swap(order[k], order[k + bounded(rng, order.size() - k)]);
      const int f  = order[k];
      double    lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (int i : samples) {
        lo = std::min(lo, value(i, f));
        hi = std::max(hi, value(i, f));
      }
      if (!(hi > lo)) {
        constant.push_back(static_cast<int>(k));
        continue;
      }
      ++tried;
      // Two distinct values (binary fingerprints) admit a single threshold and need no sort.
      double l0 = 0, l1 = 0;
      bool   two_valued = true;
      for (int i : samples) {
        const double v = value(i, f);
        if (v == lo) {
          (y[i] == 1 ? l1 : l0) += weight[i];
        } else if (v != hi) {
          two_valued = false;
          break;
        }
      }
      if (two_valued) {
        const double score = children_score(l0, l1, t0, t1);
        if (score < best.score) {
          double threshold = lo + (hi - lo) / 2;
          if (threshold >= hi) {
            threshold = lo;
          }
          best = {f, threshold, score};
        }
        continue;
      }
      if (hi - lo <= kMaxBuckets && bucket_split(samples, f, lo, t0, t1, best)) {
        continue;
      }
      for (std::size_t s = 0; s < samples.size(); ++s) {
        col[s] = {value(samples[s], f), samples[s]};
      }
      std::sort(col.begin(), col.end());
      l0 = l1 = 0;
      for (std::size_t s = 0; s + 1 < col.size(); ++s) {
        (y[col[s].second] == 1 ? l1 : l0) += weight[col[s].second];
        if (col[s + 1].first <= col[s].first) {
          continue;
        }
        const double score = children_score(l0, l1, t0, t1);
        if (score < best.score) {
          double threshold = col[s].first + (col[s + 1].first - col[s].first) / 2;
          if (threshold >= col[s + 1].first) {
            threshold = col[s].first;
          }
          best = {f, threshold, score};
        }
      }
    }
    if (!constant.empty()) {
      std::size_t out = 0, next = 0;
      for (std::size_t k = 0; k < order.size(); ++k) {
        if (next < constant.size() && constant[next] == static_cast<int>(k)) {
          ++next;
        } else {
          order[out++] = order[k];
        }
      }
      order.resize(out);
    }
    return best;
  }

  Forest::Tree build(std::vector<int> samples) {
    Forest::Tree tree;
    struct Pending {
      int              node;
      std::vector<int> samples;
      std::vector<int> features;
    };
    std::vector<Pending> stack;
    std::vector<int>     features(n_cols);
    std::iota(features.begin(), features.end(), 0);
    tree.emplace_back();
    stack.push_back({0, std::move(samples), std::move(features)});
    while (!stack.empty()) {
      Pending p = std::move(stack.back());
      stack.pop_back();
      double w0 = 0, w1 = 0;
      for (int i : p.samples) {
        (y[i] == 1 ? w1 : w0) += weight[i];
      }
      tree[p.node].positive_fraction = w0 + w1 > 0 ? w1 / (w0 + w1) : 0.0;
      if (static_cast<int>(p.samples.size()) < spec.min_samples_split || w0 == 0 || w1 == 0) {
        continue;
      }
      const Split s = best_split(p.samples, p.features);
      if (s.feature < 0) {
        continue;
      }
      std::vector<int> left, right;
      for (int i : p.samples) {
        (value(i, s.feature) <= s.threshold ? left : right).push_back(i);
      }
      const int l = static_cast<int>(tree.size());
      tree.resize(tree.size() + 2);
      tree[p.node].feature   = s.feature;
      tree[p.node].threshold = s.threshold;
      tree[p.node].left      = l;
      tree[p.node].right     = l + 1;
      stack.push_back({l + 1, std::move(right), p.features});
      stack.push_back({l, std::move(left), std::move(p.features)});
    }
    return tree;
  }
};

}  // namespace

ClassWeights balanced_weights(std::span<const int> labels) {
  check_labels(labels);
  const auto n1 = std::count(labels.begin(), labels.end(), 1);
  const auto n0 = static_cast<long>(labels.size()) - n1;
  if (n0 == 0 || n1 == 0) {
    throw DataError("balanced class weights need both classes present");
  }
  const double n = static_cast<double>(labels.size());
  return {n / (2.0 * n0), n / (2.0 * n1)};
}

void validate(const ForestSpec& spec) {
  if (spec.n_trees < 1) {
    throw ConfigError("forest: n_trees must be at least 1");
  }
  if (spec.min_samples_split < 2) {
    throw ConfigError("forest: min_samples_split must be at least 2");
  }
  if (spec.max_features < 0) {
    throw ConfigError("forest: max_features must be non-negative");
  }
}

Forest forest_fit(const FeatureMatrix& x, std::span<const int> labels, const ClassWeights& weights,
                  const ForestSpec& spec) {
  validate(spec);
  check_labels(labels);
  if (x.rows() == 0) {
    throw DataError("forest: empty training set");
  }
  if (x.rows() != labels.size()) {
    throw DataError("forest: feature rows and labels differ in length");
  }
  if (x.cols == 0) {
    throw DataError("forest: no features");
  }
  for (double v : x.values) {
    if (!std::isfinite(v)) {
      throw DataError("forest: non-finite feature value");
    }
  }
  const int max_features = spec.max_features > 0
                               ? std::min<int>(spec.max_features, static_cast<int>(x.cols))
                               : std::max(1, static_cast<int>(std::floor(std::sqrt(static_cast<double>(x.cols)))));
  const std::size_t   n = x.rows();
  std::vector<double> columns(x.values.size());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < x.cols; ++c) {
      columns[c * n + r] = x.at(r, c);
    }
  }
  std::vector<Forest::Tree> trees(spec.n_trees);
  parallel_for(trees.size(), [&](std::size_t t) {
    const std::uint64_t words[] = {spec.seed, static_cast<std::uint64_t>(t)};
    std::mt19937_64     rng(stable_hash(words));
    std::vector<double> w(n, 0.0);
    if (spec.bootstrap) {
      for (std::size_t k = 0; k < n; ++k) {
        w[bounded(rng, n)] += 1.0;
      }
    } else {
      std::fill(w.begin(), w.end(), 1.0);
    }
    std::vector<int> samples;
    for (std::size_t i = 0; i < n; ++i) {
      if (w[i] > 0) {
        w[i] *= weights(labels[i]);
        samples.push_back(static_cast<int>(i));
      }
    }
    TreeBuilder builder{columns, n, x.cols, labels, w, spec, max_features, std::mt19937_64(rng())};
    trees[t] = builder.build(std::move(samples));
  });
  return Forest(std::move(trees), x.cols);
}

std::vector<double> Forest::predict_proba(const FeatureMatrix& x) const {
  if (x.cols != n_features_) {
    throw DataError("forest: expected " + std::to_string(n_features_) + " features, got " + std::to_string(x.cols));
  }
  std::vector<double> p(x.rows(), 0.0);
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (const Tree& tree : trees_) {
      int node = 0;
      while (tree[node].feature >= 0) {
        node = x.at(r, tree[node].feature) <= tree[node].threshold ? tree[node].left : tree[node].right;
      }
      p[r] += tree[node].positive_fraction;
    }
    p[r] /= static_cast<double>(trees_.size());
  }
  return p;
}

std::vector<int> Forest::predict(const FeatureMatrix& x) const {
  std::vector<int> out;
  for (double p : predict_proba(x)) {
    out.push_back(p > 0.5 ? 1 : 0);
  }
  return out;
}

SvmModel svm_fit(const Eigen::MatrixXd& k, std::span<const int> labels, const SvmSpec& spec) {
  check_labels(labels);
  const Eigen::Index n = k.rows();
  if (k.cols() != n || static_cast<std::size_t>(n) != labels.size()) {
    throw DataError("svm: Gram matrix shape does not match the label count");
  }
  if (n == 0) {
    throw DataError("svm: empty training set");
  }
  if (!(spec.c > 0) || !(spec.tolerance > 0) || spec.max_passes < 1) {
    throw ConfigError("svm: c, tolerance and max_passes must be positive");
  }
  const double scale = std::max(1.0, k.cwiseAbs().maxCoeff());
  if ((k - k.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw NumericalError("svm: Gram matrix is not symmetric");
  }
  std::vector<double> y(n), c(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    y[i] = labels[i] == 1 ? 1.0 : -1.0;
    c[i] = spec.c * spec.class_weights(labels[i]);
  }
  std::vector<double> alpha(n, 0.0), g(n, -1.0), diag(n);
  for (Eigen::Index t = 0; t < n; ++t) {
    diag[t] = k(t, t);
  }
  const auto          q       = [&](Eigen::Index i, Eigen::Index j) { return y[i] * y[j] * k(i, j); };
  const auto          is_up   = [&](Eigen::Index t) { return y[t] > 0 ? alpha[t] < c[t] : alpha[t] > 0; };
  const auto          is_low  = [&](Eigen::Index t) { return y[t] > 0 ? alpha[t] > 0 : alpha[t] < c[t]; };
  constexpr double    kTau    = 1e-12;
  long                iter    = 0;
  for (;; ++iter) {
    double       gmax = -std::numeric_limits<double>::infinity();
    Eigen::Index i    = -1;
    for (Eigen::Index t = 0; t < n; ++t) {
      if (is_up(t) && -y[t] * g[t] >= gmax) {
        if (-y[t] * g[t] > gmax || i < 0) {
          gmax = -y[t] * g[t];
          i    = t;
        }
      }
    }
    double       gmax2   = -std::numeric_limits<double>::infinity();
    double       obj_min = std::numeric_limits<double>::infinity();
    Eigen::Index j       = -1;
    for (Eigen::Index t = 0; t < n; ++t) {
      if (!is_low(t)) {
        continue;
      }
      gmax2 = std::max(gmax2, y[t] * g[t]);
      if (i < 0) {
        continue;
      }
      const double diff = gmax + y[t] * g[t];
      if (diff > 0) {
        double a = diag[i] + diag[t] - 2.0 * k(t, i);  // column access, k is symmetric
        if (a <= 0) {
          a = kTau;
        }
        const double obj = -(diff * diff) / a;
        if (obj < obj_min) {
          obj_min = obj;
          j       = t;
        }
      }
    }
    if (i < 0 || j < 0 || gmax + gmax2 < spec.tolerance) {
      break;
    }
    if (iter >= spec.max_passes) {
      throw ConvergenceError("svm: SMO did not reach tolerance " + std::to_string(spec.tolerance), iter);
    }
    const double old_i = alpha[i], old_j = alpha[j];
    const double qij = q(i, j);
    if (y[i] != y[j]) {
      double a = k(i, i) + k(j, j) + 2.0 * qij;
      if (a <= 0) {
        a = kTau;
      }
      const double delta = (-g[i] - g[j]) / a;
      const double diff  = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0 && alpha[j] < 0) {
        alpha[j] = 0;
        alpha[i] = diff;
      } else if (diff <= 0 && alpha[i] < 0) {
        alpha[i] = 0;
        alpha[j] = -diff;
      }
      if (diff > c[i] - c[j] && alpha[i] > c[i]) {
        alpha[i] = c[i];
        alpha[j] = c[i] - diff;
      } else if (diff <= c[i] - c[j] && alpha[j] > c[j]) {
        alpha[j] = c[j];
        alpha[i] = c[j] + diff;
      }
    } else {
      double a = k(i, i) + k(j, j) - 2.0 * qij;
      if (a <= 0) {
        a = kTau;
      }
      const double delta = (g[i] - g[j]) / a;
      const double sum   = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c[i] && alpha[i] > c[i]) {
        alpha[i] = c[i];
        alpha[j] = sum - c[i];
      } else if (sum <= c[i] && alpha[j] < 0) {
        alpha[j] = 0;
        alpha[i] = sum;
      }
      if (sum > c[j] && alpha[j] > c[j]) {
        alpha[j] = c[j];
        alpha[i] = sum - c[j];
      } else if (sum <= c[j] && alpha[i] < 0) {
        alpha[i] = 0;
        alpha[j] = sum;
      }
    }
    const double di = alpha[i] - old_i, dj = alpha[j] - old_j;
    for (Eigen::Index t = 0; t < n; ++t) {
      g[t] += q(t, i) * di + q(t, j) * dj;
    }
  }

  // Bias from free support vectors, else the midpoint of the feasible interval.
  double ub = std::numeric_limits<double>::infinity(), lb = -ub, sum_free = 0;
  long   n_free = 0;
  for (Eigen::Index t = 0; t < n; ++t) {
    const double yg = y[t] * g[t];
    if (alpha[t] >= c[t]) {
      if (y[t] < 0) {
        ub = std::min(ub, yg);
      } else {
        lb = std::max(lb, yg);
      }
    } else if (alpha[t] <= 0) {
      if (y[t] > 0) {
        ub = std::min(ub, yg);
      } else {
        lb = std::max(lb, yg);
      }
    } else {
      ++n_free;
      sum_free += yg;
    }
  }
  const double rho = n_free > 0 ? sum_free / n_free : (ub + lb) / 2;
  SvmModel     model;
  model.alpha      = alpha;
  model.bias       = -rho;
  model.iterations = iter;
  model.dual_coef.resize(n);
  for (Eigen::Index t = 0; t < n; ++t) {
    model.dual_coef[t] = alpha[t] * y[t];
  }
  return model;
}

std::vector<double> svm_decision(const SvmModel& model, const Eigen::MatrixXd& cross) {
  if (static_cast<std::size_t>(cross.cols()) != model.dual_coef.size()) {
    throw DataError("svm: kernel block has " + std::to_string(cross.cols()) + " columns, model has " +
                    std::to_string(model.dual_coef.size()) + " training samples");
  }
  const Eigen::Map<const Eigen::VectorXd> coef(model.dual_coef.data(), cross.cols());
  const Eigen::VectorXd                  f = cross * coef;
  std::vector<double>                    out(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    out[i] = f(i) + model.bias;
  }
  return out;
}

Confusion confusion(std::span<const int> labels, std::span<const int> predicted) {
  if (labels.size() != predicted.size()) {
    throw DataError("confusion: label and prediction counts differ");
  }
  check_labels(labels);
  check_labels(predicted);
  Confusion c;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 1) {
      ++(predicted[i] == 1 ? c.tp : c.fn);
    } else {
      ++(predicted[i] == 1 ? c.fp : c.tn);
    }
  }
  return c;
}

double mcc(const Confusion& c) {
  const double tp = static_cast<double>(c.tp), fp = static_cast<double>(c.fp);
  const double fn = static_cast<double>(c.fn), tn = static_cast<double>(c.tn);
  const double denominator = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
  return denominator > 0 ? (tp * tn - fp * fn) / std::sqrt(denominator) : 0.0;
}

double precision(const Confusion& c) {
  return c.tp + c.fp > 0 ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp) : 0.0;
}

double recall(const Confusion& c) {
  return c.tp + c.fn > 0 ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn) : 0.0;
}

double auroc(std::span<const int> labels, std::span<const double> scores) {
  if (labels.size() != scores.size()) {
    throw DataError("auroc: label and score counts differ");
  }
  check_labels(labels);
  const auto n1 = std::count(labels.begin(), labels.end(), 1);
  const auto n0 = static_cast<long>(labels.size()) - n1;
  if (n0 == 0 || n1 == 0) {
    throw DataError("auroc is undefined when only one class is present");
  }
  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  // Count, for each tie group, positives times negatives strictly below plus half the pairs inside the group.
  double      pairs = 0;
  long        negatives_below = 0;
  std::size_t g               = 0;
  while (g < order.size()) {
    std::size_t e = g;
    long        pos = 0, neg = 0;
    while (e < order.size() && scores[order[e]] == scores[order[g]]) {
      (labels[order[e]] == 1 ? pos : neg) += 1;
      ++e;
    }
    pairs += static_cast<double>(pos) * static_cast<double>(negatives_below) +
             0.5 * static_cast<double>(pos) * static_cast<double>(neg);
    negatives_below += neg;
    g = e;
  }
  return pairs / (static_cast<double>(n0) * static_cast<double>(n1));
}

Metrics evaluate(std::span<const int> labels, std::span<const double> scores, double threshold) {
  if (labels.size() != scores.size()) {
    throw DataError("evaluate: label and score counts differ");
  }
  std::vector<int> predicted;
  for (double s : scores) {
    if (!std::isfinite(s)) {
      throw NumericalError("evaluate: non-finite score");
    }
    predicted.push_back(s > threshold ? 1 : 0);
  }
  const Confusion c = confusion(labels, predicted);
  return {mcc(c), auroc(labels, scores), precision(c), recall(c)};
}

MetricSummary summarize(std::vector<Metrics> runs) {
  MetricSummary s;
  s.runs = std::move(runs);
  if (s.runs.empty()) {
    return s;
  }
  const double n      = static_cast<double>(s.runs.size());
  const auto   fields = {&Metrics::mcc, &Metrics::auroc, &Metrics::precision, &Metrics::recall};
  for (auto field : fields) {
    double mean = 0;
    for (const Metrics& m : s.runs) {
      mean += m.*field;
    }
    mean /= n;
    double var = 0;
    for (const Metrics& m : s.runs) {
      var += (m.*field - mean) * (m.*field - mean);
    }
    s.mean.*field = mean;
    s.std.*field  = std::sqrt(var / n);
  }
  return s;
}

std::vector<int> stratified_folds(std::span<const int> labels, int folds, std::uint64_t seed) {
  check_labels(labels);
  if (folds < 2) {
    throw ConfigError("cross-validation needs at least 2 folds");
  }
  std::vector<int> fold_of(labels.size(), -1);
  std::mt19937_64  rng(seed);
  int              next = 0;
  for (int cls : {0, 1}) {
    std::vector<int> members;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == cls) {
        members.push_back(static_cast<int>(i));
      }
    }
    if (static_cast<int>(members.size()) < folds) {
      throw DataError("class " + std::to_string(cls) + " has " + std::to_string(members.size()) +
                      " samples, too few to stratify into " + std::to_string(folds) + " folds");
    }
    shuffle(members, rng);
    for (int i : members) {
      fold_of[i] = next;
      next       = (next + 1) % folds;
    }
  }
  return fold_of;
}

std::vector<FoldIndices> fold_indices(std::span<const int> fold_of, int folds) {
  std::vector<FoldIndices> out(folds);
  for (std::size_t i = 0; i < fold_of.size(); ++i) {
    for (int f = 0; f < folds; ++f) {
      (fold_of[i] == f ? out[f].validation : out[f].train).push_back(static_cast<int>(i));
    }
  }
  return out;
}

GridResult grid_search_cv(std::size_t n_candidates, std::span<const int> labels, int folds, std::uint64_t seed,
                          const FoldScorer& scorer) {
  if (n_candidates == 0) {
    throw ConfigError("grid search: empty grid");
  }
  const auto folds_of = stratified_folds(labels, folds, seed);
  const auto split    = fold_indices(folds_of, folds);
  GridResult result;
  result.mean_auroc.assign(n_candidates, 0.0);
  for (std::size_t c = 0; c < n_candidates; ++c) {
    for (const FoldIndices& fold : split) {
      const std::vector<double> scores = scorer(c, fold);
      std::vector<int>          y;
      for (int i : fold.validation) {
        y.push_back(labels[i]);
      }
      result.mean_auroc[c] += auroc(y, scores) / folds;
    }
    if (result.mean_auroc[c] > result.mean_auroc[result.best]) {
      result.best = c;
    }
  }
  return result;
}

}  // namespace beetox
