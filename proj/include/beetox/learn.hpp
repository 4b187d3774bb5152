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


#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "beetox/matrix_io.hpp"

namespace beetox {

//! Per-class sample weights for binary labels {0, 1}.
struct ClassWeights {
  double negative = 1.0;
  double positive = 1.0;

  double operator()(int label) const { return label == 1 ? positive : negative; }
};

//! weight(c) = n / (2 * n_c). Throws DataError unless both classes are present.
ClassWeights balanced_weights(std::span<const int> labels);

// ---------------------------------------------------------------------------------------------------------------------
// Random forest

enum class SplitCriterion { kEntropy, kGini };

struct ForestSpec {
  int            n_trees           = 100;
  SplitCriterion criterion         = SplitCriterion::kEntropy;
  int            min_samples_split = 2;
  //! Features tried per split; 0 selects floor(sqrt(n_features)).
  int            max_features = 0;
  bool           bootstrap    = true;
  std::uint64_t  seed         = 0;
};

void validate(const ForestSpec& spec);

class Forest {
 public:
  struct Node {
    int    feature   = -1;  // -1 marks a leaf
    double threshold = 0;   // go left when value <= threshold
    int    left = -1, right = -1;
    double positive_fraction = 0;  // class-weighted, leaves only
  };
  using Tree = std::vector<Node>;

  Forest() = default;
  Forest(std::vector<Tree> trees, std::size_t n_features) : trees_(std::move(trees)), n_features_(n_features) {}

  //! Mean over trees of the class-weighted positive fraction in the reached leaf.
  std::vector<double> predict_proba(const FeatureMatrix& x) const;
  std::vector<int>    predict(const FeatureMatrix& x) const;

  const std::vector<Tree>& trees() const { return trees_; }
  std::size_t              n_features() const { return n_features_; }

 private:
  std::vector<Tree> trees_;
  std::size_t       n_features_ = 0;
};

//! Trees are trained in parallel, each from a seed derived from (spec.seed, tree index).
Forest forest_fit(const FeatureMatrix& x, std::span<const int> labels, const ClassWeights& weights,
                  const ForestSpec& spec);

// ---------------------------------------------------------------------------------------------------------------------
// Support vector machine on a precomputed kernel

struct SvmSpec {
  double       c = 1.0;
  ClassWeights class_weights;
  double       tolerance  = 1e-3;
  long         max_passes = 100000000;
};

struct SvmModel {
  //! alpha_i * y_i for every training sample (zero for non-support vectors).
  std::vector<double> dual_coef;
  std::vector<double> alpha;
  double              bias       = 0;
  long                iterations = 0;
};

//! Soft-margin dual solved by SMO with second-order working-set selection. Per-sample bound C_i = c * weight(y_i).
//! Throws NumericalError for a non-symmetric Gram matrix and ConvergenceError after max_passes iterations.
SvmModel svm_fit(const Eigen::MatrixXd& gram, std::span<const int> labels, const SvmSpec& spec);

//! cross(i, j) = k(test_i, train_j). Positive scores predict label 1.
std::vector<double> svm_decision(const SvmModel& model, const Eigen::MatrixXd& cross);

// ---------------------------------------------------------------------------------------------------------------------
// Metrics

struct Confusion {
  long tp = 0, fp = 0, fn = 0, tn = 0;
};

Confusion confusion(std::span<const int> labels, std::span<const int> predicted);

//! Zero when any marginal is empty.
double mcc(const Confusion& c);
double precision(const Confusion& c);
double recall(const Confusion& c);

//! Rank statistic; ties between a positive and a negative count 1/2. Throws DataError for single-class labels.
double auroc(std::span<const int> labels, std::span<const double> scores);

struct Metrics {
  double mcc = 0, auroc = 0, precision = 0, recall = 0;
};

//! Label metrics use score > threshold as the positive prediction.
Metrics evaluate(std::span<const int> labels, std::span<const double> scores, double threshold);

struct MetricSummary {
  std::vector<Metrics> runs;
  Metrics              mean;
  Metrics              std;  // population standard deviation
};

MetricSummary summarize(std::vector<Metrics> runs);

// ---------------------------------------------------------------------------------------------------------------------
// Cross-validation

//! Fold index per sample. Each class is shuffled with the seed and dealt round-robin, so per-fold class counts
//! differ by at most one. Throws DataError if a class has fewer samples than folds.
std::vector<int> stratified_folds(std::span<const int> labels, int folds, std::uint64_t seed);

struct FoldIndices {
  std::vector<int> train;
  std::vector<int> validation;
};

std::vector<FoldIndices> fold_indices(std::span<const int> fold_of, int folds);

//! Returns scores for the validation samples of one fold, given a candidate index.
using FoldScorer = std::function<std::vector<double>(std::size_t candidate, const FoldIndices& fold)>;

struct GridResult {
  std::size_t         best = 0;
  std::vector<double> mean_auroc;  // per candidate
};

//! Mean validation AUROC per candidate; the first candidate with the highest mean wins.
GridResult grid_search_cv(std::size_t n_candidates, std::span<const int> labels, int folds, std::uint64_t seed,
                          const FoldScorer& scorer);

}  // namespace beetox
