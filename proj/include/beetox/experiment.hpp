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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "beetox/dataset.hpp"
#include "beetox/learn.hpp"

namespace beetox {

enum class MethodFamily { kFingerprint, kTopo, kKernel };

//! Family of a method name: a fingerprint kind, "ltp"/"moltop", or a kernel kind. Throws ConfigError otherwise.
MethodFamily method_family(std::string_view method);

struct GridAxis {
  std::string              key;
  std::vector<std::string> values;
};

//! One hyperparameter assignment, in grid declaration order.
using Candidate = std::vector<std::pair<std::string, std::string>>;

//! Cartesian product; the first axis varies slowest.
std::vector<Candidate> expand_grid(const std::vector<GridAxis>& grid);

//! Hyperparameter grid published for the method (empty when the method has none).
std::vector<GridAxis> published_grid(std::string_view method);

enum class SplitSource { kFiles, kMaxmin, kTime, kColumn, kNone };

struct ExperimentConfig {
  std::string   dataset;
  ColumnMapping columns;

  SplitSource split_source = SplitSource::kMaxmin;
  std::string split_name;  // results column; defaults to the source name
  std::string train_file;
  std::string test_file;
  double      test_fraction     = 0.2;
  std::string split_fingerprint = "ecfp:fp_size=1024,radius=2";

  std::string group = "";
  std::string method;
  std::string name;  // results column; defaults to the method
  //! Parameters applied to every candidate, overridden by grid axes with the same key.
  Candidate             fixed;
  std::vector<GridAxis> grid;
  bool                  paper_grid = false;

  int           seeds     = 50;
  std::uint64_t base_seed = 0;
  std::uint64_t cv_seed   = 0;
  int           folds     = 5;
  bool          strict    = false;

  std::string output_dir = "results";
};

//! JSON document; relative paths resolve against `base_dir`.
ExperimentConfig parse_experiment_config(std::string_view json_text, const std::string& base_dir);
ExperimentConfig load_experiment_config(const std::string& path);
std::string      experiment_config_json(const ExperimentConfig& config);

//! With paper_grid set: an empty grid becomes the published grid; a given grid must stay inside it.
void resolve_grid(ExperimentConfig& config);

//! Ingests the dataset and tags every record "train" or "test" according to the split source.
Dataset prepare_dataset(const ExperimentConfig& config);

struct RunResult {
  std::vector<Candidate> candidates;
  GridResult             grid;
  Candidate              winner;
  bool                   evaluated = false;  // false when there is no test split
  MetricSummary          summary;
  std::string            manifest_json;
  std::string            manifest_hash;
  std::string            results_csv;
  std::string            model_json;
};

RunResult run_experiment(const ExperimentConfig& config, const Dataset& data);

//! Writes results.csv (when evaluated), manifest.json and model.json into config.output_dir.
void write_run_outputs(const ExperimentConfig& config, const RunResult& result);

extern const std::vector<std::string> kResultsHeader;

struct Prediction {
  std::string id;
  std::string smiles;
  double      score = 0;
  int         label = 0;
};

//! Scores molecules with a model written by run. Kernel models recompute kernel rows against the stored training
//! molecules.
std::vector<Prediction> predict(std::string_view model_json, const Dataset& input);

}  // namespace beetox
