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


#include "beetox/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "beetox/chemspace.hpp"
#include "beetox/csv.hpp"
#include "beetox/error.hpp"
#include "beetox/fingerprints.hpp"
#include "beetox/kernels.hpp"
#include "beetox/smiles.hpp"
#include "beetox/topo.hpp"

namespace beetox {

using Json = nlohmann::ordered_json;

const std::vector<std::string> kResultsHeader{"group",          "method",        "split",         "mcc_mean",
                                              "mcc_std",        "auroc_mean",    "auroc_std",     "precision_mean",
                                              "precision_std",  "recall_mean",   "recall_std",    "manifest_hash"};

namespace {

constexpr double kForestThreshold = 0.5;
constexpr double kSvmThreshold    = 0.0;

bool is_forest_key(std::string_view key) {
  return key == "n_trees" || key == "criterion" || key == "min_samples_split" || key == "max_features";
}

std::string_view split_source_name(SplitSource s) {
  switch (s) {
    case SplitSource::kFiles: return "files";
    case SplitSource::kMaxmin: return "maxmin";
    case SplitSource::kTime: return "time";
    case SplitSource::kColumn: return "column";
    case SplitSource::kNone: return "none";
  }
  return "none";
}

SplitSource split_source_from(std::string_view s) {
  for (SplitSource v : {SplitSource::kFiles, SplitSource::kMaxmin, SplitSource::kTime, SplitSource::kColumn,
                        SplitSource::kNone}) {
    if (split_source_name(v) == s) {
      return v;
    }
  }
  throw ConfigError("unknown split source '" + std::string(s) + "' (files, maxmin, time, column, none)");
}

std::vector<std::string> range_values(int lo, int hi) {
  std::vector<std::string> out;
  for (int v = lo; v <= hi; ++v) {
    out.push_back(std::to_string(v));
  }
  return out;
}

std::string json_scalar_text(const Json& v) {
  if (v.is_string()) {
    return v.get<std::string>();
  }
  if (v.is_boolean()) {
    return v.get<bool>() ? "1" : "0";
  }
  if (v.is_number_integer()) {
    return std::to_string(v.get<long long>());
  }
  if (v.is_number()) {
    std::ostringstream s;
    s << v.get<double>();
    return s.str();
  }
  throw ConfigError("expected a scalar value, got " + v.dump());
}

std::string resolve_path(const std::string& p, const std::string& base) {
  if (p.empty() || base.empty() || std::filesystem::path(p).is_absolute()) {
    return p;
  }
  return (std::filesystem::path(base) / p).lexically_normal().string();
}

// Method defaults, then config-wide fixed values, then the candidate.
Candidate effective_params(const ExperimentConfig& config, const Candidate& candidate) {
  std::vector<std::pair<std::string, std::string>> params;
  const auto set = [&](const std::string& k, const std::string& v) {
    for (auto& [key, value] : params) {
      if (key == k) {
        value = v;
        return;
      }
    }
    params.emplace_back(k, v);
  };
  const MethodFamily family = method_family(config.method);
  if (family == MethodFamily::kKernel) {
    set("c", "1");
    const bool normalized = config.method == "propagation" || config.method == "wl" || config.method == "wl_oa";
    set("normalize", normalized ? "1" : "0");
  } else if (config.method == "ltp") {
    set("n_trees", "500");
    set("criterion", "gini");
    set("min_samples_split", "2");
  } else if (config.method == "moltop") {
    set("n_trees", "500");
    set("criterion", "entropy");
    set("min_samples_split", "10");
  } else {
    set("n_trees", "100");
    set("criterion", "entropy");
    set("min_samples_split", "2");
  }
  for (const auto& [k, v] : config.fixed) {
    set(k, v);
  }
  for (const auto& [k, v] : candidate) {
    set(k, v);
  }
  return params;
}

int to_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const int   x    = std::stoi(v, &used);
    if (used == v.size()) {
      return x;
    }
  } catch (const std::exception&) {
  }
  throw ConfigError("parameter " + key + " must be an integer, got '" + v + "'");
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t  used = 0;
    const double x    = std::stod(v, &used);
    if (used == v.size()) {
      return x;
    }
  } catch (const std::exception&) {
  }
  throw ConfigError("parameter " + key + " must be a number, got '" + v + "'");
}

struct ClassifierParams {
  bool       svm = false;
  ForestSpec forest;
  double     c = 1.0;
};

ClassifierParams classifier_params(MethodFamily family, const Candidate& params) {
  ClassifierParams out;
  out.svm = family == MethodFamily::kKernel;
  for (const auto& [k, v] : params) {
    if (k == "c" && out.svm) {
      out.c = to_double(k, v);
      if (!(out.c > 0)) {
        throw ConfigError("svm: c must be positive");
      }
    } else if (k == "n_trees" && !out.svm) {
      out.forest.n_trees = to_int(k, v);
    } else if (k == "min_samples_split" && !out.svm) {
      out.forest.min_samples_split = to_int(k, v);
    } else if (k == "max_features" && !out.svm) {
      out.forest.max_features = to_int(k, v);
    } else if (k == "criterion" && !out.svm) {
      if (v != "entropy" && v != "gini") {
        throw ConfigError("forest: criterion must be entropy or gini, got '" + v + "'");
      }
      out.forest.criterion = v == "gini" ? SplitCriterion::kGini : SplitCriterion::kEntropy;
    } else if (k == "c" || is_forest_key(k)) {
      throw ConfigError("parameter '" + k + "' does not apply to " + std::string(out.svm ? "svm" : "forest"));
    }
  }
  validate(out.forest);
  return out;
}

//! "method:key=value,..." from the non-classifier parameters.
std::string feature_text(const std::string& method, const Candidate& params) {
  std::string text = method;
  char        sep  = ':';
  for (const auto& [k, v] : params) {
    if (k == "c" || is_forest_key(k)) {
      continue;
    }
    text += sep + k + "=" + v;
    sep = ',';
  }
  return text;
}

TopoHistogramSpec parse_topo_params(std::string_view text, TopoKind& kind) {
  const std::size_t      colon = text.find(':');
  const std::string_view name  = text.substr(0, colon);
  if (name == "ltp") {
    kind = TopoKind::kLtp;
  } else if (name == "moltop") {
    kind = TopoKind::kMoltop;
  } else {
    throw ConfigError("unknown topological baseline '" + std::string(name) + "'");
  }
  TopoHistogramSpec spec;
  spec.degree_max = 0;  // fitted unless given
  std::string_view rest = colon == std::string_view::npos ? std::string_view() : text.substr(colon + 1);
  while (!rest.empty()) {
    const std::size_t      comma = rest.find(',');
    const std::string_view item  = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view() : rest.substr(comma + 1);
    const std::size_t eq = item.find('=');
    const std::string key(item.substr(0, eq));
    const std::string value(eq == std::string_view::npos ? "" : item.substr(eq + 1));
    if (key == "bins") {
      spec.bins = to_int(key, value);
    } else if (key == "degree_max") {
      spec.degree_max = to_double(key, value);
    } else {
      throw ConfigError("topological baseline: unknown key '" + key + "'");
    }
  }
  return spec;
}

// Features of every record for one featurization. Either a matrix (forest) or a Gram matrix (svm).
struct Features {
  std::string     spec_text;  // canonical, enough to recompute for new molecules
  FeatureMatrix   matrix;
  Eigen::MatrixXd gram;
  GramCheck       check{};
};

Features featurize(MethodFamily family, const std::string& text, std::span<const Molecule> mols,
                   const std::vector<std::string>& ids, double fitted_degree_max) {
  Features f;
  switch (family) {
    case MethodFamily::kFingerprint: {
      const FingerprintSpec spec = parse_fingerprint_spec(text);
      f.matrix                   = fingerprint_matrix(compute_fingerprints(mols, spec), ids);
      f.spec_text                = spec.to_string();
      break;
    }
    case MethodFamily::kTopo: {
      TopoKind          kind{};
      TopoHistogramSpec spec = parse_topo_params(text, kind);
      if (spec.degree_max <= 0) {
        spec.degree_max = fitted_degree_max;
      }
      f.matrix    = topo_matrix(mols, kind, spec, ids);
      f.spec_text = std::string(kind == TopoKind::kLtp ? "ltp:" : "moltop:") + spec.to_string();
      break;
    }
    case MethodFamily::kKernel: {
      const KernelSpec spec = parse_kernel_spec(text);
      GramMatrix       g    = gram(mols, spec, ids);
      f.check               = check_gram(g.values);
      if (!f.check.symmetric || !f.check.psd) {
        throw NumericalError("kernel " + spec.to_string() + " is not PSD within tolerance (min eigenvalue " +
                             std::to_string(f.check.min_eigenvalue) + ")");
      }
      f.gram      = std::move(g.values);
      f.spec_text = spec.to_string();
      break;
    }
  }
  return f;
}

std::vector<int> pick(std::span<const int> all, std::span<const int> local) {
  std::vector<int> out;
  out.reserve(local.size());
  for (int i : local) {
    out.push_back(all[i]);
  }
  return out;
}

std::vector<int> labels_at(std::span<const int> labels, std::span<const int> rows) {
  std::vector<int> out;
  for (int r : rows) {
    out.push_back(labels[r]);
  }
  return out;
}

struct Fitted {
  std::optional<Forest>   forest;
  std::optional<SvmModel> svm;
};

Fitted fit(const Features& f, const ClassifierParams& cp, std::span<const int> labels, std::span<const int> train,
           std::uint64_t seed) {
  const std::vector<int> y = labels_at(labels, train);
  const ClassWeights     w = balanced_weights(y);
  Fitted                 out;
  if (cp.svm) {
    SvmSpec spec;
    spec.c             = cp.c;
    spec.class_weights = w;
    out.svm            = svm_fit(slice(f.gram, train, train), y, spec);
  } else {
    ForestSpec spec = cp.forest;
    spec.seed       = seed;
    out.forest      = forest_fit(select_rows(f.matrix, train), y, w, spec);
  }
  return out;
}

std::vector<double> score(const Features& f, const Fitted& model, std::span<const int> train,
                          std::span<const int> rows) {
  if (model.svm) {
    return svm_decision(*model.svm, slice(f.gram, rows, train));
  }
  return model.forest->predict_proba(select_rows(f.matrix, rows));
}

Json candidate_json(const Candidate& c) {
  Json j = Json::object();
  for (const auto& [k, v] : c) {
    j[k] = v;
  }
  return j;
}

Json metrics_json(const Metrics& m) {
  return Json{{"mcc", m.mcc}, {"auroc", m.auroc}, {"precision", m.precision}, {"recall", m.recall}};
}

std::string format_metric(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

Json forest_json(const Forest& forest) {
  Json trees = Json::array();
  for (const auto& tree : forest.trees()) {
    Json feature = Json::array(), threshold = Json::array(), left = Json::array(), right = Json::array(),
         value   = Json::array();
    for (const auto& n : tree) {
      feature.push_back(n.feature);
      threshold.push_back(n.threshold);
      left.push_back(n.left);
      right.push_back(n.right);
      value.push_back(n.positive_fraction);
    }
    trees.push_back(Json{{"feature", feature}, {"threshold", threshold}, {"left", left}, {"right", right},
                         {"value", value}});
  }
  return Json{{"n_features", forest.n_features()}, {"trees", trees}};
}

Forest forest_from_json(const Json& j) {
  std::vector<Forest::Tree> trees;
  for (const auto& t : j.at("trees")) {
    Forest::Tree tree(t.at("feature").size());
    for (std::size_t i = 0; i < tree.size(); ++i) {
      tree[i].feature           = t.at("feature")[i].get<int>();
      tree[i].threshold         = t.at("threshold")[i].get<double>();
      tree[i].left              = t.at("left")[i].get<int>();
      tree[i].right             = t.at("right")[i].get<int>();
      tree[i].positive_fraction = t.at("value")[i].get<double>();
    }
    trees.push_back(std::move(tree));
  }
  return Forest(std::move(trees), j.at("n_features").get<std::size_t>());
}

}  // namespace

MethodFamily method_family(std::string_view method) {
  if (fingerprint_kind_from_string(method)) {
    return MethodFamily::kFingerprint;
  }
  if (method == "ltp" || method == "moltop") {
    return MethodFamily::kTopo;
  }
  for (KernelKind k : {KernelKind::kVertexHist, KernelKind::kEdgeHist, KernelKind::kShortestPath,
                       KernelKind::kPropagation, KernelKind::kWl, KernelKind::kWlOa}) {
    if (to_string(k) == method) {
      return MethodFamily::kKernel;
    }
  }
  throw ConfigError("unknown method '" + std::string(method) + "'");
}

std::vector<Candidate> expand_grid(const std::vector<GridAxis>& grid) {
  std::vector<Candidate> out{Candidate{}};
  for (const auto& axis : grid) {
    if (axis.values.empty()) {
      throw ConfigError("grid axis '" + axis.key + "' has no values");
    }
    std::vector<Candidate> next;
    for (const auto& partial : out) {
      for (const auto& v : axis.values) {
        Candidate c = partial;
        c.emplace_back(axis.key, v);
        next.push_back(std::move(c));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<GridAxis> published_grid(std::string_view method) {
  const GridAxis split{"min_samples_split", range_values(2, 10)};
  const GridAxis count{"count", {"0", "1"}};
  const GridAxis sizes{"fp_size", {"512", "1024", "2048"}};
  const GridAxis c{"c", {"0.01", "0.1", "1", "10", "100"}};
  if (method == "ecfp") {
    return {sizes, {"radius", {"2", "3"}}, count, split};
  }
  if (method == "atom_pair" || method == "topological_torsion") {
    return {sizes, count, split};
  }
  if (method == "branched_path") {
    return {sizes, {"max_path", range_values(5, 9)}, count, split};
  }
  if (method == "substructure") {
    return {count, split};
  }
  if (method == "wl" || method == "wl_oa") {
    return {{"n_iter", range_values(1, 5)}, c};
  }
  if (method == "propagation") {
    return {{"t_max", range_values(1, 5)}, c};
  }
  if (method == "shortest_path" || method == "vertex_hist" || method == "edge_hist") {
    return {c};
  }
  method_family(method);
  return {};  // atom_counts, ltp, moltop: fixed models
}

void resolve_grid(ExperimentConfig& config) {
  if (!config.paper_grid) {
    return;
  }
  const auto published = published_grid(config.method);
  if (config.grid.empty()) {
    config.grid = published;
    return;
  }
  for (const auto& axis : config.grid) {
    const auto it = std::find_if(published.begin(), published.end(), [&](const GridAxis& p) { return p.key == axis.key; });
    if (it == published.end()) {
      throw ConfigError("--paper-grid: '" + axis.key + "' is not tuned for " + config.method);
    }
    for (const auto& v : axis.values) {
      const bool inside = std::any_of(it->values.begin(), it->values.end(), [&](const std::string& p) {
        return p == v || (std::stod(p) == to_double(axis.key, v));
      });
      if (!inside) {
        throw ConfigError("--paper-grid: " + axis.key + "=" + v + " is outside the published range for " +
                          config.method);
      }
    }
  }
}

ExperimentConfig parse_experiment_config(std::string_view text, const std::string& base_dir) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) {
    throw ConfigError("config must be a JSON object");
  }
  static const std::vector<std::string> kKeys{"dataset", "columns", "split",   "group",     "method",
                                              "name",    "fixed",   "grid",    "paper_grid", "seeds",
                                              "base_seed", "cv_seed", "folds", "strict",    "output"};
  for (const auto& [k, v] : j.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), k) == kKeys.end()) {
      throw ConfigError("config: unknown key '" + k + "'");
    }
  }
  ExperimentConfig c;
  try {
    c.dataset = resolve_path(j.at("dataset").get<std::string>(), base_dir);
    c.method  = j.at("method").get<std::string>();
    method_family(c.method);
    if (j.contains("columns")) {
      std::string mapping;
      for (const auto& [k, v] : j["columns"].items()) {
        mapping += (mapping.empty() ? "" : ",") + k + "=" + v.get<std::string>();
      }
      c.columns = parse_column_mapping(mapping);
    }
    if (j.contains("split")) {
      const Json& s  = j["split"];
      c.split_source = split_source_from(s.value("source", "maxmin"));
      c.split_name   = s.value("name", "");
      c.train_file   = resolve_path(s.value("train", ""), base_dir);
      c.test_file    = resolve_path(s.value("test", ""), base_dir);
      c.test_fraction     = s.value("fraction", 0.2);
      c.split_fingerprint = s.value("fingerprint", c.split_fingerprint);
      for (const auto& [k, v] : s.items()) {
        if (k != "source" && k != "name" && k != "train" && k != "test" && k != "fraction" && k != "fingerprint") {
          throw ConfigError("config: unknown split key '" + k + "'");
        }
      }
    }
    if (c.split_name.empty()) {
      c.split_name = std::string(split_source_name(c.split_source));
    }
    c.group = j.value("group", "");
    c.name  = j.value("name", c.method);
    if (j.contains("fixed")) {
      for (const auto& [k, v] : j["fixed"].items()) {
        std::string value = json_scalar_text(v);
        if (k == "patterns") {
          value = resolve_path(value, base_dir);
        }
        c.fixed.emplace_back(k, value);
      }
    }
    if (j.contains("grid")) {
      for (const auto& [k, v] : j["grid"].items()) {
        GridAxis axis{k, {}};
        for (const auto& x : v.is_array() ? v : Json::array({v})) {
          axis.values.push_back(json_scalar_text(x));
        }
        c.grid.push_back(std::move(axis));
      }
    }
    c.paper_grid = j.value("paper_grid", false);
    c.seeds      = j.value("seeds", 50);
    c.base_seed  = j.value("base_seed", std::uint64_t{0});
    c.cv_seed    = j.value("cv_seed", std::uint64_t{0});
    c.folds      = j.value("folds", 5);
    c.strict     = j.value("strict", false);
    c.output_dir = resolve_path(j.value("output", std::string("results")), base_dir);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (c.seeds < 1) {
    throw ConfigError("config: seeds must be at least 1");
  }
  if (c.folds < 2) {
    throw ConfigError("config: folds must be at least 2");
  }
  if (c.split_source == SplitSource::kFiles && c.test_file.empty()) {
    throw ConfigError("config: split source 'files' needs a test file");
  }
  return c;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  ExperimentConfig config = parse_experiment_config(buffer.str(), std::filesystem::path(path).parent_path().string());
  std::vector<std::string> referenced{config.dataset, config.train_file, config.test_file};
  for (const auto& [k, v] : config.fixed) {
    if (k == "patterns") {
      referenced.push_back(v);
    }
  }
  for (const auto& file : referenced) {
    if (!file.empty() && !std::filesystem::is_regular_file(file)) {
      throw ConfigError("config " + path + ": file not found: " + file);
    }
  }
  return config;
}

std::string experiment_config_json(const ExperimentConfig& c) {
  Json grid = Json::object();
  for (const auto& axis : c.grid) {
    grid[axis.key] = axis.values;
  }
  Json j{{"dataset", c.dataset},
         {"columns",
          {{"smiles", c.columns.smiles},
           {"label", c.columns.label},
           {"id", c.columns.id},
           {"year", c.columns.year},
           {"split", c.columns.split}}},
         {"split",
          {{"source", split_source_name(c.split_source)},
           {"name", c.split_name},
           {"train", c.train_file},
           {"test", c.test_file},
           {"fraction", c.test_fraction},
           {"fingerprint", c.split_fingerprint}}},
         {"group", c.group},
         {"method", c.method},
         {"name", c.name},
         {"fixed", candidate_json(c.fixed)},
         {"grid", grid},
         {"paper_grid", c.paper_grid},
         {"seeds", c.seeds},
         {"base_seed", c.base_seed},
         {"cv_seed", c.cv_seed},
         {"folds", c.folds},
         {"strict", c.strict},
         {"output", c.output_dir}};
  return j.dump(2);
}

Dataset prepare_dataset(const ExperimentConfig& config) {
  IngestOptions options;
  options.columns = config.columns;
  options.strict  = config.strict;
  Dataset data    = ingest(config.dataset, options);
  for (auto& r : data.records) {
    if (config.split_source != SplitSource::kColumn) {
      r.split.reset();
    }
  }
  switch (config.split_source) {
    case SplitSource::kFiles:
      apply_split_file(data, config.test_file, "test", config.columns);
      if (!config.train_file.empty()) {
        apply_split_file(data, config.train_file, "train", config.columns);
        tag_remaining(data, "unused");
      } else {
        tag_remaining(data, "train");
      }
      break;
    case SplitSource::kMaxmin: {
      const auto fps   = compute_fingerprints(data.molecules(), parse_fingerprint_spec(config.split_fingerprint));
      const auto split = maxmin_split(tanimoto_distances(fps), config.test_fraction);
      for (int i : split.test) {
        data.records[i].split = "test";
      }
      tag_remaining(data, "train");
      break;
    }
    case SplitSource::kTime: time_split(data, config.test_fraction); break;
    case SplitSource::kColumn:
      for (const auto& r : data.records) {
        if (!r.split || (*r.split != "train" && *r.split != "test")) {
          throw DataError("record '" + r.id + "' has split '" + r.split.value_or("") + "', expected train or test");
        }
      }
      break;
    case SplitSource::kNone: tag_remaining(data, "train"); break;
  }
  data.refresh_hash();
  return data;
}

RunResult run_experiment(const ExperimentConfig& config_in, const Dataset& data) {
  const auto       started = std::chrono::steady_clock::now();
  ExperimentConfig config  = config_in;
  resolve_grid(config);
  const MethodFamily family = method_family(config.method);
  const auto         labels = data.labels();
  const auto         train  = data.split_indices("train");
  const auto         test   = data.split_indices("test");
  if (train.empty()) {
    throw DataError("no training records");
  }
  const auto            mols       = data.molecules();
  const auto            ids        = data.ids();
  const double          degree_max = fit_degree_range(mols);
  const std::vector<int> y_train   = labels_at(labels, train);

  RunResult result;
  result.candidates = expand_grid(config.grid);

  std::map<std::string, std::shared_ptr<Features>> cache;
  const auto features_for = [&](const Candidate& params) -> const Features& {
    const std::string text = feature_text(config.method, params);
    auto              it   = cache.find(text);
    if (it == cache.end()) {
      it = cache.emplace(text, std::make_shared<Features>(featurize(family, text, mols, ids, degree_max))).first;
    }
    return *it->second;
  };

  // Tuning on the training split only. A single candidate needs no cross-validation.
  if (result.candidates.size() > 1) {
    result.grid = grid_search_cv(result.candidates.size(), y_train, config.folds, config.cv_seed,
                                 [&](std::size_t c, const FoldIndices& fold) {
                                   const Candidate  params = effective_params(config, result.candidates[c]);
                                   const Features&  f      = features_for(params);
                                   const auto       cp     = classifier_params(family, params);
                                   const auto       tr     = pick(train, fold.train);
                                   const auto       va     = pick(train, fold.validation);
                                   return score(f, fit(f, cp, labels, tr, config.base_seed), tr, va);
                                 });
  } else {
    result.grid.best = 0;
    result.grid.mean_auroc.assign(1, std::numeric_limits<double>::quiet_NaN());
  }
  result.winner          = result.candidates[result.grid.best];
  const Candidate params = effective_params(config, result.winner);
  const auto      cp     = classifier_params(family, params);
  const Features& f      = features_for(params);

  // Evaluation: forests retrained with every seed, the SVM once.
  const int            runs      = cp.svm ? 1 : config.seeds;
  const double         threshold = cp.svm ? kSvmThreshold : kForestThreshold;
  std::vector<Metrics> metrics;
  std::optional<Fitted> model;
  for (int s = 0; s < runs; ++s) {
    Fitted m = fit(f, cp, labels, train, config.base_seed + static_cast<std::uint64_t>(s));
    if (!test.empty()) {
      metrics.push_back(evaluate(labels_at(labels, test), score(f, m, train, test), threshold));
    }
    if (s == 0) {
      model = std::move(m);
    }
  }
  result.evaluated = !test.empty();
  result.summary   = summarize(metrics);

  Json candidates = Json::array();
  for (std::size_t c = 0; c < result.candidates.size(); ++c) {
    Json entry = candidate_json(result.candidates[c]);
    entry["cv_auroc"] = std::isnan(result.grid.mean_auroc[c]) ? Json(nullptr) : Json(result.grid.mean_auroc[c]);
    candidates.push_back(entry);
  }
  Json runs_json = Json::array();
  for (const auto& m : metrics) {
    runs_json.push_back(metrics_json(m));
  }
  Json manifest{{"toolkit", "beetox"},
                {"version", kVersion},
                {"config", Json::parse(experiment_config_json(config))},
                {"dataset",
                 {{"name", data.name},
                  {"content_hash", data.content_hash},
                  {"records", data.size()},
                  {"positives", data.positives()},
                  {"train", train.size()},
                  {"test", test.size()},
                  {"parse_failures", data.failures.size()}}},
                {"classifier", cp.svm ? "svm" : "forest"},
                {"feature_spec", f.spec_text},
                {"candidates", candidates},
                {"winner", candidate_json(params)},
                {"seeds", runs},
                {"runs", runs_json}};
  if (model->svm) {
    manifest["svm_iterations"] = model->svm->iterations;
  }
  if (family == MethodFamily::kKernel) {
    manifest["gram_check"] = {{"max_asymmetry", f.check.max_asymmetry},
                              {"min_eigenvalue", f.check.min_eigenvalue},
                              {"psd_tolerance", f.check.psd_tolerance}};
  }
  if (result.evaluated) {
    manifest["summary"] = {{"mean", metrics_json(result.summary.mean)}, {"std", metrics_json(result.summary.std)}};
  }
  // Paths and timing stay out of the hash; the dataset enters through its content hash.
  Json hashed                        = manifest;
  hashed["config"]["dataset"]        = std::filesystem::path(config.dataset).filename().string();
  hashed["config"]["split"]["train"] = std::filesystem::path(config.train_file).filename().string();
  hashed["config"]["split"]["test"]  = std::filesystem::path(config.test_file).filename().string();
  hashed["config"].erase("output");
  result.manifest_hash = hex_digest(hashed.dump());
  manifest["manifest_hash"] = result.manifest_hash;
  manifest["timing_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  result.manifest_json = manifest.dump(2);

  if (result.evaluated) {
    std::ostringstream csv;
    write_csv_row(csv, kResultsHeader);
    const auto& mean = result.summary.mean;
    const auto& sd   = result.summary.std;
    write_csv_row(csv, {config.group, config.name, config.split_name, format_metric(mean.mcc), format_metric(sd.mcc),
                        format_metric(mean.auroc), format_metric(sd.auroc), format_metric(mean.precision),
                        format_metric(sd.precision), format_metric(mean.recall), format_metric(sd.recall),
                        result.manifest_hash});
    result.results_csv = csv.str();
  }

  Json model_json{{"toolkit", "beetox"},
                  {"version", kVersion},
                  {"manifest_hash", result.manifest_hash},
                  {"method", config.method},
                  {"feature_spec", f.spec_text},
                  {"threshold", threshold}};
  if (model->svm) {
    Json sv_smiles = Json::array(), coef = Json::array();
    for (std::size_t k = 0; k < train.size(); ++k) {
      if (model->svm->dual_coef[k] != 0.0) {
        sv_smiles.push_back(data.records[train[k]].smiles);
        coef.push_back(model->svm->dual_coef[k]);
      }
    }
    model_json["classifier"] = "svm";
    model_json["svm"]        = {{"bias", model->svm->bias}, {"dual_coef", coef}, {"support_smiles", sv_smiles}};
  } else {
    model_json["classifier"] = "forest";
    model_json["forest"]     = forest_json(*model->forest);
  }
  result.model_json = model_json.dump();
  return result;
}

void write_run_outputs(const ExperimentConfig& config, const RunResult& result) {
  std::filesystem::create_directories(config.output_dir);
  const auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream out(std::filesystem::path(config.output_dir) / name, std::ios::binary);
    if (!out) {
      throw ConfigError("cannot write " + (std::filesystem::path(config.output_dir) / name).string());
    }
    out << text;
  };
  if (result.evaluated) {
    write("results.csv", result.results_csv);
  }
  write("manifest.json", result.manifest_json + "\n");
  write("model.json", result.model_json + "\n");
}

std::vector<Prediction> predict(std::string_view model_text, const Dataset& input) {
  Json model;
  try {
    model = Json::parse(model_text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("model file is not valid JSON: ") + e.what());
  }
  std::vector<Prediction> out;
  if (input.records.empty()) {
    return out;
  }
  try {
    const std::string  method    = model.at("method").get<std::string>();
    const std::string  spec_text = model.at("feature_spec").get<std::string>();
    const double       threshold = model.at("threshold").get<double>();
    const MethodFamily family    = method_family(method);
    if (spec_text.substr(0, spec_text.find(':')) != method) {
      throw ConfigError("model feature spec '" + spec_text + "' does not match method " + method);
    }
    const auto          mols = input.molecules();
    std::vector<double> scores;
    if (model.at("classifier") == "svm") {
      if (family != MethodFamily::kKernel) {
        throw ConfigError("svm model with a non-kernel method");
      }
      const Json&           svm = model.at("svm");
      std::vector<Molecule> all;
      for (const auto& s : svm.at("support_smiles")) {
        all.push_back(parse_smiles(s.get<std::string>()));
      }
      const auto n_sv = static_cast<int>(all.size());
      all.insert(all.end(), mols.begin(), mols.end());
      const auto k = gram(all, parse_kernel_spec(spec_text)).values;
      SvmModel   m;
      m.bias      = svm.at("bias").get<double>();
      m.dual_coef = svm.at("dual_coef").get<std::vector<double>>();
      scores      = svm_decision(m, k.block(n_sv, 0, static_cast<Eigen::Index>(mols.size()), n_sv));
    } else {
      if (family == MethodFamily::kKernel) {
        throw ConfigError("forest model with a kernel method");
      }
      const Forest   forest = forest_from_json(model.at("forest"));
      const Features f      = featurize(family, spec_text, mols, input.ids(), 0.0);
      if (f.spec_text != spec_text) {
        throw ConfigError("feature spec mismatch: model has '" + spec_text + "', recomputed '" + f.spec_text + "'");
      }
      scores = forest.predict_proba(f.matrix);
    }
    for (std::size_t i = 0; i < scores.size(); ++i) {
      out.push_back({input.records[i].id, input.records[i].smiles, scores[i], scores[i] > threshold ? 1 : 0});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("model file: ") + e.what());
  }
  return out;
}

}  // namespace beetox
