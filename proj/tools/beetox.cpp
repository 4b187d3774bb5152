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


// Command-line front end: ingest, split maxmin, run, predict, analyze.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "beetox/chemspace.hpp"
#include "beetox/csv.hpp"
#include "beetox/dataset.hpp"
#include "beetox/descriptors.hpp"
#include "beetox/error.hpp"
#include "beetox/experiment.hpp"
#include "beetox/fingerprints.hpp"
#include "beetox/pattern.hpp"

namespace fs = std::filesystem;
using namespace beetox;

namespace {

struct Common {
  std::string columns;
  bool        strict = false;
  std::string data_dir = BEETOX_DATA_DIR;
};

IngestOptions ingest_options(const Common& common, bool labels) {
  IngestOptions o;
  if (!common.columns.empty()) {
    o.columns = parse_column_mapping(common.columns);
  }
  o.strict         = common.strict;
  o.require_labels = labels;
  return o;
}

void report_failures(const Dataset& d) {
  for (const auto& f : d.failures) {
    std::cerr << d.path << ":" << f.line << ": skipped '" << f.smiles << "': " << f.message << "\n";
  }
}

std::ofstream open_output(const std::string& path) {
  if (!path.empty() && fs::path(path).has_parent_path()) {
    fs::create_directories(fs::path(path).parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot write " + path);
  }
  return out;
}

// Writes the table to `path` (stdout when empty).
void emit(const std::string& path, const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream text;
  for (const auto& row : rows) {
    write_csv_row(text, row);
  }
  if (path.empty()) {
    std::cout << text.str();
  } else {
    open_output(path) << text.str();
  }
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

//! Long-form label,value pairs for external plotting.
void emit_plot_data(const std::string& path, const std::vector<std::pair<std::string, double>>& points) {
  if (path.empty()) {
    return;
  }
  std::vector<std::vector<std::string>> rows{{"label", "value"}};
  for (const auto& [label, value] : points) {
    rows.push_back({label, num(value)});
  }
  emit(path, rows);
}

int cmd_ingest(const Common& common, const std::string& csv, const std::vector<std::string>& split_files,
               const std::string& output, bool unlabeled) {
  const IngestOptions o = ingest_options(common, !unlabeled);
  Dataset             d = ingest(csv, o);
  for (const auto& spec : split_files) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("--split-file expects TAG=PATH, got '" + spec + "'");
    }
    apply_split_file(d, spec.substr(eq + 1), spec.substr(0, eq), o.columns);
  }
  d.refresh_hash();
  report_failures(d);
  std::cout << "dataset," << d.name << "\nrecords," << d.size() << "\n";
  if (!unlabeled) {
    std::cout << "positives," << d.positives() << "\nnegatives," << d.size() - d.positives() << "\n";
  }
  std::cout << "parse_failures," << d.failures.size() << "\ncontent_hash," << d.content_hash << "\n";
  if (!split_files.empty()) {
    std::map<std::string, std::size_t> counts;
    for (const auto& r : d.records) {
      ++counts[r.split.value_or("untagged")];
    }
    for (const auto& [tag, n] : counts) {
      std::cout << "split_" << tag << "," << n << "\n";
    }
  }
  if (!output.empty()) {
    std::vector<std::vector<std::string>> rows{{"name", "SMILES", "label", "split"}};
    for (const auto& r : d.records) {
      rows.push_back({r.id, r.smiles, r.label ? std::to_string(*r.label) : "", r.split.value_or("")});
    }
    emit(output, rows);
  }
  return 0;
}

int cmd_split(const Common& common, const std::string& csv, const std::string& out_dir, double fraction,
              const std::string& fingerprint) {
  Dataset    d     = ingest(csv, ingest_options(common, false));
  const auto fps   = compute_fingerprints(d.molecules(), parse_fingerprint_spec(fingerprint));
  const auto split = maxmin_split(tanimoto_distances(fps), fraction);
  report_failures(d);
  std::vector<bool> in_test(d.size(), false);
  std::vector<std::vector<std::string>> test{{"name", "SMILES"}}, train{{"name", "SMILES"}};
  for (int i : split.test) {
    in_test[i] = true;
    test.push_back({d.records[i].id, d.records[i].smiles});
  }
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!in_test[i]) {
      train.push_back({d.records[i].id, d.records[i].smiles});
    }
  }
  fs::create_directories(out_dir);
  emit((fs::path(out_dir) / "train.csv").string(), train);
  emit((fs::path(out_dir) / "test.csv").string(), test);
  std::cout << "train," << train.size() - 1 << "\ntest," << test.size() - 1 << "\n";
  return 0;
}

int cmd_run(const std::string& config_path, bool paper_grid, int seeds, bool strict, const std::string& output) {
  ExperimentConfig config = load_experiment_config(config_path);
  config.paper_grid       = config.paper_grid || paper_grid;
  config.strict           = config.strict || strict;
  if (seeds > 0) {
    config.seeds = seeds;
  }
  if (!output.empty()) {
    config.output_dir = output;
  }
  resolve_grid(config);
  const Dataset data = prepare_dataset(config);
  report_failures(data);
  const RunResult result = run_experiment(config, data);
  write_run_outputs(config, result);
  if (result.evaluated) {
    std::cout << result.results_csv;
  } else {
    std::cout << "no test records; model written to " << (fs::path(config.output_dir) / "model.json").string()
              << "\n";
  }
  return 0;
}

int cmd_predict(const Common& common, const std::string& model_path, const std::string& input,
                const std::string& output) {
  std::ifstream model_in(model_path);
  if (!model_in) {
    throw ConfigError("cannot open model file " + model_path);
  }
  std::stringstream model;
  model << model_in.rdbuf();
  IngestOptions o = ingest_options(common, false);
  o.allow_empty   = true;
  const Dataset d = ingest(input, o);
  report_failures(d);
  std::vector<std::vector<std::string>> rows{{"name", "SMILES", "score", "label"}};
  for (const auto& p : predict(model.str(), d)) {
    rows.push_back({p.id, p.smiles, num(p.score), std::to_string(p.label)});
  }
  emit(output, rows);
  return 0;
}

struct AnalyzeArgs {
  std::vector<std::string> inputs;
  std::string              output;
  std::string              plot_data;
  std::vector<std::string> rules;
  std::string              patterns;
  std::string              fingerprint = "substructure:patterns=maccs.tsv";
  double                   threshold   = 0.05;
};

std::vector<Dataset> load_all(const Common& common, const AnalyzeArgs& a) {
  std::vector<Dataset> out;
  for (const auto& path : a.inputs) {
    out.push_back(ingest(path, ingest_options(common, false)));
    report_failures(out.back());
  }
  return out;
}

std::string in_data_dir(const Common& common, const std::string& sub, const std::string& file) {
  if (file.find('/') != std::string::npos || fs::exists(file)) {
    return file;
  }
  return (fs::path(common.data_dir) / sub / file).string();
}

int cmd_analyze(const Common& common, const std::string& what, const AnalyzeArgs& a) {
  const auto data = load_all(common, a);
  std::vector<std::vector<std::string>>         rows;
  std::vector<std::pair<std::string, double>>   plot;
  const std::string patterns = in_data_dir(common, "patterns", a.patterns.empty() ? "laggner.tsv" : a.patterns);

  if (what == "filters") {
    std::vector<std::string> files = a.rules;
    if (files.empty()) {
      files = {"lipinski.json", "ghose.json", "hao.json", "tice_insecticides.json", "brenk.json"};
    }
    std::vector<FilterRuleSet> rules;
    for (const auto& f : files) {
      rules.push_back(load_filter_rules(in_data_dir(common, "filters", f)));
    }
    std::vector<std::vector<Molecule>> mols;
    std::vector<NamedMolecules>        named;
    for (const auto& d : data) {
      mols.push_back(d.molecules());
    }
    for (std::size_t i = 0; i < data.size(); ++i) {
      named.push_back({data[i].name, mols[i]});
    }
    const PassRateTable t = filter_pass_rates(named, rules);
    rows.push_back({"filter"});
    rows[0].insert(rows[0].end(), t.datasets.begin(), t.datasets.end());
    for (std::size_t f = 0; f < t.filters.size(); ++f) {
      std::vector<std::string> row{t.filters[f]};
      for (std::size_t d = 0; d < t.datasets.size(); ++d) {
        row.push_back(num(t.values[f][d]));
        plot.emplace_back(t.filters[f] + "|" + t.datasets[d], t.values[f][d]);
      }
      rows.push_back(std::move(row));
    }
  } else if (what == "diversity") {
    rows.push_back({"dataset", "molecules", "normalized_circles"});
    for (const auto& d : data) {
      const double v = normalized_n_circles(d.molecules());
      rows.push_back({d.name, std::to_string(d.size()), num(v)});
      plot.emplace_back(d.name, v);
    }
  } else if (what == "profile") {
    const PatternSet groups = load_pattern_file(patterns);
    rows.push_back({"dataset", "molecules", "fragmented_share", "nonmedical_share"});
    for (const auto& d : data) {
      const DatasetProfile p = dataset_profile(d.molecules(), groups);
      rows.push_back({d.name, std::to_string(p.molecules), num(p.fragmented_share), num(p.nonmedical_share)});
      plot.emplace_back(d.name + "|fragmented_share", p.fragmented_share);
      plot.emplace_back(d.name + "|nonmedical_share", p.nonmedical_share);
    }
  } else if (what == "similarity-map") {
    std::string spec = a.fingerprint;
    const auto  pos  = spec.find("patterns=");
    if (pos != std::string::npos) {
      const auto end  = spec.find(',', pos);
      const auto file = spec.substr(pos + 9, end == std::string::npos ? std::string::npos : end - pos - 9);
      spec.replace(pos + 9, file.size(), in_data_dir(common, "patterns", file));
    }
    std::vector<std::vector<Molecule>> mols;
    std::vector<std::string>           names;
    for (const auto& d : data) {
      mols.push_back(d.molecules());
      names.push_back(d.name);
    }
    const SimilarityMap m = similarity_map(mols, names, parse_fingerprint_spec(spec));
    rows.push_back({"dataset"});
    rows[0].insert(rows[0].end(), m.names.begin(), m.names.end());
    for (std::size_t i = 0; i < m.names.size(); ++i) {
      std::vector<std::string> row{m.names[i]};
      for (std::size_t j = 0; j < m.names.size(); ++j) {
        row.push_back(num(m.values(i, j)));
        plot.emplace_back(m.names[i] + "|" + m.names[j], m.values(i, j));
      }
      rows.push_back(std::move(row));
    }
  } else if (what == "unique-groups") {
    const PatternSet            groups = load_pattern_file(patterns);
    std::vector<DatasetProfile> profiles;
    for (const auto& d : data) {
      profiles.push_back(dataset_profile(d.molecules(), groups));
    }
    const auto shares = unique_functional_groups(profiles, a.threshold);
    rows.push_back({"dataset", "unique_group_share"});
    for (std::size_t i = 0; i < data.size(); ++i) {
      rows.push_back({data[i].name, num(shares[i])});
      plot.emplace_back(data[i].name, shares[i]);
    }
  }
  emit(a.output, rows);
  emit_plot_data(a.plot_data, plot);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"beetox: molecular toxicity benchmarking toolkit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Common common;
  app.add_option("--columns", common.columns, "Column mapping, e.g. smiles=SMILES,label=toxic,id=CID");
  app.add_flag("--strict", common.strict, "Treat any unparseable SMILES as fatal");
  app.add_option("--data-dir", common.data_dir, "Directory holding patterns/ and filters/")->capture_default_str();

  std::string              csv, output, out_dir, config, model, fingerprint = "ecfp:fp_size=1024,radius=2";
  std::vector<std::string> split_files;
  double                   fraction   = 0.2;
  bool                     paper_grid = false;
  int                      seeds      = 0;

  auto* ingest_cmd = app.add_subcommand("ingest", "Parse a dataset CSV and report record counts");
  ingest_cmd->add_option("csv", csv, "Dataset CSV")->required()->check(CLI::ExistingFile);
  ingest_cmd->add_option("--split-file", split_files, "TAG=PATH, records listed in PATH get split TAG");
  ingest_cmd->add_option("--output", output, "Write the parsed records as CSV");
  bool unlabeled = false;
  ingest_cmd->add_flag("--unlabeled", unlabeled, "Do not require a label column");

  auto* split_cmd = app.add_subcommand("split", "Generate a train/test split");
  split_cmd->require_subcommand(1);
  auto* maxmin_cmd = split_cmd->add_subcommand("maxmin", "MaxMin diversity split on Tanimoto distances");
  maxmin_cmd->add_option("csv", csv, "Dataset CSV")->required()->check(CLI::ExistingFile);
  maxmin_cmd->add_option("--output-dir", out_dir, "Directory for train.csv and test.csv")->required();
  maxmin_cmd->add_option("--fraction", fraction, "Test fraction")->capture_default_str();
  maxmin_cmd->add_option("--fingerprint", fingerprint, "Fingerprint spec")->capture_default_str();

  auto* run_cmd = app.add_subcommand("run", "Tune, retrain over seeds and evaluate one method");
  run_cmd->add_option("--config", config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  run_cmd->add_flag("--paper-grid", paper_grid, "Use the published hyperparameter grid for the method");
  run_cmd->add_option("--seeds", seeds, "Number of evaluation seeds")->check(CLI::PositiveNumber);
  run_cmd->add_option("--output", output, "Output directory (overrides the config)");
  run_cmd->add_flag("--strict", common.strict, "Treat any unparseable SMILES as fatal");

  auto* predict_cmd = app.add_subcommand("predict", "Score molecules with a saved model");
  predict_cmd->add_option("--model", model, "model.json from a run")->required()->check(CLI::ExistingFile);
  predict_cmd->add_option("--input", csv, "CSV with a SMILES column")->required()->check(CLI::ExistingFile);
  predict_cmd->add_option("--output", output, "Output CSV (stdout when omitted)");

  AnalyzeArgs analyze;
  auto*       analyze_cmd = app.add_subcommand("analyze", "Dataset analyses");
  analyze_cmd->require_subcommand(1);
  for (const char* name : {"filters", "diversity", "profile", "similarity-map", "unique-groups"}) {
    auto* sub = analyze_cmd->add_subcommand(name);
    sub->add_option("csv", analyze.inputs, "Dataset CSVs")->required()->check(CLI::ExistingFile);
    sub->add_option("--output", analyze.output, "Table CSV (stdout when omitted)");
    sub->add_option("--plot-data", analyze.plot_data, "label,value CSV for plotting");
    if (std::string_view(name) == "filters") {
      sub->add_option("--rules", analyze.rules, "Filter rule files (default: all bundled)");
    }
    if (std::string_view(name) == "profile" || std::string_view(name) == "unique-groups") {
      sub->add_option("--patterns", analyze.patterns, "Functional group pattern file")
          ->default_str("laggner.tsv");
    }
    if (std::string_view(name) == "unique-groups") {
      sub->add_option("--threshold", analyze.threshold, "Presence threshold")->capture_default_str();
    }
    if (std::string_view(name) == "similarity-map") {
      sub->add_option("--fingerprint", analyze.fingerprint, "Fingerprint spec")->capture_default_str();
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*ingest_cmd) {
      return cmd_ingest(common, csv, split_files, output, unlabeled);
    }
    if (*maxmin_cmd) {
      return cmd_split(common, csv, out_dir, fraction, fingerprint);
    }
    if (*run_cmd) {
      return cmd_run(config, paper_grid, seeds, common.strict, output);
    }
    if (*predict_cmd) {
      return cmd_predict(common, model, csv, output);
    }
    if (*analyze_cmd) {
      return cmd_analyze(common, analyze_cmd->get_subcommands().front()->get_name(), analyze);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
