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


// Acceptance suite. `beetox_acceptance N` checks criterion N (1..10) and prints one line:
//   [PASS] / [FAIL] / [SKIP] <N> <title>: <detail>
// Exit codes: 0 pass, 1 fail, 77 skipped (required data absent).
//
// ApisTox-dependent criteria read BEETOX_APISTOX_DIR (the dataset distribution). Optional overrides:
// BEETOX_APISTOX_CSV, BEETOX_APISTOX_COLUMNS, BEETOX_APISTOX_MAXMIN_TEST, BEETOX_APISTOX_TIME_TEST,
// BEETOX_CONTROL_CSV.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

#include "beetox/chemspace.hpp"
#include "beetox/csv.hpp"
#include "beetox/dataset.hpp"
#include "beetox/descriptors.hpp"
#include "beetox/error.hpp"
#include "beetox/experiment.hpp"
#include "beetox/kernels.hpp"
#include "beetox/learn.hpp"
#include "beetox/pattern.hpp"
#include "beetox/smiles.hpp"

namespace fs = std::filesystem;
using namespace beetox;

namespace {

// Tolerances and bands.
constexpr std::size_t kApisToxRecords   = 1035;
constexpr std::size_t kApisToxPositives = 296;
constexpr double      kIngestSeconds    = 10;
constexpr double      kFilterBand       = 3.0;  // percentage points
constexpr double      kFilterSeconds    = 60;
constexpr double      kFragmentedLo     = 13.0;
constexpr double      kFragmentedHi     = 15.0;
constexpr double      kMinMcc           = 0.40;
constexpr double      kMinAurocTime     = 0.72;
constexpr double      kMinAurocMaxmin   = 0.78;
constexpr double      kAtomCountsBand   = 0.10;
constexpr double      kAtomCountsMaxmin = 0.36;
constexpr double      kAtomCountsTime   = 0.29;
constexpr double      kRunSeconds       = 30 * 60;
constexpr double      kMetricTolerance  = 1e-12;
constexpr int         kMetricInstances  = 1000;
constexpr double      kSymmetryTol      = 1e-9;
constexpr double      kDiagonalTol      = 1e-12;
constexpr double      kPermutationTol   = 1e-9;
constexpr int         kKernelMolecules  = 100;
constexpr int         kCirclesInstances = 200;
constexpr int         kCirclesMaxSize   = 12;
constexpr double      kCirclesSeconds   = 60;
constexpr double      kDualTol          = 1e-8;
constexpr int         kSvmInstances     = 50;

struct Outcome {
  enum Status { kPass, kFail, kSkip } status;
  std::string detail;
};

Outcome fail(std::string d) { return {Outcome::kFail, std::move(d)}; }
Outcome skip(std::string d) { return {Outcome::kSkip, std::move(d)}; }
Outcome check(bool ok, std::string d) { return {ok ? Outcome::kPass : Outcome::kFail, std::move(d)}; }

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

std::string sci(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(2) << v;
  return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

std::string env(const char* name) {
  const char* v = std::getenv(name);
  return v ? v : "";
}

// ---- ApisTox discovery --------------------------------------------------------------------------------------------

std::optional<std::string> first_existing(const std::string& dir, std::initializer_list<const char*> candidates) {
  for (const char* c : candidates) {
    const fs::path p = fs::path(dir) / c;
    if (fs::is_regular_file(p)) {
      return p.string();
    }
  }
  return std::nullopt;
}

struct ApisTox {
  Dataset                    data;
  ColumnMapping              columns;
  std::optional<std::string> maxmin_test;
  std::optional<std::string> time_test;
};

std::optional<std::string> apistox_csv() {
  if (!env("BEETOX_APISTOX_CSV").empty()) {
    return env("BEETOX_APISTOX_CSV");
  }
  const std::string dir = env("BEETOX_APISTOX_DIR");
  if (dir.empty()) {
    return std::nullopt;
  }
  return first_existing(dir, {"dataset_final.csv", "outputs/dataset_final.csv", "data/dataset_final.csv",
                              "apistox.csv", "ApisTox.csv"});
}

std::optional<ApisTox> load_apistox(bool strict) {
  const auto csv = apistox_csv();
  if (!csv) {
    return std::nullopt;
  }
  ApisTox a;
  if (!env("BEETOX_APISTOX_COLUMNS").empty()) {
    a.columns = parse_column_mapping(env("BEETOX_APISTOX_COLUMNS"));
  }
  IngestOptions o;
  o.columns = a.columns;
  o.strict  = strict;
  a.data    = ingest(*csv, o);
  const std::string dir = env("BEETOX_APISTOX_DIR");
  a.maxmin_test         = !env("BEETOX_APISTOX_MAXMIN_TEST").empty()
                              ? std::optional(env("BEETOX_APISTOX_MAXMIN_TEST"))
                              : first_existing(dir, {"splits/maxmin/test.csv", "outputs/splits/maxmin/test.csv",
                                                     "maxmin_test.csv", "splits/maxmin_test.csv"});
  a.time_test           = !env("BEETOX_APISTOX_TIME_TEST").empty()
                              ? std::optional(env("BEETOX_APISTOX_TIME_TEST"))
                              : first_existing(dir, {"splits/time/test.csv", "outputs/splits/time/test.csv",
                                                     "time_test.csv", "splits/time_test.csv"});
  return a;
}

const char* kNoApisTox = "ApisTox not found (set BEETOX_APISTOX_DIR)";

// Copy of the dataset tagged for one split; the published split file when present, otherwise regenerated.
Dataset with_split(const ApisTox& a, const std::string& split, std::string& note) {
  Dataset d = a.data;
  for (auto& r : d.records) {
    r.split.reset();
  }
  const auto& file = split == "maxmin" ? a.maxmin_test : a.time_test;
  if (file) {
    apply_split_file(d, *file, "test", a.columns);
    tag_remaining(d, "train");
    note += split + " split from " + fs::path(*file).filename().string() + "; ";
  } else if (split == "maxmin") {
    const auto fps = compute_fingerprints(d.molecules(), parse_fingerprint_spec("ecfp:fp_size=2048,radius=2"));
    for (int i : maxmin_split(tanimoto_distances(fps), 0.2).test) {
      d.records[i].split = "test";
    }
    tag_remaining(d, "train");
    note += "maxmin split regenerated; ";
  } else {
    time_split(d, 0.2);
    note += "time split regenerated from years; ";
  }
  d.refresh_hash();
  return d;
}

struct RunOutcome {
  MetricSummary summary;
  double        seconds;
};

RunOutcome run(const Dataset& d, const std::string& method, const std::string& split, Candidate fixed = {}) {
  ExperimentConfig c;
  c.dataset    = d.path;
  c.method     = method;
  c.name       = method;
  c.split_name = split;
  c.fixed      = std::move(fixed);
  c.paper_grid = true;
  c.seeds      = 50;
  const auto t = std::chrono::steady_clock::now();
  const auto r = run_experiment(c, d);
  return {r.summary, seconds_since(t)};
}

// ---- criteria -----------------------------------------------------------------------------------------------------

Outcome dataset_fidelity() {
  if (!apistox_csv()) {
    return skip(kNoApisTox);
  }
  const auto t  = std::chrono::steady_clock::now();
  const auto a  = load_apistox(true);
  const double s = seconds_since(t);
  const auto& d  = a->data;
  return check(d.size() == kApisToxRecords && d.positives() == kApisToxPositives && d.failures.empty() &&
                   s < kIngestSeconds,
               std::to_string(d.size()) + " records, " + std::to_string(d.positives()) + " toxic, " +
                   std::to_string(d.size() - d.positives()) + " non-toxic, " + std::to_string(d.failures.size()) +
                   " parse failures, " + fmt(s, 2) + " s");
}

Outcome filter_band() {
  if (!apistox_csv()) {
    return skip(kNoApisTox);
  }
  const auto a = load_apistox(false);
  const std::vector<std::pair<std::string, double>> expected{
      {"lipinski", 94.4}, {"ghose", 60.9}, {"hao", 70.9}, {"tice_insecticides", 62.3}, {"brenk", 41.0}};
  std::vector<FilterRuleSet> rules;
  for (const auto& [file, _] : expected) {
    rules.push_back(load_filter_rules(std::string(BEETOX_DATA_DIR) + "/filters/" + file + ".json"));
  }
  const auto            t    = std::chrono::steady_clock::now();
  const auto            mols = a->data.molecules();
  const NamedMolecules  named[] = {{"ApisTox", mols}};
  const PassRateTable   table   = filter_pass_rates(named, rules);
  const double          s       = seconds_since(t);
  bool                  ok      = s < kFilterSeconds;
  std::string           detail;
  for (std::size_t f = 0; f < expected.size(); ++f) {
    const double v = table.values[f][0];
    ok             = ok && std::abs(v - expected[f].second) <= kFilterBand;
    detail += table.filters[f] + " " + fmt(v, 1) + " (" + fmt(expected[f].second, 1) + "), ";
  }
  return check(ok, detail + fmt(s, 1) + " s");
}

Outcome profile() {
  if (!apistox_csv()) {
    return skip(kNoApisTox);
  }
  const auto        a       = load_apistox(false);
  const std::string control = env("BEETOX_CONTROL_CSV").empty()
                                  ? std::string(BEETOX_DATA_DIR) + "/samples/druglike_control.csv"
                                  : env("BEETOX_CONTROL_CSV");
  IngestOptions o;
  o.require_labels         = false;
  const Dataset    ctrl    = ingest(control, o);
  const PatternSet none;
  const auto       p       = dataset_profile(a->data.molecules(), none);
  const auto       q       = dataset_profile(ctrl.molecules(), none);
  return check(p.fragmented_share >= kFragmentedLo && p.fragmented_share <= kFragmentedHi &&
                   p.nonmedical_share > q.nonmedical_share,
               "fragmented " + fmt(p.fragmented_share, 2) + "%, non-medical " + fmt(p.nonmedical_share, 2) +
                   "% vs control " + ctrl.name + " " + fmt(q.nonmedical_share, 2) + "%");
}

Outcome model_bands() {
  if (!apistox_csv()) {
    return skip(kNoApisTox);
  }
  const auto  a = load_apistox(false);
  std::string note;
  const Dataset maxmin = with_split(*a, "maxmin", note);
  const Dataset time   = with_split(*a, "time", note);
  const auto    ecfp   = run(time, "ecfp", "time");
  const auto    wloa   = run(maxmin, "wl_oa", "maxmin");
  const auto    ac_mm  = run(maxmin, "atom_counts", "maxmin");
  const auto    ac_t   = run(time, "atom_counts", "time");
  const double  slowest = std::max({ecfp.seconds, wloa.seconds, ac_mm.seconds, ac_t.seconds});
  const bool    ok = ecfp.summary.mean.mcc >= kMinMcc && ecfp.summary.mean.auroc >= kMinAurocTime &&
                  wloa.summary.mean.mcc >= kMinMcc && wloa.summary.mean.auroc >= kMinAurocMaxmin &&
                  std::abs(ac_mm.summary.mean.mcc - kAtomCountsMaxmin) <= kAtomCountsBand &&
                  std::abs(ac_t.summary.mean.mcc - kAtomCountsTime) <= kAtomCountsBand && slowest <= kRunSeconds;
  return check(ok, note + "ECFP/time MCC " + fmt(ecfp.summary.mean.mcc, 3) + " AUROC " +
                       fmt(ecfp.summary.mean.auroc, 3) + "; WL-OA/maxmin MCC " + fmt(wloa.summary.mean.mcc, 3) +
                       " AUROC " + fmt(wloa.summary.mean.auroc, 3) + "; atom counts MCC maxmin " +
                       fmt(ac_mm.summary.mean.mcc, 3) + " time " + fmt(ac_t.summary.mean.mcc, 3) +
                       "; slowest run " + fmt(slowest, 0) + " s");
}

Outcome ordering() {
  if (!apistox_csv()) {
    return skip(kNoApisTox);
  }
  const auto  a = load_apistox(false);
  std::string note;
  const std::string maccs = std::string(BEETOX_DATA_DIR) + "/patterns/maccs.tsv";
  bool        ok = true;
  std::string detail;
  for (const std::string split : {"maxmin", "time"}) {
    const Dataset d    = with_split(*a, split, note);
    const double  wloa = run(d, "wl_oa", split).summary.mean.mcc;
    const double  sp   = run(d, "shortest_path", split).summary.mean.mcc;
    const double  ltp  = run(d, "ltp", split).summary.mean.mcc;
    // The best of a subset of fingerprints bounds the best in-scope fingerprint from below.
    const double fp = std::max(run(d, "ecfp", split).summary.mean.mcc,
                               run(d, "substructure", split, {{"patterns", maccs}}).summary.mean.mcc);
    ok = ok && wloa > sp && fp > ltp;
    detail += split + ": WL-OA " + fmt(wloa, 3) + " vs SP " + fmt(sp, 3) + ", best FP " + fmt(fp, 3) + " vs LTP " +
              fmt(ltp, 3) + "; ";
  }
  return check(ok, note + detail);
}

// Definitional metric implementations, deliberately naive.
struct Oracle {
  static double mcc(const std::vector<int>& y, const std::vector<int>& p) {
    // Pearson correlation of the two 0/1 vectors; 0 when either is constant.
    const double n  = static_cast<double>(y.size());
    double       my = 0, mp = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      my += y[i];
      mp += p[i];
    }
    my /= n;
    mp /= n;
    double cov = 0, vy = 0, vp = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      cov += (y[i] - my) * (p[i] - mp);
      vy += (y[i] - my) * (y[i] - my);
      vp += (p[i] - mp) * (p[i] - mp);
    }
    return vy == 0 || vp == 0 ? 0.0 : cov / std::sqrt(vy * vp);
  }
  static double auroc(const std::vector<int>& y, const std::vector<double>& s) {
    double wins = 0, pairs = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      for (std::size_t j = 0; j < y.size(); ++j) {
        if (y[i] == 1 && y[j] == 0) {
          pairs += 1;
          wins += s[i] > s[j] ? 1.0 : s[i] == s[j] ? 0.5 : 0.0;
        }
      }
    }
    return wins / pairs;
  }
  static double ratio(const std::vector<int>& y, const std::vector<int>& p, bool over_predicted) {
    double hit = 0, total = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if ((over_predicted ? p[i] : y[i]) == 1) {
        total += 1;
        hit += y[i] == 1 && p[i] == 1;
      }
    }
    return total == 0 ? 0.0 : hit / total;
  }
};

Outcome metric_oracle() {
  std::mt19937_64 rng(6);
  double          worst = 0;
  for (int k = 0; k < kMetricInstances; ++k) {
    const int        n = std::uniform_int_distribution<int>(2, 60)(rng);
    std::vector<int> y(n);
    do {
      for (int& v : y) {
        v = static_cast<int>(rng() % 2);
      }
    } while (std::count(y.begin(), y.end(), 1) % n == 0);
    std::vector<double> s(n);
    const int           levels = std::uniform_int_distribution<int>(2, 8)(rng);
    for (double& v : s) {
      v = k % 2 ? static_cast<double>(rng() % levels) / levels : std::uniform_real_distribution<double>()(rng);
    }
    const double     threshold = std::uniform_real_distribution<double>()(rng);
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) {
      p[i] = s[i] > threshold;
    }
    const Metrics m = evaluate(y, s, threshold);
    worst           = std::max({worst, std::abs(m.mcc - Oracle::mcc(y, p)), std::abs(m.auroc - Oracle::auroc(y, s)),
                                std::abs(m.precision - Oracle::ratio(y, p, true)),
                                std::abs(m.recall - Oracle::ratio(y, p, false))});
  }
  return check(worst <= kMetricTolerance,
               std::to_string(kMetricInstances) + " instances, max deviation " + sci(worst));
}

std::vector<Molecule> kernel_molecules(std::string& source) {
  std::vector<Molecule> pool;
  if (apistox_csv()) {
    pool   = load_apistox(false)->data.molecules();
    source = "ApisTox";
  } else {
    // Substitute: bundled pesticide sample plus reference-corpus molecules.
    IngestOptions o;
    o.require_labels = false;
    pool             = ingest(std::string(BEETOX_DATA_DIR) + "/samples/pesticides_sample.csv", o).molecules();
    const CsvTable corpus = read_csv_file(std::string(BEETOX_TEST_DATA_DIR) + "/reference_corpus.csv");
    const auto     col    = *corpus.column("smiles");
    for (std::size_t i = 0; pool.size() < static_cast<std::size_t>(kKernelMolecules) && i < corpus.rows.size(); ++i) {
      pool.push_back(parse_smiles(corpus.rows[i][col]));
    }
    source = "substitute (ApisTox absent): bundled pesticide sample + reference corpus";
  }
  std::mt19937 rng(7);
  std::shuffle(pool.begin(), pool.end(), rng);
  pool.resize(std::min<std::size_t>(pool.size(), kKernelMolecules));
  return pool;
}

Outcome kernel_properties() {
  std::string source;
  const auto  mols = kernel_molecules(source);
  std::mt19937 rng(11);
  std::vector<Molecule> shuffled;
  for (const auto& m : mols) {
    std::vector<int> order(m.atom_count());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    shuffled.push_back(m.permuted(order));
  }
  bool        ok = true;
  std::string failures;
  int         matrices = 0;
  for (KernelKind kind : {KernelKind::kVertexHist, KernelKind::kEdgeHist, KernelKind::kShortestPath,
                          KernelKind::kPropagation, KernelKind::kWl, KernelKind::kWlOa}) {
    for (bool normalize : {false, true}) {
      // Normalization needs a nonzero self-kernel, which path-based kernels lack for single atoms.
      if (normalize && (kind == KernelKind::kShortestPath || kind == KernelKind::kEdgeHist)) {
        continue;
      }
      KernelSpec spec;
      spec.kind      = kind;
      spec.normalize = normalize;
      const auto k   = gram(mols, spec).values;
      const auto kp  = gram(shuffled, spec).values;
      const auto c   = check_gram(k);
      ++matrices;
      bool this_ok = c.max_asymmetry <= kSymmetryTol * std::max(1.0, k.cwiseAbs().maxCoeff()) &&
                     c.min_eigenvalue >= c.psd_tolerance &&
                     (k - kp).cwiseAbs().maxCoeff() <= kPermutationTol * std::max(1.0, k.cwiseAbs().maxCoeff());
      if (normalize) {
        this_ok = this_ok && (k.diagonal().array() - 1.0).abs().maxCoeff() <= kDiagonalTol;
      }
      if (!this_ok) {
        failures += spec.to_string() + "; ";
      }
      ok = ok && this_ok;
    }
  }
  KernelSpec wl0;
  wl0.kind   = KernelKind::kWl;
  wl0.n_iter = 0;
  KernelSpec vh;
  vh.kind          = KernelKind::kVertexHist;
  const bool same  = (gram(mols, wl0).values - gram(mols, vh).values).cwiseAbs().maxCoeff() == 0.0;
  ok               = ok && same;
  return check(ok, std::to_string(matrices) + " Gram matrices over " + std::to_string(mols.size()) +
                       " molecules from " + source + "; WL(0) == vertex histogram: " + (same ? "yes" : "no") +
                       (failures.empty() ? "" : "; failing: " + failures));
}

// Maximum set of points with pairwise distance >= t, by include/exclude branching.
int oracle_circles(const Eigen::MatrixXd& d, double t, std::vector<int> candidates) {
  if (candidates.empty()) {
    return 0;
  }
  const int        v = candidates.back();
  candidates.pop_back();
  std::vector<int> compatible;
  for (int u : candidates) {
    if (d(u, v) >= t) {
      compatible.push_back(u);
    }
  }
  return std::max(oracle_circles(d, t, candidates), 1 + oracle_circles(d, t, compatible));
}

Outcome circles_oracle() {
  const auto      t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(8);
  int             violations = 0, mismatches = 0, identity_failures = 0;
  for (int k = 0; k < kCirclesInstances; ++k) {
    const int n = std::uniform_int_distribution<int>(1, kCirclesMaxSize)(rng);
    // Jaccard distances of random bit sets: a realistic metric with ties.
    std::vector<std::uint32_t> bits(n);
    for (auto& b : bits) {
      b = static_cast<std::uint32_t>(rng() & 0xFFFu) | 1u;
    }
    Eigen::MatrixXd d(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        d(i, j) = 1.0 - static_cast<double>(std::popcount(bits[i] & bits[j])) / std::popcount(bits[i] | bits[j]);
      }
    }
    const double t     = std::uniform_real_distribution<double>(0.0, 0.9)(rng);
    const int    seq   = n_circles(d, t, CirclesMode::kSequential);
    const int    exact = n_circles(d, t, CirclesMode::kExact);
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    violations += seq > exact;
    mismatches += exact != oracle_circles(d, t, all);
    identity_failures += n_circles(d, 0.0, CirclesMode::kSequential) != n ||
                         n_circles(d, 0.0, CirclesMode::kExact) != n;
  }
  const double s = seconds_since(t0);
  return check(violations == 0 && mismatches == 0 && identity_failures == 0 && s < kCirclesSeconds,
               std::to_string(kCirclesInstances) + " instances: sequential > exact " + std::to_string(violations) +
                   ", exact != oracle " + std::to_string(mismatches) + ", t=0 identity failures " +
                   std::to_string(identity_failures) + ", " + fmt(s, 2) + " s");
}

Outcome svm_and_forest() {
  std::mt19937_64 rng(9);
  double          worst_box = 0, worst_sum = 0;
  for (int k = 0; k < kSvmInstances; ++k) {
    const int       n = std::uniform_int_distribution<int>(6, 60)(rng);
    const int       dims = std::uniform_int_distribution<int>(1, 6)(rng);
    Eigen::MatrixXd x(n, dims);
    std::vector<int> y(n);
    std::normal_distribution<double> g;
    for (int i = 0; i < n; ++i) {
      y[i] = i < 3 ? 0 : i < 6 ? 1 : static_cast<int>(rng() % 2);
      for (int j = 0; j < dims; ++j) {
        x(i, j) = g(rng) + (y[i] ? 0.7 : 0.0);
      }
    }
    Eigen::MatrixXd gram = x * x.transpose();
    if (k % 2) {  // RBF
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          gram(i, j) = std::exp(-0.5 * (x.row(i) - x.row(j)).squaredNorm());
        }
      }
    }
    SvmSpec spec;
    spec.c             = std::pow(10.0, std::uniform_int_distribution<int>(-2, 2)(rng));
    spec.class_weights = balanced_weights(y);
    const SvmModel m   = svm_fit(gram, y, spec);
    double         sum = 0;
    for (int i = 0; i < n; ++i) {
      const double bound = spec.c * spec.class_weights(y[i]);
      worst_box          = std::max({worst_box, -m.alpha[i], m.alpha[i] - bound});
      sum += m.alpha[i] * (y[i] ? 1.0 : -1.0);
    }
    worst_sum = std::max(worst_sum, std::abs(sum) / (spec.c * n));
  }

  // Forest: identical seed gives identical predictions, for any worker count.
  FeatureMatrix    x;
  std::vector<int> y;
  x.cols = 8;
  for (int i = 0; i < 200; ++i) {
    x.ids.push_back(std::to_string(i));
    y.push_back(static_cast<int>(rng() % 3 == 0));
    for (std::size_t j = 0; j < x.cols; ++j) {
      x.values.push_back(static_cast<double>(rng() % 4) + (y.back() && j < 2 ? 1.0 : 0.0));
    }
  }
  ForestSpec fs;
  fs.seed = 1234;
  std::vector<std::vector<double>> predictions;
  for (const char* workers : {"1", "1", "3"}) {
    setenv("BEETOX_WORKERS", workers, 1);
    predictions.push_back(forest_fit(x, y, balanced_weights(y), fs).predict_proba(x));
  }
  unsetenv("BEETOX_WORKERS");
  const bool deterministic = predictions[0] == predictions[1] && predictions[0] == predictions[2];
  return check(worst_box <= kDualTol && worst_sum <= kDualTol && deterministic,
               std::to_string(kSvmInstances) + " SVM problems: max box violation " + sci(worst_box) +
                   ", max |sum alpha*y|/(C n) " + sci(worst_sum) + "; forest deterministic: " +
                   (deterministic ? "yes" : "no"));
}

Outcome round_trip() {
  if (!apistox_csv()) {
    return skip(kNoApisTox);
  }
  const auto a      = load_apistox(false);
  int        broken = 0;
  std::string first;
  for (const auto& r : a->data.records) {
    bool ok = false;
    try {
      ok = isomorphic(r.molecule, parse_smiles(write_smiles(r.molecule)));
    } catch (const std::exception&) {
    }
    if (!ok) {
      ++broken;
      if (first.empty()) {
        first = r.smiles;
      }
    }
  }
  return check(broken == 0 && a->data.failures.empty(),
               std::to_string(a->data.size()) + " molecules, " + std::to_string(broken) + " round-trip failures" +
                   (first.empty() ? "" : " (first: " + first + ")"));
}

const std::map<int, std::pair<const char*, std::function<Outcome()>>>& criteria() {
  static const std::map<int, std::pair<const char*, std::function<Outcome()>>> table{
      {1, {"dataset fidelity", dataset_fidelity}},
      {2, {"filter pass-rate band", filter_band}},
      {3, {"dataset profile", profile}},
      {4, {"model reproduction bands", model_bands}},
      {5, {"method ordering", ordering}},
      {6, {"metric oracle suite", metric_oracle}},
      {7, {"kernel property suite", kernel_properties}},
      {8, {"#circles oracle", circles_oracle}},
      {9, {"svm dual feasibility and forest determinism", svm_and_forest}},
      {10, {"smiles round trip", round_trip}},
  };
  return table;
}

int report(int n) {
  const auto& [title, fn] = criteria().at(n);
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = fail(std::string("exception: ") + e.what());
  }
  const char* tag = o.status == Outcome::kPass ? "[PASS]" : o.status == Outcome::kFail ? "[FAIL]" : "[SKIP]";
  std::cout << tag << " " << n << " " << title << ": " << o.detail << std::endl;
  return o.status == Outcome::kPass ? 0 : o.status == Outcome::kFail ? 1 : 77;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: beetox_acceptance <criterion 1-10 | all>\n";
    return 1;
  }
  const std::string arg = argv[1];
  if (arg == "all") {
    bool failed = false;
    for (const auto& [n, _] : criteria()) {
      failed = report(n) == 1 || failed;
    }
    return failed ? 1 : 0;
  }
  const int n = std::atoi(arg.c_str());
  if (!criteria().count(n)) {
    std::cerr << "unknown criterion " << arg << "\n";
    return 1;
  }
  return report(n);
}
