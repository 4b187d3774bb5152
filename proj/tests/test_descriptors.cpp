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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <regex>
#include <string>

#include "beetox/descriptors.hpp"
#include "beetox/smiles.hpp"
#include "test_support.hpp"

using namespace beetox;

namespace {

constexpr double kWeightTolerance = 0.01;
constexpr double kCrippenTolerance = 1e-3;

DescriptorBlock describe(const char* smiles) {
  return compute_descriptors(parse_smiles(smiles));
}

FilterRuleSet lipinski() {
  return load_filter_rules(beetox::testing::data_path("filters/lipinski.json"));
}

}  // namespace

TEST(Descriptors, Water) {
  const DescriptorBlock d = describe("O");
  EXPECT_NEAR(d.molecular_weight, 18.02, kWeightTolerance);
  EXPECT_EQ(d.hbd, 1);
  EXPECT_EQ(d.hba, 1);
  EXPECT_EQ(d.heavy_atoms, 1);
  EXPECT_EQ(d.total_atoms, 3);
}

TEST(Descriptors, Ethanol) {
  const DescriptorBlock d = describe("CCO");
  EXPECT_EQ(d.hbd, 1);
  EXPECT_EQ(d.hba, 1);
  EXPECT_EQ(d.rotatable_bonds, 0);
}

TEST(Descriptors, BenzeneLogP) {
  EXPECT_NEAR(describe("c1ccccc1").logp, 1.69, 0.35);
}

// Reference values from an independent Wildman-Crippen implementation.
TEST(Descriptors, CrippenReferenceValues) {
  struct Case {
    const char* smiles;
    double      logp;
    double      mr;
  };
  const Case cases[] = {
    {"O", -0.8247, 3.6138},           {"CCO", -0.0014, 12.7598},       {"c1ccccc1", 1.6866, 26.442},
    {"CC(=O)Nc1ccc(O)cc1", 1.3506, 42.4105}, {"c1ccncc1", 1.0816, 24.237}, {"O=[N+]([O-])c1ccccc1", 1.5948, 33.0964},
    {"CC(=O)[O-].[Na+]", -4.2398, 10.681},
  };
  for (const Case& c : cases) {
    SCOPED_TRACE(c.smiles);
    const DescriptorBlock d = describe(c.smiles);
    EXPECT_NEAR(d.logp, c.logp, kCrippenTolerance);
    EXPECT_NEAR(d.molar_refractivity, c.mr, kCrippenTolerance);
  }
}

TEST(Descriptors, RotatableBonds) {
  EXPECT_EQ(describe("CCCC").rotatable_bonds, 1);
  EXPECT_EQ(describe("CC(=O)NC").rotatable_bonds, 0);
  EXPECT_EQ(describe("c1ccccc1-c1ccccc1").rotatable_bonds, 1);
  EXPECT_EQ(describe("C1CCCCC1").rotatable_bonds, 0);
  EXPECT_EQ(describe("CC=CC").rotatable_bonds, 0);
}

TEST(Descriptors, StrictRotatableBonds) {
  const std::pair<const char*, int> cases[] = {
    {"CCCC", 1},       {"CC(=O)OCC", 1},         {"CCC(F)(F)F", 0}, {"CCC(C)(C)C", 0},
    {"CC#CCC", 0},     {"CCC(=O)NCC", 2},         {"c1ccccc1-c1ccccc1", 1}, {"CCN=C(N)CC", 2},
  };
  for (const auto& [smiles, expected] : cases) {
    EXPECT_EQ(describe(smiles).rotatable_bonds_strict, expected) << smiles;
  }
}

TEST(Descriptors, StrictDonorsAcceptors) {
  const DescriptorBlock p = describe("CC(=O)Nc1ccc(O)cc1");
  EXPECT_EQ(p.hbd_strict, 2);
  EXPECT_EQ(p.hba_strict, 2);
  EXPECT_EQ(p.hbd, 2);
  EXPECT_EQ(p.hba, 3);
  const DescriptorBlock w = describe("O");
  EXPECT_EQ(w.hbd_strict, 0);
  EXPECT_EQ(w.hba_strict, 0);
}

TEST(Descriptors, ReferenceCorpus) {
  const CsvTable t = beetox::testing::reference_corpus();
  const auto     col = [&](const char* name) { return *t.column(name); };
  const std::regex isotope(R"(\[[0-9])");
  int checked = 0;
  for (const auto& row : t.rows) {
    SCOPED_TRACE(row[0]);
    const Molecule        m = parse_smiles(row[0]);
    const DescriptorBlock d = compute_descriptors(m);
    if (!std::regex_search(row[0], isotope)) {
      EXPECT_NEAR(d.molecular_weight, std::stod(row[col("mw")]), kWeightTolerance);
    }
    EXPECT_NEAR(d.logp, std::stod(row[col("logp")]), kCrippenTolerance);
    EXPECT_NEAR(d.molar_refractivity, std::stod(row[col("mr")]), kCrippenTolerance);
    EXPECT_EQ(d.hbd, std::stoi(row[col("hbd_spec")]));
    EXPECT_EQ(d.hba, std::stoi(row[col("hba_spec")]));
    EXPECT_EQ(d.rotatable_bonds, std::stoi(row[col("rotatable_spec")]));
    EXPECT_EQ(d.hbd_strict, std::stoi(row[col("hbd_strict")]));
    EXPECT_EQ(d.hba_strict, std::stoi(row[col("hba_strict")]));
    EXPECT_EQ(d.aromatic_bonds, std::stoi(row[col("aromatic_bonds")]));
    EXPECT_EQ(d.total_atoms, std::stoi(row[col("total_atoms")]));
    EXPECT_EQ(d.rotatable_bonds_strict, std::stoi(row[col("rotatable_strict")]));
    ++checked;
  }
  EXPECT_GT(checked, 1000);
}

TEST(Descriptors, InvariantUnderReorderingAndRewriting) {
  std::mt19937 rng(13);
  for (const std::string& s : beetox::testing::sample_smiles()) {
    SCOPED_TRACE(s);
    const Molecule   m = parse_smiles(s);
    std::vector<int> order(m.atom_count());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const DescriptorBlock a = compute_descriptors(m);
    const DescriptorBlock b = compute_descriptors(parse_smiles(write_smiles(m.permuted(order))));
    for (std::string_view name : descriptor_names()) {
      EXPECT_NEAR(*descriptor_value(a, name), *descriptor_value(b, name), 1e-9) << name;
    }
    int no = 0;
    for (const Atom& atom : m.atoms()) {
      no += atom.atomic_number == 7 || atom.atomic_number == 8 ? 1 : 0;
    }
    EXPECT_LE(a.hbd, no);
    EXPECT_GE(a.molecular_weight, 0.0);
  }
}

TEST(Filters, LipinskiExamples) {
  const FilterRuleSet rules = lipinski();
  const FilterResult  methane = apply_filter(parse_smiles("C"), rules);
  EXPECT_TRUE(methane.pass);
  EXPECT_TRUE(methane.violations.empty());

  const Molecule heavy = parse_smiles(std::string(43, 'C'));
  ASSERT_GT(compute_descriptors(heavy).molecular_weight, 600.0);
  const FilterResult r = apply_filter(heavy, rules);
  EXPECT_FALSE(r.pass);
  ASSERT_FALSE(r.violations.empty());
  EXPECT_EQ(r.violations.front(), "molecular_weight");
}

TEST(Filters, MaxViolations) {
  FilterRuleSet rules = lipinski();
  const Molecule m    = parse_smiles(std::string(43, 'C'));  // MW and logP both out of range
  EXPECT_EQ(apply_filter(m, rules).violations.size(), 2u);
  rules.max_violations = 1;
  EXPECT_FALSE(apply_filter(m, rules).pass);
  rules.max_violations = 2;
  EXPECT_TRUE(apply_filter(m, rules).pass);
}

TEST(Filters, RemovingARuleNeverTurnsPassIntoFail) {
  std::vector<FilterRuleSet> sets;
  for (const char* f : {"lipinski", "ghose", "hao", "tice_insecticides"}) {
    sets.push_back(load_filter_rules(beetox::testing::data_path(std::string("filters/") + f + ".json")));
  }
  for (const std::string& s : beetox::testing::sample_smiles()) {
    const Molecule m = parse_smiles(s);
    for (const FilterRuleSet& full : sets) {
      const bool pass = apply_filter(m, full).pass;
      for (std::size_t drop = 0; drop < full.ranges.size(); ++drop) {
        FilterRuleSet reduced = full;
        reduced.ranges.erase(reduced.ranges.begin() + static_cast<long>(drop));
        if (pass) {
          EXPECT_TRUE(apply_filter(m, reduced).pass) << full.name << " " << s;
        }
      }
    }
  }
}

TEST(Filters, ConfigurationErrors) {
  FilterRuleSet bad;
  bad.name   = "bad";
  bad.ranges = {{"not_a_descriptor", 0, 1}};
  EXPECT_THROW(apply_filter(parse_smiles("C"), bad), ConfigError);
  bad.ranges = {{"logp", 2, 1}};
  EXPECT_THROW(validate_rules(bad), ConfigError);
  EXPECT_THROW(load_filter_rules("/nonexistent.json"), ConfigError);
}

TEST(Filters, BrenkAlerts) {
  const FilterRuleSet brenk = load_filter_rules(beetox::testing::data_path("filters/brenk.json"));
  EXPECT_EQ(brenk.alerts.size(), 100u);
  EXPECT_TRUE(apply_filter(parse_smiles("CCO"), brenk).pass);
  const FilterResult r = apply_filter(parse_smiles("CC(=O)Cl"), brenk);
  EXPECT_FALSE(r.pass);
  EXPECT_NE(std::find(r.violations.begin(), r.violations.end(), "alert:acid_halide"), r.violations.end());
}

TEST(Filters, PassRates) {
  std::vector<Molecule> mols;
  for (const char* s : {"C", "CCO", "c1ccccc1"}) {
    mols.push_back(parse_smiles(s));
  }
  mols.push_back(parse_smiles(std::string(43, 'C')));
  const std::vector<NamedMolecules> datasets{{"toy", mols}};
  const std::vector<FilterRuleSet>  rules{lipinski(), FilterRuleSet{"empty", {}, {}, 0}};
  const PassRateTable               t = filter_pass_rates(datasets, rules);
  ASSERT_EQ(t.values.size(), 2u);
  EXPECT_DOUBLE_EQ(t.values[0][0], 75.0);
  EXPECT_DOUBLE_EQ(t.values[1][0], 100.0);
}
