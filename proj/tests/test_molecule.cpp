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

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "beetox/smiles.hpp"
#include "test_support.hpp"

using namespace beetox;
using beetox::testing::sample_smiles;

namespace {

// Union-find component count, independent of the Molecule's own traversal.
int components(const Molecule& m) {
  std::vector<int> parent(m.atom_count());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const Bond& b : m.bonds()) {
    parent[find(b.begin)] = find(b.end);
  }
  int c = 0;
  for (int i = 0; i < m.atom_count(); ++i) {
    c += find(i) == i ? 1 : 0;
  }
  return c;
}

int total_implicit_h(const Molecule& m) {
  int h = 0;
  for (const Atom& a : m.atoms()) {
    h += a.implicit_h;
  }
  return h;
}

SmilesErrorKind error_kind(const std::string& smiles) {
  try {
    parse_smiles(smiles);
  } catch (const SmilesError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error for " << smiles;
  return SmilesErrorKind::kSyntax;
}

}  // namespace

TEST(SmilesParse, Methane) {
  const Molecule m = parse_smiles("C");
  ASSERT_EQ(m.atom_count(), 1);
  EXPECT_EQ(m.bond_count(), 0);
  EXPECT_EQ(m.atom(0).atomic_number, 6);
  EXPECT_EQ(m.atom(0).implicit_h, 4);
  EXPECT_EQ(m.fragment_count(), 1);
}

TEST(SmilesParse, Benzene) {
  const Molecule m = parse_smiles("c1ccccc1");
  ASSERT_EQ(m.atom_count(), 6);
  ASSERT_EQ(m.bond_count(), 6);
  EXPECT_EQ(m.rings().size(), 1u);
  for (const Atom& a : m.atoms()) {
    EXPECT_TRUE(a.aromatic);
    EXPECT_EQ(a.implicit_h, 1);
  }
  int doubles = 0;
  for (const Bond& b : m.bonds()) {
    EXPECT_EQ(b.order, BondOrder::kAromatic);
    doubles += b.kekule_order == 2 ? 1 : 0;
  }
  EXPECT_EQ(doubles, 3);
}

TEST(SmilesParse, SodiumAcetate) {
  const Molecule m = parse_smiles("CC(=O)[O-].[Na+]");
  EXPECT_EQ(m.fragment_count(), 2);
  int neg = 0, pos = 0;
  for (const Atom& a : m.atoms()) {
    neg += a.formal_charge == -1 ? 1 : 0;
    pos += a.formal_charge == 1 ? 1 : 0;
  }
  EXPECT_EQ(neg, 1);
  EXPECT_EQ(pos, 1);
}

TEST(SmilesParse, ImplicitHydrogens) {
  struct Case {
    const char*      smiles;
    std::vector<int> h;
  };
  const Case cases[] = {
    {"CCO", {3, 2, 1}},
    {"C=O", {2, 0}},
    {"C#N", {1, 0}},
    {"c1ccncc1", {1, 1, 1, 0, 1, 1}},
    {"c1cc[nH]c1", {1, 1, 1, 1, 1}},
    {"OS(=O)(=O)O", {1, 0, 0, 0, 1}},
    {"CP(C)(C)=O", {3, 0, 3, 3, 0}},
    {"[NH4+]", {4}},
    {"ClCBr", {0, 2, 0}},
    {"O=c1cc[nH]cc1", {0, 0, 1, 1, 1, 1, 1}},
  };
  for (const Case& c : cases) {
    SCOPED_TRACE(c.smiles);
    const Molecule m = parse_smiles(c.smiles);
    ASSERT_EQ(m.atom_count(), static_cast<int>(c.h.size()));
    for (int i = 0; i < m.atom_count(); ++i) {
      EXPECT_EQ(m.atom(i).hydrogen_count(), c.h[i]) << "atom " << i;
    }
  }
}

TEST(SmilesParse, BracketAtoms) {
  const Molecule m = parse_smiles("[13CH3][C@@H](N)C(=O)[O-]");
  EXPECT_EQ(m.atom(0).isotope.value_or(0), 13);
  EXPECT_EQ(m.atom(0).explicit_h, 3);
  EXPECT_EQ(m.atom(1).explicit_h, 1);
  EXPECT_EQ(m.atom(5).formal_charge, -1);

  EXPECT_EQ(parse_smiles("[Fe+++]").atom(0).formal_charge, 3);
  EXPECT_EQ(parse_smiles("[Cu+2]").atom(0).formal_charge, 2);
  EXPECT_EQ(parse_smiles("[se]1cccc1").atom(0).atomic_number, 34);
  EXPECT_EQ(parse_smiles("[CH3:7]C").atom(0).explicit_h, 3);
}

TEST(SmilesParse, StereoIsDiscarded) {
  const Molecule a = parse_smiles("F/C=C/F");
  const Molecule b = parse_smiles("FC=CF");
  EXPECT_TRUE(isomorphic(a, b));
  EXPECT_TRUE(isomorphic(parse_smiles("N[C@@H](C)C(=O)O"), parse_smiles("NC(C)C(=O)O")));
}

TEST(SmilesParse, RingLabels) {
  const Molecule m = parse_smiles("C%10CC%10");
  EXPECT_EQ(m.bond_count(), 3);
  EXPECT_EQ(parse_smiles("C%(123)CC%(123)").bond_count(), 3);
  // Label reuse after closing.
  const Molecule two = parse_smiles("C1CC1C1CC1");
  EXPECT_EQ(two.rings().size(), 2u);
  // Bond symbol on either end of a ring closure.
  EXPECT_EQ(parse_smiles("C=1CCCCC1").bond(5).order, BondOrder::kDouble);
  EXPECT_EQ(parse_smiles("C1CCCCC=1").bond(5).order, BondOrder::kDouble);
}

TEST(SmilesParse, OtherBondsWarn) {
  const ParsedSmiles p = parse_smiles_with_warnings("N->[Cu]");
  ASSERT_EQ(p.warnings.size(), 1u);
  EXPECT_EQ(p.warnings[0].offset, 1u);
  ASSERT_EQ(p.molecule.bond_count(), 1);
  EXPECT_EQ(p.molecule.bond(0).order, BondOrder::kSingle);
  EXPECT_EQ(p.molecule.bond(0).other, OtherBond::kDative);
  // Dative bonds are valence-neutral: the nitrogen keeps three hydrogens.
  EXPECT_EQ(p.molecule.atom(0).implicit_h, 3);
  EXPECT_EQ(parse_smiles("[Cu]<-N").bond(0).begin, 1);
}

TEST(SmilesParse, BiarylBondIsSingle) {
  const Molecule m = parse_smiles("c1ccccc1c1ccccc1");
  const auto     b = m.find_bond(5, 6);
  ASSERT_TRUE(b.has_value());
  EXPECT_EQ(m.bond(*b).order, BondOrder::kSingle);
  EXPECT_FALSE(m.bond(*b).in_ring);
}

TEST(SmilesParse, TrailingTitleIgnored) {
  EXPECT_EQ(parse_smiles("CCO ethanol").atom_count(), 3);
}

TEST(SmilesErrors, UnclosedRing) {
  try {
    parse_smiles("C1CC");
    FAIL();
  } catch (const SmilesError& e) {
    EXPECT_EQ(e.kind(), SmilesErrorKind::kUnclosedRing);
    EXPECT_EQ(e.offset(), 1u);
  }
}

TEST(SmilesErrors, Kinds) {
  EXPECT_EQ(error_kind(""), SmilesErrorKind::kSyntax);
  EXPECT_EQ(error_kind("C(C"), SmilesErrorKind::kSyntax);
  EXPECT_EQ(error_kind("CC)"), SmilesErrorKind::kSyntax);
  EXPECT_EQ(error_kind("C=C=="), SmilesErrorKind::kSyntax);
  EXPECT_EQ(error_kind("C[Xx]"), SmilesErrorKind::kSyntax);
  EXPECT_EQ(error_kind("Na"), SmilesErrorKind::kSyntax);
  EXPECT_EQ(error_kind("C11"), SmilesErrorKind::kSyntax);
  EXPECT_EQ(error_kind("C12CC12"), SmilesErrorKind::kSyntax);
  EXPECT_EQ(error_kind("C=1CC#1"), SmilesErrorKind::kSyntax);
  EXPECT_EQ(error_kind("C(=C)(=C)(=C)=C"), SmilesErrorKind::kValence);
  EXPECT_EQ(error_kind("[CH5]"), SmilesErrorKind::kValence);
  EXPECT_EQ(error_kind("O=O=O"), SmilesErrorKind::kValence);
  EXPECT_EQ(error_kind("c1cccc1"), SmilesErrorKind::kAromaticity);
  EXPECT_EQ(error_kind("cC"), SmilesErrorKind::kAromaticity);
  EXPECT_EQ(error_kind("C*C"), SmilesErrorKind::kUnsupported);
  EXPECT_EQ(error_kind("[*]"), SmilesErrorKind::kUnsupported);
}

TEST(SmilesErrors, SyntaxOffset) {
  try {
    parse_smiles("CC(C)C?C");
    FAIL();
  } catch (const SmilesError& e) {
    EXPECT_EQ(e.offset(), 6u);
  }
}

TEST(Rings, Membership) {
  {
    const RingMembership r = ring_membership(parse_smiles("c1ccccc1"));
    EXPECT_EQ(std::count(r.atoms.begin(), r.atoms.end(), true), 6);
    EXPECT_EQ(std::count(r.bonds.begin(), r.bonds.end(), true), 6);
  }
  {
    const RingMembership r = ring_membership(parse_smiles("CCO"));
    EXPECT_EQ(std::count(r.atoms.begin(), r.atoms.end(), true), 0);
    EXPECT_EQ(std::count(r.bonds.begin(), r.bonds.end(), true), 0);
  }
  {
    const RingMembership r = ring_membership(parse_smiles("C1CC1C"));
    EXPECT_EQ(std::count(r.atoms.begin(), r.atoms.end(), true), 3);
    EXPECT_FALSE(r.atoms[3]);
  }
}

TEST(Rings, SmallestSetOfSmallestRings) {
  struct Case {
    const char*      smiles;
    std::vector<int> sizes;
  };
  const Case cases[] = {
    {"c1ccc2ccccc2c1", {6, 6}},
    {"C12C3C4C1C5C2C3C45", {4, 4, 4, 4, 4}},
    {"C1C2CC3CC1CC(C2)C3", {6, 6, 6}},
    {"C1CC2CCC1C2", {5, 5}},
    {"C1CCC2(CC1)CCCC2", {5, 6}},
    {"C1CC1.C1CCC1", {3, 4}},
  };
  for (const Case& c : cases) {
    SCOPED_TRACE(c.smiles);
    const Molecule   m = parse_smiles(c.smiles);
    std::vector<int> sizes;
    for (const auto& r : m.rings()) {
      sizes.push_back(static_cast<int>(r.size()));
    }
    std::sort(sizes.begin(), sizes.end());
    EXPECT_EQ(sizes, c.sizes);
  }
  const Molecule naph = parse_smiles("c1ccc2ccccc2c1");
  EXPECT_EQ(naph.ring_count(3), 2);
  EXPECT_EQ(naph.ring_count(0), 1);
  EXPECT_EQ(naph.smallest_ring(0), 6);
}

TEST(Kekule, FusedAndHetero) {
  for (const char* s : {"c1ccc2ccccc2c1", "c1ccc2[nH]ccc2c1", "c1ccc2c(c1)ccc1ccccc12", "c1cc2cccc3ccc4cccc1c4c32",
                        "O=c1[nH]c(=O)c2[nH]cnc2[nH]1", "c1ccc2ncccc2c1", "Cn1cnc2c1c(=O)n(C)c(=O)n2C",
                        "c1ccc[n+]([O-])c1", "c1cc2ccc3cccc4ccc(c1)c2c34"}) {
    SCOPED_TRACE(s);
    const Molecule m = parse_smiles(s);
    for (int i = 0; i < m.atom_count(); ++i) {
      if (m.atom(i).aromatic && m.atom(i).atomic_number == 6) {
        EXPECT_EQ(m.total_valence(i), 4);
      }
    }
  }
}

TEST(Molecule, PermutedIsIsomorphic) {
  std::mt19937 rng(7);
  for (const std::string& s : sample_smiles()) {
    SCOPED_TRACE(s);
    const Molecule   m = parse_smiles(s);
    std::vector<int> order(m.atom_count());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const Molecule p = m.permuted(order);
    EXPECT_TRUE(isomorphic(m, p));
    EXPECT_EQ(p.fragment_count(), m.fragment_count());
    EXPECT_EQ(p.rings().size(), m.rings().size());
  }
}

TEST(Molecule, NotIsomorphic) {
  EXPECT_FALSE(isomorphic(parse_smiles("CCO"), parse_smiles("COC")));
  EXPECT_FALSE(isomorphic(parse_smiles("C=CC"), parse_smiles("CCC")));
  EXPECT_FALSE(isomorphic(parse_smiles("c1ccccc1"), parse_smiles("C1CCCCC1")));
  EXPECT_FALSE(isomorphic(parse_smiles("[O-]C"), parse_smiles("OC")));
}

TEST(Molecule, ExplicitHydrogens) {
  const Molecule m = parse_smiles("CCO").with_explicit_hydrogens();
  EXPECT_EQ(m.atom_count(), 9);
  EXPECT_EQ(m.total_hydrogens(0), 3);
  EXPECT_EQ(m.heavy_degree(0), 1);
  EXPECT_EQ(m.total_valence(0), 4);
}

TEST(Molecule, FragmentCountMatchesUnionFind) {
  for (const std::string& s : sample_smiles()) {
    const Molecule m = parse_smiles(s);
    EXPECT_EQ(m.fragment_count(), components(m)) << s;
  }
}

TEST(SmilesWrite, RoundTripExamples) {
  for (const char* s : {"CCO", "c1ccccc1", "[Na+].[Cl-]", "C1CC1C", "N->[Cu]", "[2H]C([2H])([2H])O",
                        "O=[N+]([O-])c1ccccc1", "c1ccc(-c2ccccc2)cc1", "C1CC2CCC1C2", "[se]1cccc1", "C[S@](=O)CC",
                        "C#CC=C", "[Fe+3]", "C12C3C4C1C5C2C3C45", "CC1=CC(=O)C=CC1=O"}) {
    SCOPED_TRACE(s);
    const Molecule    m   = parse_smiles(s);
    const std::string out = write_smiles(m);
    SCOPED_TRACE(out);
    EXPECT_TRUE(isomorphic(m, parse_smiles(out)));
  }
  EXPECT_NE(write_smiles(parse_smiles("[Na+].[Cl-]")).find('.'), std::string::npos);
}

TEST(SmilesWrite, RoundTripSamplesAndPermutations) {
  std::mt19937 rng(11);
  for (const std::string& s : sample_smiles()) {
    SCOPED_TRACE(s);
    const Molecule m = parse_smiles(s);
    EXPECT_TRUE(isomorphic(m, parse_smiles(write_smiles(m))));
    std::vector<int> order(m.atom_count());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const Molecule    p       = m.permuted(order);
    const std::string rewrite = write_smiles(p);
    const Molecule    q       = parse_smiles(rewrite);
    EXPECT_TRUE(isomorphic(m, q)) << rewrite;
    EXPECT_EQ(total_implicit_h(q), total_implicit_h(m));
  }
}

TEST(SmilesWrite, ExplicitHydrogenGraph) {
  const Molecule m = parse_smiles("CC(=O)N").with_explicit_hydrogens();
  const Molecule r = parse_smiles(write_smiles(m));
  EXPECT_TRUE(isomorphic(m, r));
}

TEST(ReferenceCorpus, GraphMatchesOracle) {
  const CsvTable t = beetox::testing::reference_corpus();
  ASSERT_GT(t.rows.size(), 1000u);
  std::mt19937 rng(5);
  for (const auto& row : t.rows) {
    SCOPED_TRACE(row[0]);
    Molecule m;
    ASSERT_NO_THROW(m = parse_smiles(row[0]));
    EXPECT_EQ(m.atom_count(), std::stoi(row[1]));
    EXPECT_EQ(m.bond_count(), std::stoi(row[2]));
    int h = 0, ring_atoms = 0, aromatic = 0;
    for (int i = 0; i < m.atom_count(); ++i) {
      h += m.total_hydrogens(i);
      ring_atoms += m.atom(i).in_ring ? 1 : 0;
      aromatic += m.atom(i).aromatic ? 1 : 0;
    }
    EXPECT_EQ(h, std::stoi(row[3]));
    EXPECT_EQ(m.fragment_count(), std::stoi(row[4]));
    EXPECT_EQ(static_cast<int>(m.rings().size()), std::stoi(row[5]));
    EXPECT_EQ(ring_atoms, std::stoi(row[6]));
    EXPECT_EQ(aromatic, std::stoi(row[7]));

    std::vector<int> order(m.atom_count());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const std::string out = write_smiles(m.permuted(order));
    EXPECT_TRUE(isomorphic(m, parse_smiles(out))) << out;
  }
}
