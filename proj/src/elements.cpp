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

#include "beetox/elements.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace beetox::elements {

namespace {

struct ElementData {
  const char* symbol;
  double      weight;
};

// Average atomic weights, Z = 1..118.
constexpr ElementData kElements[] = {
    {"H", 1.0080},
    {"He", 4.0030},
    {"Li", 6.9410},
    {"Be", 9.0120},
    {"B", 10.8120},
    {"C", 12.0110},
    {"N", 14.0070},
    {"O", 15.9990},
    {"F", 18.9980},
    {"Ne", 20.1800},
    {"Na", 22.9900},
    {"Mg", 24.3050},
    {"Al", 26.9820},
    {"Si", 28.0860},
    {"P", 30.9740},
    {"S", 32.0670},
    {"Cl", 35.4530},
    {"Ar", 39.9480},
    {"K", 39.0980},
    {"Ca", 40.0780},
    {"Sc", 44.9560},
    {"Ti", 47.8670},
    {"V", 50.9440},
    {"Cr", 51.9960},
    {"Mn", 54.9380},
    {"Fe", 55.8450},
    {"Co", 58.9330},
    {"Ni", 58.6930},
    {"Cu", 63.5460},
    {"Zn", 65.3900},
    {"Ga", 69.7230},
    {"Ge", 72.6100},
    {"As", 74.9220},
    {"Se", 78.9600},
    {"Br", 79.9040},
    {"Kr", 83.8000},
    {"Rb", 85.4680},
    {"Sr", 87.6200},
    {"Y", 88.9060},
    {"Zr", 91.2240},
    {"Nb", 92.9060},
    {"Mo", 95.9400},
    {"Tc", 98.0000},
    {"Ru", 101.0700},
    {"Rh", 102.9060},
    {"Pd", 106.4200},
    {"Ag", 107.8680},
    {"Cd", 112.4120},
    {"In", 114.8180},
    {"Sn", 118.7110},
    {"Sb", 121.7600},
    {"Te", 127.6000},
    {"I", 126.9040},
    {"Xe", 131.2900},
    {"Cs", 132.9050},
    {"Ba", 137.3280},
    {"La", 138.9060},
    {"Ce", 140.1160},
    {"Pr", 140.9080},
    {"Nd", 144.2400},
    {"Pm", 145.0000},
    {"Sm", 150.3600},
    {"Eu", 151.9640},
    {"Gd", 157.2500},
    {"Tb", 158.9250},
    {"Dy", 162.5000},
    {"Ho", 164.9300},
    {"Er", 167.2600},
    {"Tm", 168.9340},
    {"Yb", 173.0400},
    {"Lu", 174.9670},
    {"Hf", 178.4900},
    {"Ta", 180.9480},
    {"W", 183.8400},
    {"Re", 186.2070},
    {"Os", 190.2300},
    {"Ir", 192.2170},
    {"Pt", 195.0780},
    {"Au", 196.9670},
    {"Hg", 200.5900},
    {"Tl", 204.3830},
    {"Pb", 207.2000},
    {"Bi", 208.9800},
    {"Po", 209.0000},
    {"At", 210.0000},
    {"Rn", 222.0000},
    {"Fr", 223.0000},
    {"Ra", 226.0000},
    {"Ac", 227.0000},
    {"Th", 232.0380},
    {"Pa", 231.0360},
    {"U", 238.0290},
    {"Np", 237.0000},
    {"Pu", 244.0000},
    {"Am", 243.0000},
    {"Cm", 247.0000},
    {"Bk", 247.0000},
    {"Cf", 251.0000},
    {"Es", 252.0000},
    {"Fm", 257.0000},
    {"Md", 258.0000},
    {"No", 259.0000},
    {"Lr", 262.0000},
    {"Rf", 267.0000},
    {"Db", 268.0000},
    {"Sg", 269.0000},
    {"Bh", 270.0000},
    {"Hs", 269.0000},
    {"Mt", 278.0000},
    {"Ds", 281.0000},
    {"Rg", 281.0000},
    {"Cn", 285.0000},
    {"Nh", 284.0000},
    {"Fl", 289.0000},
    {"Mc", 288.0000},
    {"Lv", 293.0000},
    {"Ts", 292.0000},
    {"Og", 294.0000},
};

static_assert(sizeof(kElements) / sizeof(kElements[0]) == kMaxAtomicNumber);

constexpr int kH[]   = {1};
constexpr int kB[]   = {3};
constexpr int kC[]   = {4};
constexpr int kN[]   = {3};
constexpr int kO[]   = {2};
constexpr int kF[]   = {1};
constexpr int kSi[]  = {4};
constexpr int kP[]   = {3, 5};
constexpr int kS[]   = {2, 4, 6};
constexpr int kHal[] = {1, 3, 5, 7};
constexpr int kGe[]  = {4};
constexpr int kAs[]  = {3, 5};
constexpr int kSe[]  = {2, 4, 6};
constexpr int kI[]   = {1, 3, 5, 7};

std::span<const int> table_for(int z) {
  switch (z) {
    case 1:
      return kH;
    case 5:
      return kB;
    case 6:
      return kC;
    case 7:
      return kN;
    case 8:
      return kO;
    case 9:
      return kF;
    case 14:
      return kSi;
    case 15:
      return kP;
    case 16:
      return kS;
    case 17:
    case 35:
      return kHal;
    case 32:
      return kGe;
    case 33:
      return kAs;
    case 34:
    case 52:
      return kSe;
    case 53:
      return kI;
    default:
      return {};
  }
}

void check_z(int z) {
  if (z < 1 || z > kMaxAtomicNumber) {
    throw std::out_of_range("atomic number out of range: " + std::to_string(z));
  }
}

}  // namespace

std::string_view symbol(int z) {
  check_z(z);
  return kElements[z - 1].symbol;
}

double average_weight(int z) {
  check_z(z);
  return kElements[z - 1].weight;
}

std::optional<int> from_symbol(std::string_view sym) {
  static const std::unordered_map<std::string_view, int> index = [] {
    std::unordered_map<std::string_view, int> m;
    for (int z = 1; z <= kMaxAtomicNumber; ++z) {
      m.emplace(kElements[z - 1].symbol, z);
    }
    return m;
  }();
  auto it = index.find(sym);
  if (it == index.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::span<const int> default_valences(int z) {
  check_z(z);
  return table_for(z);
}

std::span<const int> allowed_valences(int z, int formal_charge) {
  check_z(z);
  if (formal_charge == 0) {
    return table_for(z);
  }
  // Only shift within the p-block elements that have a table; a cation of a halogen is treated like its left
  // neighbour, a carbanion like nitrogen.
  if (table_for(z).empty()) {
    return {};
  }
  const int shifted = z - formal_charge;
  if (shifted < 1 || shifted > kMaxAtomicNumber) {
    return {};
  }
  // Hydrogen-like or noble-gas shifted cores have no sensible table.
  if (shifted == 2 || shifted == 10 || shifted == 18 || shifted == 36 || shifted == 54) {
    static constexpr int kZero[] = {0};
    return kZero;
  }
  // B- is carbon-like, C+ boron-like, etc. Al/Ga and other unlisted shifted cores fall back to an empty table.
  if (shifted == 13) {
    return kB;
  }
  return table_for(shifted);
}

bool is_organic_subset(int z) {
  switch (z) {
    case 5:
    case 6:
    case 7:
    case 8:
    case 9:
    case 15:
    case 16:
    case 17:
    case 35:
    case 53:
      return true;
    default:
      return false;
  }
}

}  // namespace beetox::elements
