// Copyright 2025 The quditzx Authors
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

#pragma once

#include <Eigen/Dense>
#include <set>
#include <string>
#include <vector>

#include "quditzx/phase.hpp"
#include "quditzx/rational.hpp"
#include "quditzx/semantics.hpp"

namespace quditzx {

struct SpekState {
  std::string name;   // "z_0", "(xz)_1", "(xz^2)_2", ...
  std::string basis;  // "z", "x", "xz", "xz^2"
  unsigned index = 0;
  std::set<unsigned> support;
};

/** The twelve supports as printed, including the (xz^2)_2 misprint {3,4,6}. */
std::vector<SpekState> printed_3spek_states();

struct SpekStates {
  std::vector<SpekState> printed;
  std::vector<SpekState> derived;  // from phase-space enumeration
  bool agree = false;
  std::vector<std::string> discrepancies;
};

SpekStates build_3spek_states();

struct DictEntry {
  std::string toy;
  std::set<unsigned> support;
  std::string ket;
  Color colour;
  PhaseVector phases;
  Eigen::VectorXcd vec;  // unit norm
};

/** Pairs each 3Spek state (derived supports) with its qutrit stabilizer state. */
std::vector<DictEntry> build_dictionary();

struct PairRow {
  int state = 0;
  int effect = 0;
  bool toy_possible = false;
  double overlap = 0.0;
  Rational toy_prob;
  double quantum_prob = 0.0;
  bool consistent = false;
  bool prob_match = false;
};

struct GroupSide {
  std::vector<int> elements;  // dictionary indices of the unbiased states
  bool closed = false;
  std::vector<unsigned> factors;
  bool isomorphic = false;    // dictionary respects the group laws
};

struct EquivalenceReport {
  std::vector<PairRow> pairs;
  int consistent = 0;
  int prob_matches = 0;
  GroupSide toy_z, toy_x;
  std::vector<unsigned> quantum_factors;
  int equivariant_z = 0;  // phase maps whose toy and quantum permutations agree
  int equivariant_x = 0;
  int phase_maps_z = 0;
  int phase_maps_x = 0;
  // X-side checks rerun with the z_1/z_2 kets exchanged.
  GroupSide mirrored_x;
  int mirrored_equivariant_x = 0;
  bool pass() const;
};

EquivalenceReport run_equivalence_checks();

json spek_states_to_json(const SpekStates& s);
json dictionary_to_json(const std::vector<DictEntry>& d);
json equivalence_to_json(const EquivalenceReport& r);

}  // namespace quditzx
