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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "quditzx/diagram.hpp"

namespace quditzx {

enum class RuleId {
  S_fuse,
  D_identity,
  B_copy,
  B_bialgebra,
  K2_commute,
  F1_color,
  F2_cancel,
  L_loop,  // removes one self-loop from a spider
};

std::string rule_name(RuleId r);
RuleId rule_from_name(const std::string& s);
std::vector<RuleId> all_rules();

/**
 * Node ids identifying a match:
 *   S_fuse [a, b], L_loop [s], D_identity [s], B_copy [state, spider],
 *   K2_commute [map, spider], F1_color [s], F2_cancel [first box, second box],
 *   B_bialgebra [merging spider, copying spider].
 */
struct Site {
  RuleId rule;
  std::vector<int> nodes;
  bool operator==(const Site& o) const { return rule == o.rule && nodes == o.nodes; }
};

class StaleSite : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonExactPhase : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/** Sites sorted by node ids. */
std::vector<Site> find_matches(const Diagram& d, RuleId r);

struct RewriteResult {
  Diagram diagram;
  std::vector<int> produced;
};

RewriteResult apply_rule_traced(const Diagram& d, const Site& site);
Diagram apply_rule(const Diagram& d, RuleId r, const Site& site);

/** Unfuse: moves the listed edges of `node` onto a new spider of the same
 * colour carrying `phase`; the old spider keeps the difference. */
RewriteResult split_spider(const Diagram& d, int node, const std::vector<size_t>& edges,
                           const PhaseVector& phase);
/** Puts F then F-dagger (or the reverse) on edge `edge`. */
RewriteResult insert_fourier_pair(const Diagram& d, size_t edge, bool f_first);

struct TraceStep {
  RuleId rule;
  std::vector<int> matched;
  std::vector<int> produced;
};

struct RewriteTrace {
  uint64_t initial_hash = 0;
  uint64_t final_hash = 0;
  std::vector<TraceStep> steps;
};

/** Rules in priority order F2_cancel, S_fuse, L_loop, D_identity, B_copy. */
std::pair<Diagram, RewriteTrace> simplify(const Diagram& d);
/** Re-applies every step; throws if the resulting hash differs. */
Diagram replay(const Diagram& initial, const RewriteTrace& trace);

json trace_to_json(const RewriteTrace& t);
RewriteTrace trace_from_json(const json& j);

struct SoundnessFailure {
  int trial;
  uint64_t seed;
  std::string message;
};

struct SoundnessReport {
  RuleId rule;
  unsigned D;
  int trials = 0;
  uint64_t seed = 0;
  int passed = 0;
  int exact = 0;              // trials equal with the tracked scalar
  double worst_deviation = 0;  // after scalar normalization
  double worst_exact_deviation = 0;
  std::vector<SoundnessFailure> failures;
  bool pass() const { return passed == trials; }
};

/** Random instance of the rule's left-hand side with some match. */
Diagram random_instance(RuleId r, unsigned D, uint64_t seed);

SoundnessReport soundness_report(RuleId r, unsigned D, int trials, uint64_t seed,
                                 double tol = 1e-9);
json report_to_json(const SoundnessReport& r);

}  // namespace quditzx
