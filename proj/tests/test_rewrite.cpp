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

#include "doctest.h"
#include "generators.hpp"
#include "quditzx/rewrite.hpp"
#include "quditzx/semantics.hpp"

using namespace quditzx;

namespace {

PhaseVector turns(unsigned D, std::vector<Rational> t) { return PhaseVector::from_turns(D, t); }

bool same_map(const Diagram& a, const Diagram& b) {
  return max_abs_diff(evaluate(a).mat, evaluate(b).mat) < 1e-9;
}

Diagram two_z(unsigned D, const PhaseVector& a, const PhaseVector& b, int& za, int& zb) {
  Diagram d(D);
  int i = d.add_input(0), o = d.add_output(0);
  za = d.add_z(a);
  zb = d.add_z(b);
  d.add_edge(i, za);
  d.add_edge(za, zb);
  d.add_edge(zb, o);
  return d;
}

}  // namespace

TEST_CASE("rule names") {
  for (auto r : all_rules()) CHECK(rule_from_name(rule_name(r)) == r);
  CHECK(rule_from_name("K1") == RuleId::B_copy);
  CHECK_THROWS(rule_from_name("nope"));
}

TEST_CASE("S_fuse adds phases") {
  int za, zb;
  auto a = turns(3, {{1, 3}, {1, 9}}), b = turns(3, {{1, 3}, {2, 9}});
  auto d = two_z(3, a, b, za, zb);
  auto sites = find_matches(d, RuleId::S_fuse);
  REQUIRE(sites.size() == 1);
  auto r = apply_rule_traced(d, sites[0]);
  REQUIRE(r.produced.size() == 1);
  CHECK(r.diagram.node(r.produced[0]).phase == phase_add(a, b));
  CHECK(same_map(d, r.diagram));
}

TEST_CASE("F2_cancel and its inverse") {
  Diagram d(4);
  int i = d.add_input(0), f = d.add_box(false), g = d.add_box(true), o = d.add_output(0);
  d.add_edge(i, f);
  d.add_edge(f, g);
  d.add_edge(g, o);
  auto sites = find_matches(d, RuleId::F2_cancel);
  REQUIRE(sites.size() == 1);
  auto r = apply_rule(d, RuleId::F2_cancel, sites[0]);
  CHECK(r.nodes().size() == 2);
  CHECK(same_map(d, r));
  auto back = insert_fourier_pair(r, 0, true).diagram;
  CHECK(same_map(back, d));
  CHECK(find_matches(back, RuleId::F2_cancel).size() == 1);
}

TEST_CASE("B_copy finds the qutrit X classical point |1>") {
  Diagram d(3);
  int s = d.add_x(turns(3, {{2, 3}, {1, 3}}));
  int z = d.add_z(), o0 = d.add_output(0), o1 = d.add_output(1);
  d.add_edge(s, z);
  d.add_edge(z, o0);
  d.add_edge(z, o1);
  auto sites = find_matches(d, RuleId::B_copy);
  REQUIRE(sites.size() == 1);
  auto r = apply_rule(d, RuleId::B_copy, sites[0]);
  CHECK(equal_up_to_scalar(evaluate(r).mat, evaluate(d).mat, 1e-10));
  CHECK(same_map(d, r));
}

TEST_CASE("K2 on D = 4 reproduces the Neg phase") {
  auto alpha = turns(4, {{1, 8}, {3, 8}, {1, 16}});
  Diagram d(4);
  int z = d.add_z(alpha), x = d.add_x(turns(4, {{1, 4}, {1, 2}, {3, 4}})), o = d.add_output(0);
  d.add_edge(z, x);
  d.add_edge(x, o);
  auto sites = find_matches(d, RuleId::K2_commute);
  REQUIRE(sites.size() == 1);
  auto r = apply_rule_traced(d, sites[0]);
  CHECK(same_map(d, r.diagram));
  // (a2 - a1, a3 - a1, -a1)
  CHECK(r.diagram.node(z).phase == turns(4, {{2, 8}, {-1, 16}, {-1, 8}}));
}

TEST_CASE("rule application errors") {
  int za, zb;
  auto d = two_z(3, PhaseVector(3), PhaseVector(3), za, zb);
  CHECK_THROWS_AS(apply_rule(d, RuleId::S_fuse, Site{RuleId::S_fuse, {za, 99}}), StaleSite);
  Diagram k(3);
  int x = k.add_x(PhaseVector::from_radians(3, {4 * M_PI / 3, 2 * M_PI / 3}));
  int z = k.add_z(), o0 = k.add_output(0), o1 = k.add_output(1);
  k.add_edge(x, z);
  k.add_edge(z, o0);
  k.add_edge(z, o1);
  CHECK(find_matches(k, RuleId::B_copy).empty());
  CHECK_THROWS_AS(apply_rule(k, RuleId::B_copy, Site{RuleId::B_copy, {x, z}}), NonExactPhase);
}

TEST_CASE("simplify examples") {
  for (unsigned D = 2; D <= 4; ++D) {
    Diagram chain(D);
    int prev = chain.add_input(0);
    for (int i = 0; i < 5; ++i) {
      int z = chain.add_z();
      chain.add_edge(prev, z);
      prev = z;
    }
    chain.add_edge(prev, chain.add_output(0));
    auto [s, t] = simplify(chain);
    CHECK(s.nodes().size() == 2);
    CHECK(s.edges().size() == 1);
    CHECK(same_map(s, chain));

    int za, zb;
    auto a = turns(D, std::vector<Rational>(D - 1, Rational(1, D)));
    auto opp = two_z(D, a, phase_invert(a), za, zb);
    auto [w, tw] = simplify(opp);
    CHECK(w.nodes().size() == 2);
    CHECK(same_map(w, opp));

    auto [again, empty] = simplify(s);
    CHECK(empty.steps.empty());
    CHECK(isomorphic(again, s));
  }
}

TEST_CASE("trace replay and JSON") {
  auto g = testgen::rng(41);
  for (auto r : all_rules())
    for (uint64_t seed = 0; seed < 6; ++seed) {
      unsigned D = testgen::uniform(g, 2, 4);
      auto d = random_instance(r, D, seed);
      auto [s, t] = simplify(d);
      CHECK(t.initial_hash == diagram_hash(d));
      CHECK(t.final_hash == diagram_hash(s));
      auto back = trace_from_json(trace_to_json(t));
      auto rep = replay(d, back);
      CHECK(diagram_hash(rep) == t.final_hash);
      CHECK(same_map(s, d));
    }
}

TEST_CASE("property: split then fuse restores the map") {
  auto g = testgen::rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    unsigned D = testgen::uniform(g, 2, 4);
    int za, zb;
    auto d = two_z(D, testgen::exact_phase(D, g), testgen::exact_phase(D, g), za, zb);
    auto legs = d.legs(za);
    auto part = testgen::exact_phase(D, g);
    auto split = split_spider(d, za, {legs[0].edge}, part);
    CHECK(same_map(split.diagram, d));
    auto sites = find_matches(split.diagram, RuleId::S_fuse);
    REQUIRE_FALSE(sites.empty());
    auto fused = apply_rule(split.diagram, RuleId::S_fuse, sites[0]);
    CHECK(same_map(fused, d));
  }
}

TEST_CASE("soundness of every rule") {
  for (auto r : all_rules())
    for (unsigned D = 2; D <= 5; ++D) {
      auto rep = soundness_report(r, D, 20, 1000 + D);
      CAPTURE(rule_name(r));
      CAPTURE(D);
      CHECK(rep.pass());
      CHECK(rep.exact == rep.trials);
      CHECK(rep.worst_deviation < 1e-9);
    }
  auto rep = soundness_report(RuleId::F1_color, 2, 30, 5);
  CHECK(rep.pass());
  auto j = report_to_json(rep);
  CHECK(j.at("passed") == 30);
}
