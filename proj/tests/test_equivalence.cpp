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
#include "quditzx/equivalence.hpp"
#include "quditzx/toyrel.hpp"

using namespace quditzx;

TEST_CASE("3Spek states: printed list vs phase-space derivation") {
  auto s = build_3spek_states();
  REQUIRE(s.printed.size() == 12);
  REQUIRE(s.derived.size() == 12);
  CHECK(s.printed[2].support == std::set<unsigned>{7, 8, 9});
  CHECK(s.printed[7].support == std::set<unsigned>{2, 4, 9});
  CHECK(s.printed[11].support == std::set<unsigned>{3, 4, 6});
  CHECK(s.derived[11].support == std::set<unsigned>{3, 4, 8});
  CHECK_FALSE(s.agree);
  REQUIRE(s.discrepancies.size() == 1);
  CHECK(s.discrepancies[0].find("(xz^2)_2") == 0);
  for (size_t i = 0; i < 11; ++i) CHECK(s.printed[i].support == s.derived[i].support);
}

TEST_CASE("dictionary") {
  auto d = build_dictionary();
  REQUIRE(d.size() == 12);
  CHECK(d[0].toy == "z_0");
  CHECK(d[0].colour == Color::X);
  CHECK(d[0].phases.is_zero());
  CHECK(std::abs(std::abs(d[0].vec(0)) - 1) < 1e-12);
  CHECK(d[3].toy == "x_0");
  CHECK(d[3].colour == Color::Z);
  CHECK(d[7].toy == "(xz)_1");
  CHECK(d[7].phases == PhaseVector::from_turns(3, {Rational(0), Rational(1, 3)}));
  std::set<std::set<unsigned>> sups;
  for (const auto& e : d) {
    CHECK(e.support.size() == 3);
    CHECK(std::abs(e.vec.norm() - 1) < 1e-12);
    sups.insert(e.support);
  }
  CHECK(sups.size() == 12);
}

TEST_CASE("effects are the converses of states") {
  for (const auto& e : build_dictionary()) {
    Rel state = rel_state(3, e.support);
    Rel effect = rel_converse(state);
    CHECK(effect.source_arity() == 1);
    CHECK(effect.target_arity() == 0);
    CHECK(rel_support(rel_converse(effect)) == e.support);
  }
}

TEST_CASE("equivalence checks") {
  auto r = run_equivalence_checks();
  REQUIRE(r.pairs.size() == 144);
  CHECK(r.consistent == 144);
  CHECK(r.prob_matches == 144);
  // <x_0 effect | z_0 state> and <z_1 effect | z_0 state>
  CHECK(r.pairs[0 * 12 + 3].toy_possible);
  CHECK(r.pairs[0 * 12 + 3].toy_prob == Rational(1, 3));
  CHECK_FALSE(r.pairs[0 * 12 + 1].toy_possible);
  CHECK(r.pairs[0 * 12 + 1].overlap < 1e-12);
  for (const auto& p : r.pairs)
    CHECK((p.toy_prob == Rational(0) || p.toy_prob == Rational(1, 3) || p.toy_prob == Rational(1)));

  CHECK(r.quantum_factors == std::vector<unsigned>{3, 3});
  CHECK(r.toy_z.closed);
  CHECK(r.toy_z.factors == std::vector<unsigned>{3, 3});
  CHECK(r.toy_z.isomorphic);
  CHECK(r.equivariant_z == 9);
  CHECK(r.toy_x.closed);
  CHECK(r.toy_x.factors == std::vector<unsigned>{3, 3});
  CHECK(r.phase_maps_x == 9);

  // The printed pairing z_1 <-> |1>, z_2 <-> |2> is not compatible with the X phase group;
  // exchanging those two kets is.
  CHECK_FALSE(r.toy_x.isomorphic);
  CHECK(r.equivariant_x < 9);
  CHECK(r.mirrored_x.isomorphic);
  CHECK(r.mirrored_equivariant_x == 9);
  CHECK_FALSE(r.pass());

  auto j = equivalence_to_json(r);
  CHECK(j.at("pairs").size() == 144);
  CHECK(j.at("consistent") == 144);
}
