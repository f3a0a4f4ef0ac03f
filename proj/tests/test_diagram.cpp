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

#include <algorithm>

#include "doctest.h"
#include "generators.hpp"
#include "quditzx/diagram.hpp"
#include "quditzx/rewrite.hpp"
#include "quditzx/semantics.hpp"

using namespace quditzx;

namespace {

bool has_violation(const Diagram& d, ViolationKind k) {
  auto v = violations(d);
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.kind == k; });
}

Diagram wire_spider(unsigned D, const PhaseVector& p) {
  Diagram d(D);
  int i = d.add_input(0), z = d.add_z(p), o = d.add_output(0);
  d.add_edge(i, z);
  d.add_edge(z, o);
  return d;
}

Diagram cnot_diagram(unsigned D) {
  Diagram d(D);
  int i0 = d.add_input(0), i1 = d.add_input(1), o0 = d.add_output(0), o1 = d.add_output(1);
  int z = d.add_z(), x = d.add_x();
  d.add_edge(i0, z);
  d.add_edge(z, o0);
  d.add_edge(i1, x);
  d.add_edge(x, o1);
  d.add_edge(z, x);
  return d;
}

}  // namespace

TEST_CASE("validation") {
  CHECK(violations(Diagram(3)).empty());
  CHECK(violations(wire_spider(3, PhaseVector(3))).empty());

  Diagram box(3);
  int f = box.add_box(false), a = box.add_z(), b = box.add_z(), c = box.add_z();
  box.add_edge(a, f);
  box.add_edge(f, b);
  box.add_edge(f, c);
  CHECK(has_violation(box, ViolationKind::BadBoxDegree));
  CHECK_THROWS_AS(validate(box), InvalidDiagram);

  Diagram gap(2);
  int i = gap.add_input(1), z = gap.add_z();
  gap.add_edge(i, z);
  CHECK(has_violation(gap, ViolationKind::NonContiguousBoundary));

  Diagram loose(2);
  loose.add_input(0);
  CHECK(has_violation(loose, ViolationKind::BadBoundaryDegree));

  Diagram backwards(2);
  int o = backwards.add_output(0), s = backwards.add_z();
  backwards.add_edge(o, s);
  CHECK(has_violation(backwards, ViolationKind::BadBoundaryOrientation));

  Diagram dangling(3);
  dangling.add_edge(0, 1);
  CHECK(has_violation(dangling, ViolationKind::DanglingEdge));
}

TEST_CASE("phase length mismatch is reported from JSON") {
  const char* text = R"({"dimension":3,"nodes":[{"id":0,"kind":"Z","phase":[{"exact":[1,3]}]}],"edges":[]})";
  try {
    auto d = diagram_from_string(text);
    CHECK(has_violation(d, ViolationKind::PhaseLengthMismatch));
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("nodes[0]") != std::string::npos);
  }
}

TEST_CASE("composition") {
  auto d = wire_spider(3, PhaseVector::from_turns(3, {Rational(1, 3), Rational(0)}));
  auto c = compose(identity_diagram(3), d, ComposeMode::Sequential);
  CHECK(max_abs_diff(evaluate(c).mat, evaluate(d).mat) < 1e-12);
  CHECK(isomorphic(compose(d, Diagram(3), ComposeMode::Parallel), d));

  Diagram fd(3);
  int i = fd.add_input(0), f = fd.add_box(false), g = fd.add_box(true), o = fd.add_output(0);
  fd.add_edge(i, f);
  fd.add_edge(f, g);
  fd.add_edge(g, o);
  CHECK(max_abs_diff(evaluate(fd).mat, Eigen::MatrixXcd::Identity(3, 3)) < 1e-12);

  CHECK_THROWS_AS(compose(cnot_diagram(3), d, ComposeMode::Sequential), ArityMismatch);
  CHECK_THROWS(compose(d, wire_spider(2, PhaseVector(2)), ComposeMode::Parallel));
}

TEST_CASE("property: composition is associative up to isomorphism") {
  auto g = testgen::rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    unsigned D = testgen::uniform(g, 2, 4);
    auto a = wire_spider(D, testgen::exact_phase(D, g));
    auto b = wire_spider(D, testgen::exact_phase(D, g));
    auto c = wire_spider(D, testgen::exact_phase(D, g));
    for (auto mode : {ComposeMode::Sequential, ComposeMode::Parallel})
      CHECK(isomorphic(compose(compose(a, b, mode), c, mode), compose(a, compose(b, c, mode), mode)));
  }
}

TEST_CASE("JSON round trip") {
  CHECK(isomorphic(json_roundtrip(Diagram(2)), Diagram(2)));
  Diagram d(3);
  int i = d.add_input(0), z = d.add_z(PhaseVector::from_turns(3, {Rational(1, 3), Rational(2, 3)}));
  int x = d.add_x(PhaseVector::from_radians(3, {0.25, 1.5})), o = d.add_output(0);
  d.add_edge(i, z);
  d.add_edge(z, x);
  d.add_edge(x, o);
  d.set_scalar({0.5, -0.25});
  auto r = json_roundtrip(d);
  CHECK(isomorphic(r, d));
  CHECK(r.scalar() == d.scalar());
  CHECK(violations(r).empty());
  CHECK_THROWS_AS(diagram_from_string(R"({"nodes":[],"edges":[]})"), ParseError);
  CHECK_THROWS_AS(diagram_from_string("{"), ParseError);
}

TEST_CASE("property: round trip preserves validity on random rule instances") {
  for (auto r : all_rules())
    for (unsigned D = 2; D <= 4; ++D)
      for (uint64_t s = 0; s < 5; ++s) {
        auto d = random_instance(r, D, s);
        auto back = json_roundtrip(d);
        CHECK(isomorphic(back, d));
        CHECK(violations(back).size() == violations(d).size());
        CHECK(diagram_hash(back) == diagram_hash(d));
      }
}

TEST_CASE("DOT export") {
  CHECK(export_dot(Diagram(2)) == "digraph G {\n}\n");
  auto d = wire_spider(3, PhaseVector::from_turns(3, {Rational(1, 3), Rational(2, 3)}));
  std::string dot = export_dot(d);
  CHECK(dot.find("(1/3, 2/3)") != std::string::npos);
  CHECK(dot.find("green") != std::string::npos);
  CHECK(dot == export_dot(json_roundtrip(d)));

  std::string cn = export_dot(cnot_diagram(3));
  size_t arrows = 0;
  for (size_t p = cn.find("->"); p != std::string::npos; p = cn.find("->", p + 2)) ++arrows;
  CHECK(arrows == 5);
  CHECK(cn.find("fillcolor=green") != std::string::npos);
  CHECK(cn.find("fillcolor=red") != std::string::npos);
}

TEST_CASE("isomorphism distinguishes phases and boundary positions") {
  auto a = wire_spider(3, PhaseVector::from_turns(3, {Rational(1, 3), Rational(0)}));
  auto b = wire_spider(3, PhaseVector::from_turns(3, {Rational(2, 3), Rational(0)}));
  CHECK_FALSE(isomorphic(a, b));
  CHECK(isomorphic(a, a));
}
