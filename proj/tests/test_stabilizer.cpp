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
#include <cmath>
#include <map>

#include "doctest.h"
#include "generators.hpp"
#include "quditzx/semantics.hpp"
#include "quditzx/stabilizer.hpp"

using namespace quditzx;

namespace {

using Mat = Eigen::MatrixXcd;

PauliOp random_pauli(unsigned D, int n, std::mt19937_64& g) {
  std::vector<long long> x, z;
  for (int i = 0; i < n; ++i) {
    x.push_back(testgen::uniform(g, 0, D - 1));
    z.push_back(testgen::uniform(g, 0, D - 1));
  }
  return make_pauli(D, testgen::uniform(g, 0, 2 * D - 1), x, z);
}

CliffordGate random_gate(unsigned D, int n, std::mt19937_64& g) {
  for (;;) {
    auto kind = GateKind(testgen::uniform(g, 0, 4));
    CliffordGate gate{kind, {}, 1};
    if (kind == GateKind::F || kind == GateKind::Sq) {
      gate.wires = {int(testgen::uniform(g, 0, unsigned(n) - 1))};
      gate.q = testgen::uniform(g, 1, D - 1);
      return gate;
    }
    if (n < 2) continue;
    int a = int(testgen::uniform(g, 0, unsigned(n) - 1)), b = int(testgen::uniform(g, 0, unsigned(n) - 2));
    if (b >= a) ++b;
    gate.wires = {a, b};
    return gate;
  }
}

Eigen::VectorXcd green(unsigned D, int a, int b) {
  return spider_state(Color::Z, PhaseVector::from_turns(D, {Rational(a, 3), Rational(b, 3)})).normalized();
}

Eigen::VectorXcd red(unsigned D, int a, int b) {
  return spider_state(Color::X, PhaseVector::from_turns(D, {Rational(a, 3), Rational(b, 3)})).normalized();
}

}  // namespace

TEST_CASE("Pauli relations") {
  for (unsigned D : {2u, 3u, 5u, 7u}) {
    auto X = pauli_single(D, 1, 0, 1, 0), Z = pauli_single(D, 1, 0, 0, 1);
    auto xz = pauli_mul(X, Z), zx = pauli_mul(Z, X);
    CHECK(xz.x == zx.x);
    CHECK(xz.z == zx.z);
    CHECK((xz.lambda + 2 * D - zx.lambda) % (2 * D) == 2);
    CHECK(pauli_pow(X, D).is_identity());
    CHECK(pauli_pow(Z, D).is_identity());
    CHECK(pauli_mul(pauli_identity(D, 1), X) == X);
    Mat mx = pauli_matrix(X), mz = pauli_matrix(Z);
    const cplx eta = std::polar(1.0, 2 * M_PI / D);
    CHECK(max_abs_diff(mx * mz, eta * mz * mx) < 1e-12);
  }
  CHECK_THROWS_AS(pauli_mul(pauli_identity(3, 1), pauli_identity(3, 2)), ShapeMismatch);
}

TEST_CASE("property: Pauli algebra matches dense matrices") {
  auto g = testgen::rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    unsigned D = std::vector<unsigned>{2, 3, 5}[testgen::uniform(g, 0, 2)];
    int n = int(testgen::uniform(g, 1, 2));
    auto p = random_pauli(D, n, g), q = random_pauli(D, n, g);
    CHECK(max_abs_diff(pauli_matrix(pauli_mul(p, q)), pauli_matrix(p) * pauli_matrix(q)) < 1e-10);
    auto m = testgen::uniform(g, 0, D);
    Mat pm = Mat::Identity(pauli_matrix(p).rows(), pauli_matrix(p).cols());
    for (unsigned i = 0; i < m; ++i) pm = pm * pauli_matrix(p);
    CHECK(max_abs_diff(pauli_matrix(pauli_pow(p, m)), pm) < 1e-10);
    const cplx w = std::polar(1.0, 2 * M_PI * pauli_commutator(p, q) / D);
    CHECK(max_abs_diff(pauli_matrix(p) * pauli_matrix(q), w * pauli_matrix(q) * pauli_matrix(p)) < 1e-10);
    CHECK(pauli_from_json(D, pauli_to_json(p)) == p);
  }
}

TEST_CASE("normalized observables have order D") {
  for (unsigned D : {2u, 3u, 5u})
    for (unsigned x = 0; x < D; ++x)
      for (unsigned z = 0; z < D; ++z) {
        auto o = pauli_observable(D, {x}, {z});
        CHECK(pauli_pow(o, D).is_identity());
      }
}

TEST_CASE("property: Clifford conjugation matches dense conjugation") {
  auto g = testgen::rng(62);
  for (int trial = 0; trial < 300; ++trial) {
    unsigned D = std::vector<unsigned>{2, 3, 5}[testgen::uniform(g, 0, 2)];
    int n = int(testgen::uniform(g, 1, 2));
    auto p = random_pauli(D, n, g);
    auto gate = random_gate(D, n, g);
    Mat U = embed(gate_dense(gate, D), gate.wires, n, D);
    CHECK(max_abs_diff(pauli_matrix(conjugate(p, gate)), U * pauli_matrix(p) * U.adjoint()) < 1e-10);
  }
  CHECK_THROWS_AS(validate_gate({GateKind::CNOT, {0, 0}, 1}, 2, 3), InvalidGate);
  CHECK_THROWS_AS(validate_gate({GateKind::F, {2}, 1}, 2, 3), InvalidGate);
  CHECK_THROWS_AS(validate_gate({GateKind::Sq, {0}, 0}, 1, 3), InvalidGate);
}

TEST_CASE("tableau updates") {
  auto t = Tableau::zero_state(2, 3);
  CHECK(tableau_violations(t).empty());
  auto c = apply_clifford(t, {GateKind::CNOT, {0, 1}, 1});
  CHECK(tableau_violations(c).empty());
  Mat U = gate_dense({GateKind::CNOT, {0, 1}, 1}, 3);
  for (size_t i = 0; i < 2; ++i)
    CHECK(max_abs_diff(pauli_matrix(c.generators[i]), U * pauli_matrix(t.generators[i]) * U.adjoint()) < 1e-10);
  auto f = apply_clifford(Tableau::zero_state(1, 3), {GateKind::F, {0}, 1});
  CHECK(f.generators[0].x[0] != 0);
  CHECK(f.generators[0].z[0] == 0);
}

TEST_CASE("measurement") {
  auto t = Tableau::zero_state(1, 3);
  auto Z = pauli_observable(3, {0}, {1}), X = pauli_observable(3, {1}, {0});
  auto dz = measurement_distribution(t, Z);
  CHECK(dz[0] == Rational(1));
  CHECK(measure(t, Z, uint64_t(5)).first == 0);
  auto dx = measurement_distribution(t, X);
  for (const auto& p : dx) CHECK(p == Rational(1, 3));
  std::map<unsigned, int> counts;
  for (uint64_t s = 0; s < 300; ++s) {
    auto [k, after] = measure(t, X, s);
    ++counts[k];
    auto [k2, again] = measure(after, X, s + 1000);
    CHECK(k2 == k);
  }
  CHECK(counts.size() == 3);
  for (const auto& [k, n] : counts) CHECK(n > 60);
  auto fixed = measure_outcome(t, X, 2);
  CHECK(measurement_distribution(fixed, X)[2] == Rational(1));
}

TEST_CASE("dense oracle") {
  Circuit empty{2, 3, {}};
  auto r = statevector_oracle(empty, 1);
  CHECK(std::abs(r.state(0) - cplx(1)) < 1e-12);
  Circuit f{1, 3, {CliffordGate{GateKind::F, {0}, 1}}};
  auto rf = statevector_oracle(f, 1);
  for (long i = 0; i < 3; ++i) CHECK(std::abs(rf.state(i) - cplx(1 / std::sqrt(3.0))) < 1e-12);
  CHECK_THROWS_AS(statevector_oracle(Circuit{4, 5, {}}, 1), std::length_error);
}

TEST_CASE("property: tableau agrees with the dense oracle") {
  auto g = testgen::rng(63);
  for (unsigned D : {2u, 3u, 5u})
    for (int trial = 0; trial < 100; ++trial) {
      int n = int(testgen::uniform(g, 1, 3));
      auto c = random_circuit(n, D, 20, g);
      auto cc = cross_check(c, trial, 1e-9);
      CAPTURE(D);
      CAPTURE(trial);
      CHECK(cc.pass);
      CHECK(cc.max_prob_diff < 1e-9);
      auto back = circuit_from_json(circuit_to_json(c), 1, D);
      CHECK(circuit_to_json(back) == circuit_to_json(c));
    }
}

TEST_CASE("circuit JSON errors carry the gate index") {
  auto bad = json::parse(R"({"n":1,"D":3,"gates":[{"gate":"F","wires":[0]},{"gate":"bogus","wires":[0]}]})");
  try {
    circuit_from_json(bad, 1, 3);
    FAIL("expected a parse error");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("gates[1]") != std::string::npos);
  }
  auto bare = json::parse(R"([{"gate":"CNOT","wires":[0,2]}])");
  CHECK(circuit_from_json(bare, 1, 3).n == 3);
}

TEST_CASE("qutrit stabilizer states and their torus coordinates") {
  auto states = enumerate_stabilizer_states(3);
  REQUIRE(states.size() == 12);
  struct Row {
    bool red;
    int a, b;
    int za, zb, xa, xb;  // thirds of a turn; -1 when absent
  };
  const Row rows[12] = {{true, 0, 0, -1, -1, 0, 0},  {true, 2, 1, -1, -1, 2, 1},  {true, 1, 2, -1, -1, 1, 2},
                        {false, 0, 0, 0, 0, -1, -1}, {false, 1, 2, 1, 2, -1, -1}, {false, 2, 1, 2, 1, -1, -1},
                        {false, 2, 2, 2, 2, 1, 1},   {false, 0, 1, 0, 1, 2, 0},   {false, 1, 0, 1, 0, 0, 2},
                        {false, 1, 1, 1, 1, 2, 2},   {false, 2, 0, 2, 0, 1, 0},   {false, 0, 2, 0, 2, 0, 1}};
  int both = 0;
  for (const auto& r : rows) {
    Eigen::VectorXcd v = r.red ? red(3, r.a, r.b) : green(3, r.a, r.b);
    const StabilizerState* hit = nullptr;
    for (const auto& s : states)
      if (std::abs(std::abs(s.vec.normalized().dot(v)) - 1) < 1e-10) hit = &s;
    REQUIRE(hit);
    if (r.za >= 0) {
      REQUIRE(hit->z_coords);
      CHECK(*hit->z_coords == PhaseVector::from_turns(3, {Rational(r.za, 3), Rational(r.zb, 3)}));
    } else {
      CHECK_FALSE(hit->z_coords);
    }
    if (r.xa >= 0) {
      REQUIRE(hit->x_coords);
      CHECK(*hit->x_coords == PhaseVector::from_turns(3, {Rational(r.xa, 3), Rational(r.xb, 3)}));
    } else {
      CHECK_FALSE(hit->x_coords);
    }
    both += r.za >= 0 && r.xa >= 0;
  }
  CHECK(both == 6);
}

TEST_CASE("stabilizer states are eigenvectors and bases are mutually unbiased") {
  for (unsigned D : {2u, 3u, 5u}) {
    auto states = enumerate_stabilizer_states(D);
    CHECK(states.size() == D * (D + 1));
    const cplx eta = std::polar(1.0, 2 * M_PI / D);
    for (const auto& s : states) {
      Eigen::VectorXcd w = pauli_matrix(s.observable) * s.vec;
      CHECK((w - std::pow(eta, double(s.k)) * s.vec).norm() < 1e-10);
    }
    for (const auto& a : states)
      for (const auto& b : states)
        if (a.basis != b.basis) CHECK(std::abs(D * std::norm(a.vec.dot(b.vec)) - 1.0) < 1e-10);
  }
  auto q = enumerate_stabilizer_states(2);
  int z = 0, x = 0, both = 0;
  for (const auto& s : q) {
    z += bool(s.z_coords);
    x += bool(s.x_coords);
    both += s.z_coords && s.x_coords;
  }
  CHECK(z == 4);
  CHECK(x == 4);
  CHECK(both == 2);
  CHECK_THROWS(enumerate_stabilizer_states(4));
}

TEST_CASE("phase groups") {
  CHECK(stabilizer_phase_group(2).factors == std::vector<unsigned>{4});
  auto g3 = stabilizer_phase_group(3);
  CHECK(g3.elements.size() == 9);
  CHECK(g3.closed);
  CHECK(g3.factors == std::vector<unsigned>{3, 3});
  for (const auto& a : g3.elements)
    for (const auto& b : g3.elements)
      CHECK(std::find(g3.elements.begin(), g3.elements.end(), phase_add(a, b)) != g3.elements.end());
  CHECK(stabilizer_phase_group(5).factors == std::vector<unsigned>{5, 5});
}
