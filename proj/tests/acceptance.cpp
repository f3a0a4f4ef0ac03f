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

// Acceptance criteria: one PASS/FAIL line per criterion, details indented below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "quditzx/equivalence.hpp"
#include "quditzx/phasespace.hpp"
#include "quditzx/rewrite.hpp"
#include "quditzx/semantics.hpp"
#include "quditzx/stabilizer.hpp"
#include "quditzx/synthesis.hpp"
#include "quditzx/toyrel.hpp"

using namespace quditzx;

namespace {

using Mat = Eigen::MatrixXcd;

struct Criterion {
  int id;
  std::string title;
  std::vector<std::pair<bool, std::string>> parts;

  void add(bool ok, std::string what) { parts.push_back({ok, std::move(what)}); }
  bool pass() const {
    for (const auto& p : parts)
      if (!p.first) return false;
    return !parts.empty();
  }
};

std::string num(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3g", v);
  return b;
}

PhaseVector turns(unsigned D, std::vector<Rational> t) { return PhaseVector::from_turns(D, t); }

PhaseVector random_phase(unsigned D, std::mt19937_64& g) {
  std::uniform_real_distribution<double> u(0.0, 2 * M_PI);
  std::vector<double> r;
  for (unsigned k = 1; k < D; ++k) r.push_back(u(g));
  return PhaseVector::from_radians(D, r);
}

Criterion rule_soundness() {
  Criterion c{1, "rule soundness", {}};
  auto t0 = std::chrono::steady_clock::now();
  for (auto r : all_rules()) {
    bool ok = true;
    double worst = 0;
    int passed = 0, total = 0;
    for (unsigned D = 2; D <= 5; ++D) {
      auto rep = soundness_report(r, D, 50, 2025 + D, 1e-9);
      ok = ok && rep.pass() && rep.worst_deviation < 1e-9;
      worst = std::max(worst, rep.worst_deviation);
      passed += rep.passed;
      total += rep.trials;
    }
    c.add(ok, rule_name(r) + ": " + std::to_string(passed) + "/" + std::to_string(total) +
                  " instances over D=2..5, worst deviation " + num(worst));
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.add(secs < 120, "runtime " + num(secs) + " s (limit 120 s)");
  return c;
}

Criterion k2_golden() {
  Criterion c{2, "K2 golden matrices (D=4)", {}};
  const Rational ph[3][3] = {{{1, 4}, {1, 2}, {3, 4}}, {{1, 2}, {0}, {1, 2}}, {{3, 4}, {1, 2}, {1, 4}}};
  const int shift[3] = {1, 2, 3};
  const auto alpha = turns(4, {{1, 8}, {3, 8}, {1, 16}});
  const Rational a1(1, 8), a2(3, 8), a3(1, 16);
  const std::vector<Rational> expected[3] = {
      {a2 - a1, a3 - a1, -a1}, {a3 - a2, -a2, a1 - a2}, {-a3, a1 - a3, a2 - a3}};
  for (int t = 0; t < 3; ++t) {
    auto map_phase = turns(4, {ph[t][0], ph[t][1], ph[t][2]});
    Mat L = lambda_matrix(Color::X, map_phase).mat;
    double dev = 0;
    for (int r = 0; r < 4; ++r)
      for (int k = 0; k < 4; ++k) dev = std::max(dev, std::abs(L(r, k) - cplx(k == (r + shift[t]) % 4 ? 1 : 0)));
    c.add(dev < 1e-12, "Lambda^X" + map_phase.str() + " permutation matrix, deviation " + num(dev));

    Diagram d(4);
    int z = d.add_z(alpha), x = d.add_x(map_phase), o = d.add_output(0);
    d.add_edge(z, x);
    d.add_edge(x, o);
    auto sites = find_matches(d, RuleId::K2_commute);
    bool ok = sites.size() == 1;
    std::string got = "no site";
    if (ok) {
      auto res = apply_rule(d, RuleId::K2_commute, sites[0]);
      got = res.node(z).phase.str();
      ok = res.node(z).phase == turns(4, expected[t]) &&
           max_abs_diff(evaluate(res).mat, evaluate(d).mat) < 1e-12;
    }
    c.add(ok, "output phase " + got + " equals the Neg vector for k=" + std::to_string(shift[t]));
  }
  return c;
}

Criterion fourier_identities() {
  Criterion c{3, "Fourier identities", {}};
  for (const char* id : {"fourier_copy", "fourier_points"}) {
    bool ok = true;
    double worst = 0;
    for (unsigned D = 2; D <= 7; ++D) {
      auto r = structure_check(id, D);
      ok = ok && r.pass && r.deviation < 1e-10;
      worst = std::max(worst, r.deviation);
    }
    c.add(ok, std::string(id == std::string("fourier_copy") ? "(F x F) delta_Z F^dag = delta_X" : "F |a>_Z = |a>_X") +
                  " for D=2..7, worst deviation " + num(worst));
  }
  return c;
}

Criterion universality() {
  Criterion c{4, "qutrit universality", {}};
  auto s0 = synth_zj(0, make_state({1, 0, 0}));
  c.add(s0.real && s0.phase && s0.phase->is_zero(), "b=(1,0,0), j=0 gives alpha=(0,0)");
  std::mt19937_64 g(4);
  double worst_unit = 0, worst_prop = 0;
  int solved = 0, real = 0, within = 0;
  for (int i = 0; i < 100; ++i) {
    auto b = random_state(3, g);
    for (unsigned j = 0; j < 3; ++j) {
      auto s = synth_zj(j, b);
      auto r = zj_residual(s, b);
      ++solved;
      real += s.real;
      within += r.unit_phase < 1e-6;
      worst_unit = std::max(worst_unit, r.unit_phase);
      worst_prop = std::max(worst_prop, r.proportional);
    }
  }
  c.add(within == solved, "Lambda_X(alpha) b = e^{i phi} e_j within 1e-6: " + std::to_string(within) + "/" +
                              std::to_string(solved) + " (worst residual " + num(worst_unit) + ", real angles " +
                              std::to_string(real) + "/" + std::to_string(solved) + ")");
  c.add(worst_prop < 1e-6, "Lambda_X(alpha) b proportional to e_j, worst residual " + num(worst_prop));
  int detected = 0, tried = 0;
  for (unsigned k = 0; k < 3; ++k) {
    std::vector<cplx> v;
    for (unsigned m = 0; m < 3; ++m) v.push_back(std::polar(1 / std::sqrt(3.0), 2 * M_PI * m * k / 3));
    for (unsigned j = 0; j < 3; ++j) {
      ++tried;
      try {
        synth_zj(j, make_state(v));
      } catch (const Degenerate&) {
        ++detected;
      }
    }
  }
  c.add(detected == tried, "X eigenvectors reported as degenerate: " + std::to_string(detected) + "/" +
                               std::to_string(tried));
  return c;
}

Criterion torus_group_law() {
  Criterion c{5, "torus group law", {}};
  std::mt19937_64 g(5);
  double worst = 0, worst_det = 0, worst_abs = 0;
  for (unsigned D = 2; D <= 5; ++D)
    for (int i = 0; i < 100; ++i) {
      auto a = random_phase(D, g), b = random_phase(D, g);
      Mat La = lambda_matrix(Color::X, a).mat;
      worst = std::max(worst, max_abs_diff(lambda_matrix(Color::X, b).mat * La,
                                           lambda_matrix(Color::X, phase_add(a, b)).mat));
      cplx det = La.determinant();
      worst_det = std::max(worst_det, std::abs(det - cplx(1)));
      worst_abs = std::max(worst_abs, std::abs(std::abs(det) - 1));
    }
  c.add(worst < 1e-9, "Lambda_X(b) Lambda_X(a) = Lambda_X(a+b), 400 pairs, worst " + num(worst));
  c.add(worst_det < 1e-8, "det Lambda_X = 1, worst |det - 1| " + num(worst_det));
  c.add(true, "info: |det Lambda_X| = 1, worst " + num(worst_abs));
  return c;
}

Criterion stabilizer_sim() {
  Criterion c{6, "stabilizer simulator", {}};
  for (unsigned D : {2u, 3u, 5u}) {
    std::mt19937_64 g(600 + D);
    int ok = 0;
    double worst = 0;
    for (int i = 0; i < 200; ++i) {
      int n = 1 + i % 3;
      auto circ = random_circuit(n, D, 20, g);
      auto cc = cross_check(circ, uint64_t(i), 1e-9);
      ok += cc.pass;
      worst = std::max(worst, cc.max_prob_diff);
    }
    c.add(ok == 200, "D=" + std::to_string(D) + ": " + std::to_string(ok) + "/200 circuits agree, worst " + num(worst));
  }
  double rel = 0;
  bool decomp = true;
  for (unsigned D = 2; D <= 5; ++D) {
    Mat X = Mat::Zero(D, D), Z = Mat::Zero(D, D);
    const cplx eta = std::polar(1.0, 2 * M_PI / D);
    for (unsigned j = 0; j < D; ++j) {
      X(j, (j + 1) % D) = 1;
      Z(j, j) = std::pow(eta, double(j));
    }
    Mat XD = Mat::Identity(D, D), ZD = Mat::Identity(D, D);
    for (unsigned k = 0; k < D; ++k) {
      XD = XD * X;
      ZD = ZD * Z;
    }
    rel = std::max({rel, max_abs_diff(X * Z, eta * Z * X), max_abs_diff(XD, Mat::Identity(D, D)),
                    max_abs_diff(ZD, Mat::Identity(D, D))});
    if (is_prime(D)) {
      auto px = pauli_single(D, 1, 0, 1, 0), pz = pauli_single(D, 1, 0, 0, 1);
      rel = std::max({rel, max_abs_diff(pauli_matrix(px) * pauli_matrix(pz), eta * pauli_matrix(pz) * pauli_matrix(px)),
                      max_abs_diff(pauli_matrix(pauli_pow(px, D)), Mat::Identity(D, D))});
    }
    auto rep = verify_decompositions(D, 1e-9);
    decomp = decomp && rep.pass();
  }
  c.add(rel < 1e-9, "XZ = eta ZX, X^D = Z^D = I for D=2..5, worst " + num(rel));
  c.add(decomp, "SWAP and CP decompositions for D=2..5");
  return c;
}

Criterion torus_picture() {
  Criterion c{7, "qutrit torus picture", {}};
  struct Row {
    const char* name;
    int za, zb, xa, xb;  // thirds of a turn, -1 when absent
  };
  const Row rows[12] = {{"|0>", -1, -1, 0, 0}, {"|1>", -1, -1, 2, 1}, {"|2>", -1, -1, 1, 2},
                        {"|+>", 0, 0, -1, -1}, {"|T>", 1, 2, -1, -1}, {"|B>", 2, 1, -1, -1},
                        {"|->", 2, 2, 1, 1},   {"|-|>", 0, 1, 2, 0},  {"|-|'>", 1, 0, 0, 2},
                        {"|x>", 1, 1, 2, 2},   {"|<>", 2, 0, 1, 0},   {"|>'>", 0, 2, 0, 1}};
  auto states = enumerate_stabilizer_states(3);
  int matched = 0, shared = 0;
  for (const auto& r : rows) {
    Eigen::VectorXcd v = r.za >= 0
                             ? spider_state(Color::Z, turns(3, {Rational(r.za, 3), Rational(r.zb, 3)}))
                             : spider_state(Color::X, turns(3, {Rational(r.xa, 3), Rational(r.xb, 3)}));
    v.normalize();
    for (const auto& s : states) {
      if (std::abs(std::abs(s.vec.normalized().dot(v)) - 1) > 1e-10) continue;
      bool zok = r.za < 0 ? !s.z_coords
                          : s.z_coords && *s.z_coords == turns(3, {Rational(r.za, 3), Rational(r.zb, 3)});
      bool xok = r.xa < 0 ? !s.x_coords
                          : s.x_coords && *s.x_coords == turns(3, {Rational(r.xa, 3), Rational(r.xb, 3)});
      matched += zok && xok;
      shared += s.z_coords && s.x_coords;
    }
  }
  c.add(states.size() == 12 && matched == 12,
        std::to_string(matched) + "/12 states with exact coordinates on both tori");
  c.add(shared == 6, "tori share " + std::to_string(shared) + " states");
  auto pg = stabilizer_phase_group(3);
  c.add(pg.closed && pg.factors == std::vector<unsigned>{3, 3}, "phase group Z3 x Z3 (" +
                                                                   std::to_string(pg.elements.size()) + " elements)");
  return c;
}

Criterion dspek() {
  Criterion c{8, "DSpek structure", {}};
  for (unsigned D = 2; D <= 5; ++D) {
    auto rep = rel_structure_check(D);
    std::string failed;
    for (const auto& k : rep.checks)
      if (!k.pass) failed += " " + k.id;
    c.add(rep.pass(), "D=" + std::to_string(D) + ": laws, coherence, strong complementarity" +
                          (failed.empty() ? "" : " failed:" + failed));
  }
  auto printed = delta_x_printed(3);
  c.add(delta_x_literal(3) == printed, "delta_X by the transposition product matches the printed D=3 grid");
  c.add(true, std::string("info: delta_X by full transpose matches the printed D=3 grid: ") +
                  (spek_generator("delta_x", 3) == printed ? "yes" : "no"));
  bool eps = true, mu = true;
  std::string mu_bad;
  for (unsigned D = 2; D <= 5; ++D) {
    std::set<unsigned> want;
    for (unsigned k = 0; k < D; ++k) want.insert(k * D + 1);
    eps = eps && rel_support(rel_converse(spek_generator("eps_z", D))) == want;
    if (spek_generator("bell", D) != bell_printed(D)) {
      mu = false;
      mu_bad += " " + std::to_string(D);
    }
  }
  c.add(eps, "eps_Z = {1, D+1, ..., D(D-1)+1} for D=2..5");
  c.add(mu, "mu_D = {(y,y)} verbatim" + (mu ? std::string() : ", differs for D =" + mu_bad));
  return c;
}

Criterion toy_vs_stabilizer() {
  Criterion c{9, "3Spek vs qutrit stabilizer", {}};
  auto r = run_equivalence_checks();
  c.add(r.consistent == 144, "possibilistic consistency " + std::to_string(r.consistent) + "/144");
  c.add(r.prob_matches == 144, "exact probabilities " + std::to_string(r.prob_matches) + "/144");
  const std::vector<unsigned> z3z3{3, 3};
  c.add(r.toy_z.factors == z3z3 && r.toy_x.factors == z3z3 && r.quantum_factors == z3z3,
        "toy Z, toy X and quantum phase groups are Z3 x Z3");
  c.add(r.toy_z.isomorphic, "dictionary is a Z phase-group isomorphism");
  c.add(r.toy_x.isomorphic, "dictionary is an X phase-group isomorphism");
  c.add(r.equivariant_z == 9, "Z phase maps equivariant " + std::to_string(r.equivariant_z) + "/9");
  c.add(r.equivariant_x == 9, "X phase maps equivariant " + std::to_string(r.equivariant_x) + "/9");
  c.add(true, std::string("info: with the z_1/z_2 kets exchanged, X isomorphism ") +
                  (r.mirrored_x.isomorphic ? "holds" : "fails") + " and X equivariance is " +
                  std::to_string(r.mirrored_equivariant_x) + "/9");
  auto s = build_3spek_states();
  c.add(true, "info: printed vs derived supports: " +
                  (s.discrepancies.empty() ? std::string("agree") : s.discrepancies[0]));
  return c;
}

Criterion phase_space() {
  Criterion c{10, "phase space", {}};
  int states = 0, exact = 0;
  for (unsigned d : {3u, 5u}) {
    auto pure = enumerate_pure_states(d);
    pure.push_back(EpistemicState(d, 1, {}, {0, 0}));
    pure.push_back(EpistemicState(d, 2, {{1, 0, 0, 0}, {0, 0, 1, 1}}, {1, 2, 0, 1}));
    pure.push_back(EpistemicState(d, 2, {{0, 1, 1, 0}}, {0, 0, 0, 0}));
    for (const auto& s : pure) {
      Rational total(0);
      for (const auto& p : epistemic_distribution(s)) total += p;
      ++states;
      exact += total == Rational(1);
    }
  }
  c.add(exact == states, "distributions sum to exactly 1: " + std::to_string(exact) + "/" + std::to_string(states));
  bool rejected = false;
  try {
    EpistemicState(3, 1, {{1, 0}, {0, 1}}, {0, 0});
  } catch (const NotIsotropic&) {
    rejected = true;
  }
  c.add(rejected, "non-commuting V rejected");
  std::mt19937_64 g(10);
  int preserved = 0;
  for (int i = 0; i < 100; ++i) {
    unsigned d = i % 2 ? 3 : 5;
    int n = 1 + (i / 2) % 2;
    auto t = random_symplectic(d, n, g);
    OnticPoint u, v, zero(size_t(2 * n), 0);
    std::uniform_int_distribution<unsigned> pick(0, d - 1);
    for (int k = 0; k < 2 * n; ++k) {
      u.push_back(pick(g));
      v.push_back(pick(g));
    }
    auto lin = make_affine(d, n, t.S, zero);
    preserved += symplectic_product(d, apply_point(lin, u), apply_point(lin, v)) == symplectic_product(d, u, v);
  }
  c.add(preserved == 100, "symplectic transforms preserve brackets: " + std::to_string(preserved) + "/100");
  int agree = 0, tested = 0;
  for (unsigned d : {3u, 5u})
    for (int n = 1; n <= 2; ++n) {
      size_t count = omega_size(d, n);
      auto J = symplectic_form(d, n);
      for (size_t fi = 0; fi < count; fi += (n == 1 ? 1 : 7))
        for (size_t gi = 0; gi < count; gi += (n == 1 ? 1 : 11)) {
          auto F = point_at(d, n, fi), G = point_at(d, n, gi);
          unsigned fjg = 0;
          for (int r = 0; r < 2 * n; ++r)
            for (int k = 0; k < 2 * n; ++k) fjg = (fjg + F[r] * J[r][k] % d * G[k]) % d;
          auto m = point_at(d, n, (fi + gi) % count);
          ++tested;
          agree += poisson_bracket(d, n, linear_table(d, n, F), linear_table(d, n, G), m) == fjg;
        }
    }
  c.add(agree == tested, "Poisson bracket equals F^T J G: " + std::to_string(agree) + "/" + std::to_string(tested));
  return c;
}

}  // namespace

int main() {
  std::vector<Criterion (*)()> all{rule_soundness, k2_golden,      fourier_identities, universality, torus_group_law,
                                   stabilizer_sim, torus_picture, dspek,              toy_vs_stabilizer,     phase_space};
  int failed = 0;
  for (auto f : all) {
    Criterion c = f();
    std::printf("%s %d %s\n", c.pass() ? "PASS" : "FAIL", c.id, c.title.c_str());
    for (const auto& [ok, what] : c.parts) std::printf("    %s %s\n", ok ? "ok  " : "FAIL", what.c_str());
    std::fflush(stdout);
    failed += !c.pass();
  }
  std::printf("%d/%zu criteria pass\n", int(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
