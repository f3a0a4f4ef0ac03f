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

#include "quditzx/equivalence.hpp"

#include <algorithm>
#include <cmath>

#include "quditzx/phasespace.hpp"
#include "quditzx/stabilizer.hpp"
#include "quditzx/toyrel.hpp"

namespace quditzx {

namespace {

constexpr unsigned D = 3;

const char* kBases[] = {"z", "x", "xz", "xz^2"};

std::string state_name(const std::string& basis, unsigned k) {
  return (basis.size() > 1 ? "(" + basis + ")" : basis) + "_" + std::to_string(k);
}

PhaseVector thirds(int a, int b) {
  return PhaseVector::from_turns(D, {Rational(a, 3), Rational(b, 3)});
}

Eigen::VectorXcd spider_vector(Color c, const PhaseVector& p) {
  Eigen::VectorXcd v = spider_state(c, p);
  return v / v.norm();
}

int find_support(const std::vector<DictEntry>& d, const std::set<unsigned>& s) {
  for (size_t i = 0; i < d.size(); ++i)
    if (d[i].support == s) return int(i);
  return -1;
}

int find_vector(const std::vector<DictEntry>& d, const Eigen::VectorXcd& v) {
  Eigen::VectorXcd u = v / v.norm();
  for (size_t i = 0; i < d.size(); ++i)
    if (std::abs(std::abs(d[i].vec.dot(u)) - 1.0) < 1e-9) return int(i);
  return -1;
}

bool unbiased_for(const std::set<unsigned>& s, const std::vector<std::set<unsigned>>& classical) {
  for (const auto& c : classical) {
    std::vector<unsigned> meet;
    std::set_intersection(s.begin(), s.end(), c.begin(), c.end(), std::back_inserter(meet));
    if (meet.size() != 1) return false;
  }
  return true;
}

GroupSide toy_group(const std::vector<DictEntry>& dict, const Rel& delta, const std::string& classical_basis,
                    bool z_side) {
  GroupSide g;
  std::vector<std::set<unsigned>> classical;
  for (const auto& e : dict)
    if (e.toy.rfind(classical_basis + "_", 0) == 0) classical.push_back(e.support);
  for (size_t i = 0; i < dict.size(); ++i)
    if (unbiased_for(dict[i].support, classical)) g.elements.push_back(int(i));
  auto mult = [&](int a, int b) {
    Rel r = rel_compose(phase_map(delta, rel_state(D, dict[size_t(a)].support)),
                        rel_state(D, dict[size_t(b)].support));
    return find_support(dict, rel_support(r));
  };
  g.closed = true;
  g.isomorphic = true;
  auto coords = [&](int i) {
    return z_side ? z_coordinates(dict[size_t(i)].vec) : x_coordinates(dict[size_t(i)].vec);
  };
  int identity = -1;
  for (int a : g.elements) {
    auto ca = coords(a);
    if (ca && ca->is_zero()) identity = a;
    for (int b : g.elements) {
      int c = mult(a, b);
      if (c < 0 || std::find(g.elements.begin(), g.elements.end(), c) == g.elements.end()) {
        g.closed = false;
        g.isomorphic = false;
        continue;
      }
      auto cb = coords(b), cc = coords(c);
      if (!ca || !cb || !cc || phase_add(*ca, *cb) != *cc) g.isomorphic = false;
    }
  }
  if (!g.closed || identity < 0) {
    g.isomorphic = false;
    return g;
  }
  std::vector<unsigned> orders;
  for (int a : g.elements) {
    unsigned k = 1;
    int p = a;
    while (p != identity && k <= g.elements.size()) {
      p = mult(p, a);
      ++k;
    }
    orders.push_back(k);
  }
  g.factors = abelian_factors(orders);
  return g;
}

int equivariant_maps(const std::vector<DictEntry>& dict, const GroupSide& g, const Rel& delta, bool z_side,
                     int& total) {
  int good = 0;
  total = 0;
  for (int psi : g.elements) {
    ++total;
    Rel L = phase_map(delta, rel_state(D, dict[size_t(psi)].support));
    auto phase = z_side ? z_coordinates(dict[size_t(psi)].vec) : x_coordinates(dict[size_t(psi)].vec);
    if (!phase) continue;
    Eigen::MatrixXcd Q = lambda_matrix(z_side ? Color::Z : Color::X, *phase).mat;
    bool ok = true;
    for (size_t s = 0; s < dict.size(); ++s) {
      int toy = find_support(dict, rel_support(rel_compose(L, rel_state(D, dict[s].support))));
      int quantum = find_vector(dict, Q * dict[s].vec);
      if (toy < 0 || toy != quantum) ok = false;
    }
    good += ok;
  }
  return good;
}

}  // namespace

std::vector<SpekState> printed_3spek_states() {
  const std::set<unsigned> sup[4][3] = {{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}},
                                        {{1, 4, 7}, {2, 5, 8}, {3, 6, 9}},
                                        {{1, 6, 8}, {2, 4, 9}, {3, 5, 7}},
                                        {{1, 5, 9}, {2, 6, 7}, {3, 4, 6}}};
  std::vector<SpekState> out;
  for (unsigned b = 0; b < 4; ++b)
    for (unsigned k = 0; k < 3; ++k) out.push_back({state_name(kBases[b], k), kBases[b], k, sup[b][k]});
  return out;
}

SpekStates build_3spek_states() {
  SpekStates s;
  s.printed = printed_3spek_states();
  // Functionals X, P, X+P, 2X+P label the z, x, xz, xz^2 bases; the valuation is the index.
  const DualVector dirs[4] = {{1, 0}, {0, 1}, {1, 1}, {2, 1}};
  for (unsigned b = 0; b < 4; ++b)
    for (unsigned k = 0; k < 3; ++k) {
      auto st = EpistemicState::from_valuation(D, 1, {dirs[b]}, {k});
      std::set<unsigned> sup;
      for (const auto& m : st.support()) sup.insert(encode_ontic(D, m));
      s.derived.push_back({state_name(kBases[b], k), kBases[b], k, sup});
    }
  std::set<std::set<unsigned>> all;
  for (const auto& st : enumerate_pure_states(D)) {
    std::set<unsigned> sup;
    for (const auto& m : st.support()) sup.insert(encode_ontic(D, m));
    all.insert(sup);
  }
  for (size_t i = 0; i < s.printed.size(); ++i) {
    if (s.printed[i].support != s.derived[i].support)
      s.discrepancies.push_back(s.printed[i].name + ": printed " + json(s.printed[i].support).dump() +
                                ", derived " + json(s.derived[i].support).dump());
    if (!all.count(s.derived[i].support))
      s.discrepancies.push_back(s.derived[i].name + ": not an enumerated epistemic state");
  }
  s.agree = s.discrepancies.empty();
  return s;
}

std::vector<DictEntry> build_dictionary() {
  struct Row {
    const char* ket;
    Color colour;
    int a, b;
  };
  const Row rows[12] = {{"|0>", Color::X, 0, 0},  {"|1>", Color::X, 2, 1},  {"|2>", Color::X, 1, 2},
                        {"|+>", Color::Z, 0, 0},  {"|T>", Color::Z, 1, 2},  {"|B>", Color::Z, 2, 1},
                        {"|->", Color::Z, 2, 2},  {"|-|>", Color::Z, 0, 1}, {"|-|'>", Color::Z, 1, 0},
                        {"|x>", Color::Z, 1, 1},  {"|<>", Color::Z, 2, 0},  {"|>'>", Color::Z, 0, 2}};
  auto states = build_3spek_states().derived;
  std::vector<DictEntry> d;
  for (size_t i = 0; i < 12; ++i) {
    PhaseVector p = thirds(rows[i].a, rows[i].b);
    d.push_back({states[i].name, states[i].support, rows[i].ket, rows[i].colour, p,
                 spider_vector(rows[i].colour, p)});
  }
  return d;
}

bool EquivalenceReport::pass() const {
  const std::vector<unsigned> z3z3{3, 3};
  return consistent == int(pairs.size()) && prob_matches == int(pairs.size()) && pairs.size() == 144 &&
         toy_z.closed && toy_x.closed && toy_z.factors == z3z3 && toy_x.factors == z3z3 &&
         quantum_factors == z3z3 && toy_z.isomorphic && toy_x.isomorphic &&
         equivariant_z == phase_maps_z && equivariant_x == phase_maps_x && phase_maps_z == 9 &&
         phase_maps_x == 9;
}

EquivalenceReport run_equivalence_checks() {
  EquivalenceReport r;
  const auto dict = build_dictionary();
  for (size_t i = 0; i < dict.size(); ++i)
    for (size_t j = 0; j < dict.size(); ++j) {
      PairRow row;
      row.state = int(i);
      row.effect = int(j);
      std::vector<unsigned> meet;
      std::set_intersection(dict[i].support.begin(), dict[i].support.end(), dict[j].support.begin(),
                            dict[j].support.end(), std::back_inserter(meet));
      row.toy_possible = !meet.empty();
      row.toy_prob = Rational(int64_t(meet.size()), int64_t(dict[i].support.size()));
      cplx amp = dict[j].vec.dot(dict[i].vec);
      row.overlap = std::abs(amp);
      row.quantum_prob = std::norm(amp);
      row.consistent = row.toy_possible == (row.overlap > 1e-10);
      Rational q;
      row.prob_match = snap_rational(row.quantum_prob, 3, 1e-10, q) && q == row.toy_prob;
      r.consistent += row.consistent;
      r.prob_matches += row.prob_match;
      r.pairs.push_back(row);
    }
  const Rel dz = spek_generator("delta_z", D), dx = spek_generator("delta_x", D);
  r.toy_z = toy_group(dict, dz, "z", true);
  r.toy_x = toy_group(dict, dx, "x", false);
  r.quantum_factors = stabilizer_phase_group(D).factors;
  r.equivariant_z = equivariant_maps(dict, r.toy_z, dz, true, r.phase_maps_z);
  r.equivariant_x = equivariant_maps(dict, r.toy_x, dx, false, r.phase_maps_x);
  // Diagnostic: the same X-side checks with z_1 and z_2 paired with |2> and |1>.
  auto mirrored = dict;
  std::swap(mirrored[1].vec, mirrored[2].vec);
  int total = 0;
  r.mirrored_x = toy_group(mirrored, dx, "x", false);
  r.mirrored_equivariant_x = equivariant_maps(mirrored, r.mirrored_x, dx, false, total);
  return r;
}

json spek_states_to_json(const SpekStates& s) {
  auto list = [](const std::vector<SpekState>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back({{"name", x.name}, {"support", x.support}});
    return a;
  };
  return {{"printed", list(s.printed)}, {"derived", list(s.derived)}, {"agree", s.agree},
          {"discrepancies", s.discrepancies}};
}

json dictionary_to_json(const std::vector<DictEntry>& d) {
  json a = json::array();
  for (const auto& e : d)
    a.push_back({{"toy", e.toy},
                 {"support", e.support},
                 {"ket", e.ket},
                 {"spider", e.colour == Color::Z ? "green" : "red"},
                 {"phase", phase_to_json(e.phases)}});
  return a;
}

json equivalence_to_json(const EquivalenceReport& r) {
  auto group = [](const GroupSide& g) {
    return json{{"elements", g.elements}, {"closed", g.closed}, {"factors", g.factors},
                {"isomorphic", g.isomorphic}};
  };
  json pairs = json::array();
  for (const auto& p : r.pairs)
    pairs.push_back({{"state", p.state},
                     {"effect", p.effect},
                     {"toy_possible", p.toy_possible},
                     {"overlap", p.overlap},
                     {"toy_prob", p.toy_prob.str()},
                     {"quantum_prob", p.quantum_prob},
                     {"consistent", p.consistent},
                     {"prob_match", p.prob_match}});
  return {{"pass", r.pass()},
          {"consistent", r.consistent},
          {"prob_matches", r.prob_matches},
          {"total_pairs", r.pairs.size()},
          {"toy_z", group(r.toy_z)},
          {"toy_x", group(r.toy_x)},
          {"quantum_factors", r.quantum_factors},
          {"equivariant_z", r.equivariant_z},
          {"equivariant_x", r.equivariant_x},
          {"phase_maps_z", r.phase_maps_z},
          {"phase_maps_x", r.phase_maps_x},
          {"mirrored_x", group(r.mirrored_x)},
          {"mirrored_equivariant_x", r.mirrored_equivariant_x},
          {"pairs", pairs}};
}

}  // namespace quditzx
