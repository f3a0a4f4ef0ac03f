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

#include "quditzx/toyrel.hpp"

#include <algorithm>
#include <iterator>
#include <numeric>

namespace quditzx {

namespace {

size_t power(size_t b, int e) {
  size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

size_t pair_index(unsigned D, unsigned e1, unsigned e2) { return size_t(e1 - 1) * D * D + (e2 - 1); }

}  // namespace

Rel::Rel(unsigned D, int m, int n) : D_(D), m_(m), n_(n) {
  if (D < 2) throw std::invalid_argument("dimension must be at least 2");
  if (m < 0 || n < 0) throw std::invalid_argument("negative arity");
  if (m + n > 12) throw std::length_error("relation arity too large");
  rows_ = power(size_t(D) * D, n);
  cols_ = power(size_t(D) * D, m);
}

void Rel::set(size_t target, size_t source) {
  if (target >= rows_ || source >= cols_) throw std::out_of_range("relation index out of range");
  pairs_.insert({target, source});
}

unsigned encode_xp(unsigned D, unsigned x, unsigned p) { return (x % D) * D + (p % D) + 1; }

std::pair<unsigned, unsigned> decode_xp(unsigned D, unsigned e) {
  if (e < 1 || e > D * D) throw std::out_of_range("element out of range");
  return {(e - 1) / D, (e - 1) % D};
}

Rel rel_identity(unsigned D, int arity) {
  Rel r(D, arity, arity);
  for (size_t i = 0; i < r.rows(); ++i) r.set(i, i);
  return r;
}

Rel rel_swap(unsigned D) {
  Rel r(D, 2, 2);
  const size_t N = size_t(D) * D;
  for (size_t a = 0; a < N; ++a)
    for (size_t b = 0; b < N; ++b) r.set(b * N + a, a * N + b);
  return r;
}

Rel rel_compose(const Rel& after, const Rel& before) {
  if (after.dim() != before.dim()) throw RelMismatch("compose: dimensions differ");
  if (after.source_arity() != before.target_arity())
    throw RelMismatch("compose: arity " + std::to_string(before.target_arity()) + " feeds arity " +
                      std::to_string(after.source_arity()));
  Rel r(after.dim(), before.source_arity(), after.target_arity());
  std::map<size_t, std::vector<size_t>> by_source;
  for (const auto& [c, b] : after.pairs()) by_source[b].push_back(c);
  for (const auto& [b, a] : before.pairs()) {
    auto it = by_source.find(b);
    if (it == by_source.end()) continue;
    for (size_t c : it->second) r.set(c, a);
  }
  return r;
}

Rel rel_product(const Rel& a, const Rel& b) {
  if (a.dim() != b.dim()) throw RelMismatch("product: dimensions differ");
  Rel r(a.dim(), a.source_arity() + b.source_arity(), a.target_arity() + b.target_arity());
  for (const auto& [r1, c1] : a.pairs())
    for (const auto& [r2, c2] : b.pairs()) r.set(r1 * b.rows() + r2, c1 * b.cols() + c2);
  return r;
}

Rel rel_converse(const Rel& x) {
  Rel r(x.dim(), x.target_arity(), x.source_arity());
  for (const auto& [t, s] : x.pairs()) r.set(s, t);
  return r;
}

Rel rel_state(unsigned D, const std::set<unsigned>& support) {
  Rel r(D, 0, 1);
  for (unsigned e : support) {
    if (e < 1 || e > D * D) throw std::out_of_range("element out of range");
    r.set(e - 1, 0);
  }
  return r;
}

std::set<unsigned> rel_support(const Rel& s) {
  if (s.source_arity() != 0 || s.target_arity() != 1) throw RelMismatch("not a single-system state");
  std::set<unsigned> out;
  for (const auto& [t, src] : s.pairs()) out.insert(unsigned(t + 1));
  return out;
}

Rel perm_rel(unsigned D, const Permutation& p) {
  const unsigned N = D * D;
  if (p.image.size() != N) throw RelMismatch("permutation size differs from D^2");
  std::vector<bool> hit(N, false);
  Rel r(D, 1, 1);
  for (unsigned i = 0; i < N; ++i) {
    if (p.image[i] >= N || hit[p.image[i]]) throw std::invalid_argument("not a bijection");
    hit[p.image[i]] = true;
    r.set(p.image[i], i);
  }
  return r;
}

Permutation transpose_perm(unsigned D) {
  Permutation p;
  for (unsigned e = 1; e <= D * D; ++e) {
    auto [x, q] = decode_xp(D, e);
    p.image.push_back(encode_xp(D, q, x) - 1);
  }
  return p;
}

Permutation sigma_perm(unsigned D) {
  Permutation p;
  p.image.resize(D * D);
  std::iota(p.image.begin(), p.image.end(), 0u);
  for (unsigned k = 1; k < D; ++k) std::swap(p.image[k], p.image[k * D]);
  return p;
}

namespace {

Rel delta_from(unsigned D, unsigned (*cell)(unsigned D, unsigned b, unsigned r, unsigned c)) {
  // cell(y=(b,r), z=(b,c)) for the Z-type block-diagonal grids
  Rel d(D, 1, 2);
  for (unsigned b = 0; b < D; ++b)
    for (unsigned r = 0; r < D; ++r)
      for (unsigned c = 0; c < D; ++c) {
        unsigned x = cell(D, b, r, c);
        d.set(pair_index(D, encode_xp(D, b, r), encode_xp(D, b, c)), x - 1);
      }
  return d;
}

unsigned additive_cell(unsigned D, unsigned b, unsigned r, unsigned c) { return encode_xp(D, b, r + c); }
unsigned printed_cell(unsigned D, unsigned b, unsigned r, unsigned c) {
  return encode_xp(D, b, (c + D - r) % D);
}

Rel conjugate_delta(const Rel& delta, const Permutation& p) {
  Rel P = perm_rel(delta.dim(), p);
  return rel_compose(rel_product(P, P), rel_compose(delta, P));
}

Rel unit_state(const Rel& eps) { return rel_converse(eps); }

Rel build_eps(unsigned D, bool z) {
  Rel e(D, 1, 0);
  for (unsigned a = 0; a < D; ++a) e.set(0, (z ? encode_xp(D, a, 0) : encode_xp(D, 0, a)) - 1);
  return e;
}

RelCheck law(const std::string& id, const Rel& lhs, const Rel& rhs) {
  RelCheck c{id, lhs == rhs, ""};
  if (!c.pass) {
    std::vector<std::pair<size_t, size_t>> diff;
    std::set_symmetric_difference(lhs.pairs().begin(), lhs.pairs().end(), rhs.pairs().begin(),
                                  rhs.pairs().end(), std::back_inserter(diff));
    c.detail = std::to_string(diff.size()) + " entries differ";
  }
  return c;
}

}  // namespace

Rel delta_z_printed(unsigned D) { return delta_from(D, printed_cell); }

Rel delta_x_printed(unsigned D) {
  Rel d(D, 1, 2);
  for (unsigned x1 = 0; x1 < D; ++x1)
    for (unsigned x2 = 0; x2 < D; ++x2)
      for (unsigned p = 0; p < D; ++p)
        d.set(pair_index(D, encode_xp(D, x1, p), encode_xp(D, x2, p)),
              encode_xp(D, (x2 + D - x1) % D, p) - 1);
  return d;
}

Rel delta_x_literal(unsigned D) { return conjugate_delta(delta_from(D, additive_cell), sigma_perm(D)); }

Rel bell_printed(unsigned D) {
  Rel r(D, 0, 2);
  for (unsigned e = 1; e <= D * D; ++e) r.set(pair_index(D, e, e), 0);
  return r;
}

std::vector<std::string> spek_generator_names() {
  return {"delta_z", "eps_z", "delta_x", "eps_x", "bell", "mixed"};
}

Rel spek_generator(const std::string& name, unsigned D) {
  if (name == "delta_z") return delta_from(D, additive_cell);
  if (name == "eps_z") return build_eps(D, true);
  if (name == "delta_x") return conjugate_delta(delta_from(D, additive_cell), transpose_perm(D));
  if (name == "eps_x") return build_eps(D, false);
  if (name == "bell") return rel_compose(spek_generator("delta_z", D), unit_state(build_eps(D, true)));
  if (name == "mixed") {
    std::set<unsigned> all;
    for (unsigned e = 1; e <= D * D; ++e) all.insert(e);
    return rel_state(D, all);
  }
  throw std::invalid_argument("unknown generator '" + name + "'");
}

std::vector<RelCheck> observable_laws(const Rel& delta, const Rel& eps, const std::string& tag) {
  const unsigned D = delta.dim();
  const Rel id = rel_identity(D);
  const Rel dd = rel_converse(delta);
  std::vector<RelCheck> out;
  out.push_back(law("assoc_" + tag, rel_compose(rel_product(delta, id), delta),
                    rel_compose(rel_product(id, delta), delta)));
  out.push_back(law("comm_" + tag, rel_compose(rel_swap(D), delta), delta));
  out.push_back(law("unit_left_" + tag, rel_compose(rel_product(eps, id), delta), id));
  out.push_back(law("unit_right_" + tag, rel_compose(rel_product(id, eps), delta), id));
  out.push_back(law("frobenius_" + tag, rel_compose(rel_product(dd, id), rel_product(id, delta)),
                    rel_compose(delta, dd)));
  out.push_back(law("special_" + tag, rel_compose(dd, delta), id));
  return out;
}

bool RelReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const RelCheck& c) { return c.pass; });
}

RelReport rel_structure_check(unsigned D) {
  RelReport rep{D, {}};
  const Rel dz = spek_generator("delta_z", D), ez = spek_generator("eps_z", D);
  const Rel dx = spek_generator("delta_x", D), ex = spek_generator("eps_x", D);
  for (auto& c : observable_laws(dz, ez, "z")) rep.checks.push_back(c);
  for (auto& c : observable_laws(dx, ex, "x")) rep.checks.push_back(c);
  const Rel uz = unit_state(ez), ux = unit_state(ex);
  rep.checks.push_back(law("coherence_x_copies_z_unit", rel_compose(dx, uz), rel_product(uz, uz)));
  rep.checks.push_back(law("coherence_z_copies_x_unit", rel_compose(dz, ux), rel_product(ux, ux)));
  const Rel id = rel_identity(D);
  const Rel middle = rel_product(rel_product(id, rel_swap(D)), id);
  const Rel lhs = rel_compose(rel_product(rel_converse(dz), rel_converse(dz)),
                              rel_compose(middle, rel_product(dx, dx)));
  rep.checks.push_back(law("strong_complementarity", lhs, rel_compose(dx, rel_converse(dz))));
  const Rel tau = perm_rel(D, transpose_perm(D));
  rep.checks.push_back(law("involution", rel_compose(rel_product(tau, tau), rel_compose(dx, tau)), dz));
  return rep;
}

Rel phase_map(const Rel& delta, const Rel& psi) {
  return rel_compose(rel_converse(delta), rel_product(psi, rel_identity(delta.dim())));
}

json rel_to_json(const Rel& r) {
  json pairs = json::array();
  std::set<std::pair<size_t, size_t>> by_source;
  for (const auto& [t, s] : r.pairs()) by_source.insert({s, t});
  for (const auto& [s, t] : by_source) pairs.push_back({s + 1, t + 1});
  return {{"D", r.dim()}, {"m", r.source_arity()}, {"n", r.target_arity()}, {"pairs", pairs}};
}

Rel rel_from_json(const json& j) {
  Rel r(j.at("D").get<unsigned>(), j.at("m").get<int>(), j.at("n").get<int>());
  for (const auto& p : j.at("pairs")) {
    size_t s = p.at(0).get<size_t>(), t = p.at(1).get<size_t>();
    if (s < 1 || s > r.cols() || t < 1 || t > r.rows()) throw std::out_of_range("pair index out of range");
    r.set(t - 1, s - 1);
  }
  return r;
}

json rel_report_to_json(const RelReport& r) {
  json c = json::array();
  for (const auto& x : r.checks) c.push_back({{"id", x.id}, {"pass", x.pass}, {"detail", x.detail}});
  return {{"D", r.D}, {"pass", r.pass()}, {"checks", c}};
}

}  // namespace quditzx
