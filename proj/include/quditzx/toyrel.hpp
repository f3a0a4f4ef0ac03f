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
#include <map>
#include <set>
#include <string>
#include <vector>

#include "quditzx/phase.hpp"

namespace quditzx {

/**
 * Relation between m-fold and n-fold products of {1..D^2}.
 * Tuples are indexed big-endian from 0; element e of {1..D^2} is digit e-1.
 */
class Rel {
 public:
  Rel(unsigned D, int m, int n);

  unsigned dim() const { return D_; }
  int source_arity() const { return m_; }
  int target_arity() const { return n_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  bool get(size_t target, size_t source) const { return pairs_.count({target, source}) != 0; }
  void set(size_t target, size_t source);
  size_t count() const { return pairs_.size(); }
  /** Related (target, source) pairs in order. */
  const std::set<std::pair<size_t, size_t>>& pairs() const { return pairs_; }

  bool operator==(const Rel& o) const {
    return D_ == o.D_ && m_ == o.m_ && n_ == o.n_ && pairs_ == o.pairs_;
  }
  bool operator!=(const Rel& o) const { return !(*this == o); }

 private:
  unsigned D_;
  int m_, n_;
  size_t rows_, cols_;
  std::set<std::pair<size_t, size_t>> pairs_;
};

class RelMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/** Element (x, p) of Z_D x Z_D encoded as x*D + p + 1. */
unsigned encode_xp(unsigned D, unsigned x, unsigned p);
std::pair<unsigned, unsigned> decode_xp(unsigned D, unsigned e);

Rel rel_identity(unsigned D, int arity = 1);
Rel rel_swap(unsigned D);
Rel rel_compose(const Rel& after, const Rel& before);
Rel rel_product(const Rel& a, const Rel& b);
Rel rel_converse(const Rel& r);

/** Relation {star} ~ support, for 1-based elements. */
Rel rel_state(unsigned D, const std::set<unsigned>& support);
/** Support of a state relation {star} ~ S, 1-based. */
std::set<unsigned> rel_support(const Rel& state);

/** Bijection on {1..D^2}, stored 0-based. */
struct Permutation {
  std::vector<unsigned> image;
};
Rel perm_rel(unsigned D, const Permutation& p);
/** (x, p) <-> (p, x). */
Permutation transpose_perm(unsigned D);
/** Product of transpositions sigma_(k+1, kD+1), k = 1..D-1. */
Permutation sigma_perm(unsigned D);

/** delta_z, eps_z, delta_x, eps_x, bell, mixed. */
Rel spek_generator(const std::string& name, unsigned D);
std::vector<std::string> spek_generator_names();

/** Printed grid value bD + ((c - r) mod D) + 1, read as a relation. */
Rel delta_z_printed(unsigned D);
/** The printed delta_X grid pattern: ((y,z) cell) = (z_x - y_x, p) when y_p = z_p. */
Rel delta_x_printed(unsigned D);
/** delta_z conjugated by the transpositions (k+1, kD+1) only. */
Rel delta_x_literal(unsigned D);
/** star ~ {(i, i)}. */
Rel bell_printed(unsigned D);

struct RelCheck {
  std::string id;
  bool pass = false;
  std::string detail;
};

struct RelReport {
  unsigned D = 0;
  std::vector<RelCheck> checks;
  bool pass() const;
};

/** Laws for (delta_z, eps_z) and (delta_x, eps_x), coherence, strong complementarity. */
RelReport rel_structure_check(unsigned D);
/** Same laws for an arbitrary (delta, eps) pair, prefixed by `tag`. */
std::vector<RelCheck> observable_laws(const Rel& delta, const Rel& eps, const std::string& tag);

/** Lambda(psi) = delta^dagger (psi x 1). */
Rel phase_map(const Rel& delta, const Rel& psi);

json rel_to_json(const Rel& r);
Rel rel_from_json(const json& j);
json rel_report_to_json(const RelReport& r);

}  // namespace quditzx
