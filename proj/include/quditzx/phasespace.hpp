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

#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "quditzx/phase.hpp"
#include "quditzx/rational.hpp"

namespace quditzx {

/** (x_1, p_1, ..., x_n, p_n) over Z_d. */
using OnticPoint = std::vector<unsigned>;
/** (a_1, b_1, ..., a_n, b_n) over Z_d: F = sum a_j X_j + b_j P_j. */
using DualVector = std::vector<unsigned>;
/** Function Omega -> Z_d, indexed by point_index. */
using FunctionalTable = std::vector<unsigned>;
using Matrix = std::vector<std::vector<unsigned>>;

class NotIsotropic : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotSymplectic : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/** Big-endian index of a point in Omega, 0 .. d^{2n}-1. */
size_t point_index(unsigned d, const OnticPoint& m);
OnticPoint point_at(unsigned d, int n, size_t index);
size_t omega_size(unsigned d, int n);

/** F(m) = sum a_j x_j + b_j p_j mod d. */
unsigned evaluate_functional(unsigned d, const DualVector& F, const OnticPoint& m);
FunctionalTable linear_table(unsigned d, int n, const DualVector& F);

/** Finite-difference bracket at m. */
unsigned poisson_bracket(unsigned d, int n, const FunctionalTable& F, const FunctionalTable& G,
                         const OnticPoint& m);
/** sum_j (a_j d_j - b_j c_j) mod d. */
unsigned symplectic_product(unsigned d, const DualVector& F, const DualVector& G);
/** Block-diagonal [[0,1],[-1,0]], the form of symplectic_product. */
Matrix symplectic_form(unsigned d, int n);

/** Basis of {m : F(m) = 0 for all F in V}; d prime. */
std::vector<OnticPoint> orthocomplement(unsigned d, int n, const std::vector<DualVector>& V);
unsigned rank_mod_p(unsigned d, const std::vector<std::vector<unsigned>>& rows);

class EpistemicState {
 public:
  /** Throws NotIsotropic when two elements of V have nonzero bracket. */
  EpistemicState(unsigned d, int n, std::vector<DualVector> V, OnticPoint v_rep);
  /** State with F_i(v) = values_i; throws if the valuation is inconsistent. */
  static EpistemicState from_valuation(unsigned d, int n, const std::vector<DualVector>& V,
                                       const std::vector<unsigned>& values);

  unsigned d() const { return d_; }
  int n() const { return n_; }
  const std::vector<DualVector>& V() const { return V_; }
  const OnticPoint& v_rep() const { return v_; }
  /** The coset V^perp + v_rep. */
  std::set<OnticPoint> support() const;

 private:
  unsigned d_;
  int n_;
  std::vector<DualVector> V_;
  OnticPoint v_;
};

std::vector<Rational> epistemic_distribution(const EpistemicState& s);

struct SymplecticAffine {
  unsigned d = 3;
  int n = 1;
  Matrix S;
  OnticPoint a;
};

/** Throws NotSymplectic unless S^T J S = J mod d. */
SymplecticAffine make_affine(unsigned d, int n, Matrix S, OnticPoint a);
bool is_symplectic(unsigned d, int n, const Matrix& S);
OnticPoint apply_point(const SymplecticAffine& t, const OnticPoint& m);
/** V' = S^{-T} V, v' = S v + a. */
EpistemicState apply_transform(const EpistemicState& s, const SymplecticAffine& t);
SymplecticAffine random_symplectic(unsigned d, int n, std::mt19937_64& rng);
Matrix mat_mul(unsigned d, const Matrix& A, const Matrix& B);
Matrix mat_transpose(const Matrix& A);
Matrix mat_inverse(unsigned d, const Matrix& A);

/** p_k = sum_m mu(m) xi_k(m); indicators must partition Omega. */
std::vector<Rational> measure_probabilities(const std::vector<Rational>& mu,
                                            const std::vector<std::vector<bool>>& indicators);
/** xi_k(m) = [F(m) = k], k = 0..d-1. */
std::vector<std::vector<bool>> functional_indicators(unsigned d, int n, const DualVector& F);

/** 1 + sum (x_i d + p_i) (d^2)^{n-1-i}; n <= 3. */
unsigned encode_ontic(unsigned d, const OnticPoint& m);
OnticPoint decode_ontic(unsigned d, int n, unsigned e);

/** All states of maximal knowledge for one system: rank-1 isotropic V with every valuation. */
std::vector<EpistemicState> enumerate_pure_states(unsigned d);

json epistemic_to_json(const EpistemicState& s);
EpistemicState epistemic_from_json(const json& j);

}  // namespace quditzx
