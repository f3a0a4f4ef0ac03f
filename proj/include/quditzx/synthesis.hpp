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

#include <Eigen/Dense>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "quditzx/phase.hpp"
#include "quditzx/semantics.hpp"

namespace quditzx {

/** Unit-norm state (b_0, ..., b_{D-1}). */
using StateVector = std::vector<cplx>;

StateVector make_state(const std::vector<cplx>& amplitudes);  // throws if not unit norm
StateVector random_state(unsigned D, std::mt19937_64& rng);

class Degenerate : public std::runtime_error {
 public:
  Degenerate(const StateVector& b, const std::string& why);
  const StateVector& state() const { return b_; }

 private:
  StateVector b_;
};

class NotInvertible : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/** Phase vector for Lambda_Z realizing the diagonal gate e^{i phi} on |j>. */
PhaseVector synth_xj(unsigned D, unsigned j, double phi);
/** diag(1, .., e^{i phi} at j, .., 1). */
Eigen::MatrixXcd xj_target(unsigned D, unsigned j, double phi);

struct ZjSynthesis {
  unsigned D = 0;
  unsigned j = 0;
  std::vector<cplx> angles;          // alpha_1..alpha_{D-1}, possibly complex
  bool real = false;                 // every angle real within 1e-9
  std::optional<PhaseVector> phase;  // set when real
};

/** Angles with Lambda_X(alpha) b proportional to e_j; closed forms for D = 3. */
ZjSynthesis synth_zj(unsigned j, const StateVector& b);
/** Deconvolution route, any D. */
ZjSynthesis synth_zj_generic(unsigned j, const StateVector& b);
/** The qutrit closed forms, without the generic-b test. */
std::vector<cplx> qutrit_closed_form(unsigned j, const StateVector& b);

struct ZjResidual {
  cplx lambda;          // component of Lambda_X(alpha) b along e_j
  double proportional;  // ||v - lambda e_j||
  double unit_phase;    // min over phi of ||v - e^{i phi} e_j||
  double unitarity;     // ||L^dag L - I||_max
};
ZjResidual zj_residual(const ZjSynthesis& s, const StateVector& b);

DenseOperator gate_fourier(unsigned D);
DenseOperator gate_cnot(unsigned D);
DenseOperator gate_cp(unsigned D);
DenseOperator gate_swap(unsigned D);
/** S_q = sum_j |j><jq|; throws NotInvertible unless gcd(q, D) = 1. */
DenseOperator gate_sq(unsigned D, unsigned q);

struct DecompositionCheck {
  std::string name;
  bool pass = false;
  double deviation = 0.0;
};

struct DecompositionReport {
  unsigned D = 0;
  std::vector<DecompositionCheck> checks;
  bool pass() const;
};

DecompositionReport verify_decompositions(unsigned D, double tol = 1e-9);

json synthesis_to_json(const ZjSynthesis& s);
json decomposition_to_json(const DecompositionReport& r);

}  // namespace quditzx
