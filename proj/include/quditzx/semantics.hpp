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
#include <string>
#include <vector>

#include "quditzx/diagram.hpp"

namespace quditzx {

/** Linear map (C^D)^{in} -> (C^D)^{out}; the leftmost wire is the most significant digit. */
struct DenseOperator {
  unsigned D = 2;
  int in_arity = 0;
  int out_arity = 0;
  Eigen::MatrixXcd mat;

  static DenseOperator identity(unsigned D, int wires = 1);
  static DenseOperator scalar(unsigned D, cplx s);
};

/** eta = exp(2 pi i / D). */
cplx root_of_unity(unsigned D, long long power = 1);

DenseOperator op_compose(const DenseOperator& after, const DenseOperator& before);
DenseOperator op_tensor(const DenseOperator& a, const DenseOperator& b);
DenseOperator op_adjoint(const DenseOperator& a);
DenseOperator op_scale(const DenseOperator& a, cplx s);
/** The wire permutation that swaps two adjacent wires. */
DenseOperator op_swap(unsigned D);

enum class Generator {
  Id, Swap, Fourier, FourierDag, Ket0, KetPlus, EpsX, EpsZ, DeltaX, DeltaZ, Cnot
};

Generator generator_from_name(const std::string& s);
std::string generator_name(Generator g);
DenseOperator generator_matrix(Generator g, unsigned D);

enum class Color { Z, X };

/** c_j = sum_k e^{i alpha_k} eta^{jk}, alpha_0 = 0. */
std::vector<cplx> c_coefficients(const PhaseVector& alpha);
/** Same, for complex angles (entries alpha_1..alpha_{D-1}). */
std::vector<cplx> c_coefficients(unsigned D, const std::vector<cplx>& alpha);

DenseOperator lambda_matrix(Color c, const PhaseVector& alpha);
/** (1/D) circulant of the c-coefficients of complex angles. */
Eigen::MatrixXcd lambda_x_complex(unsigned D, const std::vector<cplx>& alpha);

/** Spider state with one output leg and the given phase, in Fig. 2 scalars. */
Eigen::VectorXcd spider_state(Color c, const PhaseVector& alpha);

DenseOperator evaluate(const Diagram& d);
/** Oracle: explicit sum over every assignment of edge values. */
DenseOperator evaluate_reference(const Diagram& d);
/** Greedy pairwise contraction, smallest intermediate first. */
DenseOperator evaluate_contract(const Diagram& d);

/** s with A = s B entrywise within tol, taking s from B's largest entry. */
std::optional<cplx> equal_up_to_scalar(const DenseOperator& A,
                                       const DenseOperator& B, double tol);
std::optional<cplx> equal_up_to_scalar(const Eigen::MatrixXcd& A,
                                       const Eigen::MatrixXcd& B, double tol);
double max_abs_diff(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B);

json operator_to_json(const DenseOperator& op);

struct CheckReport {
  std::string id;
  unsigned D = 0;
  bool pass = false;
  double deviation = 0.0;
  std::string detail;
};

std::vector<std::string> structure_check_ids();
CheckReport structure_check(const std::string& id, unsigned D);
json check_to_json(const CheckReport& r);

}  // namespace quditzx
