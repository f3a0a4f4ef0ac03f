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
#include <string>
#include <variant>
#include <vector>

#include "quditzx/phase.hpp"
#include "quditzx/rational.hpp"

namespace quditzx {

bool is_prime(unsigned D);

/** sqrt(eta)^lambda X^{x_1} Z^{z_1} (x) ... (x) X^{x_n} Z^{z_n}. */
struct PauliOp {
  unsigned D = 2;
  unsigned lambda = 0;  // mod 2D
  std::vector<unsigned> x, z;  // mod D

  int n() const { return int(x.size()); }
  bool operator==(const PauliOp& o) const {
    return D == o.D && lambda == o.lambda && x == o.x && z == o.z;
  }
  bool is_identity() const;
  std::string str() const;
};

class ShapeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

PauliOp make_pauli(unsigned D, long long lambda, const std::vector<long long>& x,
                   const std::vector<long long>& z);
PauliOp pauli_identity(unsigned D, int n);
/** X^x Z^z on one wire. */
PauliOp pauli_single(unsigned D, int n, int wire, long long x, long long z);
/** The Hermitian-order normalization sqrt(eta)^{(D-1) x.z} X^x Z^z, whose D-th power is I. */
PauliOp pauli_observable(unsigned D, const std::vector<long long>& x, const std::vector<long long>& z);

PauliOp pauli_mul(const PauliOp& p, const PauliOp& q);
PauliOp pauli_pow(const PauliOp& p, unsigned m);
/** s with p q = eta^s q p. */
unsigned pauli_commutator(const PauliOp& p, const PauliOp& q);
Eigen::MatrixXcd pauli_matrix(const PauliOp& p);

enum class GateKind { F, Sq, CNOT, CP, SWAP };
std::string gate_name(GateKind g);

struct CliffordGate {
  GateKind kind;
  std::vector<int> wires;
  unsigned q = 1;
};

struct Measurement {
  PauliOp observable;
  std::string basis;  // label only
};

using CircuitOp = std::variant<CliffordGate, Measurement>;

struct Circuit {
  int n = 1;
  unsigned D = 3;
  std::vector<CircuitOp> ops;
};

class InvalidGate : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void validate_gate(const CliffordGate& g, int n, unsigned D);
/** Dense matrix of the gate on its own wires. */
Eigen::MatrixXcd gate_dense(const CliffordGate& g, unsigned D);
/** U P U^dagger for a single gate, by closed-form images of X_k and Z_k. */
PauliOp conjugate(const PauliOp& p, const CliffordGate& g);

struct Tableau {
  int n = 1;
  unsigned D = 3;
  std::vector<PauliOp> generators;

  /** Stabilizers Z_1, ..., Z_n of |0...0>. */
  static Tableau zero_state(int n, unsigned D);
};

std::vector<std::string> tableau_violations(const Tableau& t);
Tableau apply_clifford(const Tableau& t, const CliffordGate& g);

/** Exact outcome distribution: one-hot when determined, else uniform. */
std::vector<Rational> measurement_distribution(const Tableau& t, const PauliOp& obs);
/** Outcome k means eigenvalue eta^k of the observable. */
std::pair<unsigned, Tableau> measure(const Tableau& t, const PauliOp& obs, std::mt19937_64& rng);
std::pair<unsigned, Tableau> measure(const Tableau& t, const PauliOp& obs, uint64_t seed);
/** Post-measurement tableau for a chosen outcome; throws if the outcome has probability 0. */
Tableau measure_outcome(const Tableau& t, const PauliOp& obs, unsigned k);

/** Embeds a k-qudit matrix acting on `wires` into n qudits. */
Eigen::MatrixXcd embed(const Eigen::MatrixXcd& U, const std::vector<int>& wires, int n, unsigned D);
/** (1/D) sum_t eta^{-kt} W^t. */
Eigen::MatrixXcd projector(const PauliOp& obs, unsigned k);
std::vector<double> dense_distribution(const Eigen::VectorXcd& psi, const PauliOp& obs);

struct OracleResult {
  Eigen::VectorXcd state;
  std::vector<unsigned> outcomes;
  std::vector<std::vector<double>> distributions;
};

/** Dense simulation from |0...0>; n <= 3, D <= 5. */
OracleResult statevector_oracle(const Circuit& c, uint64_t seed);

struct CrossCheck {
  int measurements = 0;
  double max_prob_diff = 0.0;
  double max_stabilizer_residual = 0.0;
  std::vector<unsigned> outcomes;
  bool pass = false;
};

/** Runs the tableau and the dense oracle side by side on the tableau's outcomes. */
CrossCheck cross_check(const Circuit& c, uint64_t seed, double tol = 1e-9);

Circuit random_circuit(int n, unsigned D, int length, std::mt19937_64& rng);

struct StabilizerState {
  std::string basis;  // "Z", "X", "XZ", "XZ^2", ...
  unsigned k = 0;     // eigenvalue eta^k of the basis observable
  PauliOp observable;
  Eigen::VectorXcd vec;
  std::optional<PhaseVector> z_coords;  // Z-spider phases, when unbiased for Z
  std::optional<PhaseVector> x_coords;  // X-spider phases, when unbiased for X
};

std::vector<StabilizerState> enumerate_stabilizer_states(unsigned D);
/** Z-spider phases of v (arg v_j / v_0), when v is unbiased for Z. */
std::optional<PhaseVector> z_coordinates(const Eigen::VectorXcd& v);
/** X-spider phases of v, read from F^dagger v. */
std::optional<PhaseVector> x_coordinates(const Eigen::VectorXcd& v);

struct PhaseGroup {
  unsigned D = 0;
  std::vector<PhaseVector> elements;
  bool closed = false;
  std::vector<unsigned> factors;  // cyclic prime-power factors, ascending
};

/** Order of a phase vector under phase_add. */
unsigned phase_order(const PhaseVector& p);
/** Prime-power cyclic factors of an abelian group from its element orders. */
std::vector<unsigned> abelian_factors(const std::vector<unsigned>& orders);
PhaseGroup stabilizer_phase_group(unsigned D);

json pauli_to_json(const PauliOp& p);
PauliOp pauli_from_json(unsigned D, const json& j);
json tableau_to_json(const Tableau& t);
/** Accepts a bare op list or {"n","D","gates"}; n and D fall back to the defaults. */
Circuit circuit_from_json(const json& j, int n_default, unsigned D_default);
json circuit_to_json(const Circuit& c);
json cross_check_to_json(const CrossCheck& c);
json state_to_json(const StabilizerState& s);
json phase_group_to_json(const PhaseGroup& g);

}  // namespace quditzx
