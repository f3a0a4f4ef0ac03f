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

#include "quditzx/synthesis.hpp"

#include <cmath>
#include <numeric>

namespace quditzx {

namespace {

constexpr double kTwoPi = 6.283185307179586;
constexpr int64_t kSnapDen = 720;

// Exact when phi is a multiple of 2 pi / 720, Approx otherwise.
Turn turn_from_radians(double phi) {
  Rational q;
  if (snap_rational(phi / kTwoPi, kSnapDen, 1e-12, q)) return Turn::exact(q.mod1());
  return Turn::from_radians(phi);
}

double norm(const StateVector& b) {
  double s = 0;
  for (const auto& x : b) s += std::norm(x);
  return std::sqrt(s);
}

Eigen::VectorXcd to_eigen(const StateVector& b) {
  Eigen::VectorXcd v(b.size());
  for (size_t i = 0; i < b.size(); ++i) v(Eigen::Index(i)) = b[i];
  return v;
}

void check_args(unsigned j, const StateVector& b) {
  if (b.size() < 2) throw std::invalid_argument("state needs at least 2 amplitudes");
  if (j >= b.size()) throw std::out_of_range("target index out of range");
  if (std::abs(norm(b) - 1.0) > 1e-12) throw std::invalid_argument("state is not unit norm");
}

ZjSynthesis finish(unsigned D, unsigned j, std::vector<cplx> angles) {
  ZjSynthesis s{};
  s.D = D;
  s.j = j;
  s.angles = std::move(angles);
  s.real = true;
  for (const auto& a : s.angles)
    if (std::abs(a.imag()) > 1e-9) s.real = false;
  if (s.real) {
    std::vector<Turn> t;
    for (const auto& a : s.angles) {
      double r = std::fmod(a.real(), kTwoPi);
      t.push_back(turn_from_radians(r < 0 ? r + kTwoPi : r));
    }
    s.phase = PhaseVector(D, t);
  }
  return s;
}

}  // namespace

StateVector make_state(const std::vector<cplx>& amplitudes) {
  if (amplitudes.size() < 2) throw std::invalid_argument("state needs at least 2 amplitudes");
  if (std::abs(norm(amplitudes) - 1.0) > 1e-12) throw std::invalid_argument("state is not unit norm");
  return amplitudes;
}

StateVector random_state(unsigned D, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  StateVector b(D);
  for (auto& x : b) x = {n(rng), n(rng)};
  double s = norm(b);
  for (auto& x : b) x /= s;
  return b;
}

Degenerate::Degenerate(const StateVector& b, const std::string& why)
    : std::runtime_error("degenerate state: " + why), b_(b) {}

PhaseVector synth_xj(unsigned D, unsigned j, double phi) {
  if (j >= D) throw std::out_of_range("target index out of range");
  std::vector<Turn> e(D - 1, Turn());
  if (j == 0) {
    Turn t = turn_from_radians(std::fmod(std::fmod(-phi, kTwoPi) + kTwoPi, kTwoPi));
    std::fill(e.begin(), e.end(), t);
  } else {
    e[j - 1] = turn_from_radians(std::fmod(std::fmod(phi, kTwoPi) + kTwoPi, kTwoPi));
  }
  return PhaseVector(D, e);
}

Eigen::MatrixXcd xj_target(unsigned D, unsigned j, double phi) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(D, D);
  m(j, j) = std::polar(1.0, phi);
  return m;
}

std::vector<cplx> qutrit_closed_form(unsigned j, const StateVector& b) {
  if (b.size() != 3) throw std::invalid_argument("closed forms need D = 3");
  const cplx e = root_of_unity(3);
  const cplx b0 = b[0], b1 = b[1], b2 = b[2];
  const cplx s = b0 + b1 + b2;
  const cplx i(0, 1);
  cplx den, n1, n2;
  switch (j) {
    case 0:
      den = e * (b0 * b0 * (-e) * (e + 1.0) - b0 * (b1 + b2) + b1 * b1 + b1 * b2 * e * (e + 1.0) + b2 * b2);
      n1 = s * (b0 * e - b1 * (e + 1.0) + b2);
      n2 = s * (b0 * e + b1 - b2 * (e + 1.0));
      break;
    case 1:
      den = e * (b0 * b0 + b0 * (b2 * e * (e + 1.0) - b1) - (b1 * e + b1 - b2) * (b1 * e + b2));
      n1 = s * (b0 + b1 * e - b2 * (e + 1.0));
      n2 = -s * (b0 * e + b0 - b1 * e - b2);
      break;
    case 2:
      den = e * (b0 * b0 + b0 * (b1 * e * (e + 1.0) - b2) + (b1 + b2 * e) * (b1 - b2 * (e + 1.0)));
      n1 = -s * (b0 * e + b0 - b1 - b2 * e);
      n2 = s * (b0 - b1 * (e + 1.0) + b2 * e);
      break;
    default: throw std::out_of_range("target index out of range");
  }
  if (std::abs(den) < 1e-9) throw Degenerate(b, "denominator vanishes");
  std::vector<cplx> out;
  for (const cplx& n : {n1, n2}) {
    cplx arg = n / den;
    double m = std::abs(arg);
    if (m < 1e-6 || m > 1e6) throw Degenerate(b, "log argument modulus out of range");
    out.push_back(-i * std::log(arg));
  }
  return out;
}

ZjSynthesis synth_zj_generic(unsigned j, const StateVector& b) {
  check_args(j, b);
  const unsigned D = unsigned(b.size());
  // Lambda_X(alpha) b = (1/D) sum_k u_k eta^{rk} B_k with B_k = sum_c eta^{-ck} b_c,
  // so u_k B_k = lambda eta^{-jk}.
  std::vector<cplx> B(D);
  for (unsigned k = 0; k < D; ++k)
    for (unsigned c = 0; c < D; ++c) B[k] += root_of_unity(D, -(long long)(c * k)) * b[c];
  for (unsigned k = 0; k < D; ++k)
    if (std::abs(B[k]) < 1e-9) throw Degenerate(b, "no overlap with Fourier mode " + std::to_string(k));
  std::vector<cplx> angles;
  const cplx i(0, 1);
  for (unsigned k = 1; k < D; ++k) {
    cplx u = root_of_unity(D, -(long long)(j * k)) * B[0] / B[k];
    if (std::abs(u) < 1e-6 || std::abs(u) > 1e6) throw Degenerate(b, "phase modulus out of range");
    angles.push_back(-i * std::log(u));
  }
  return finish(D, j, angles);
}

ZjSynthesis synth_zj(unsigned j, const StateVector& b) {
  check_args(j, b);
  if (b.size() == 3) return finish(3, j, qutrit_closed_form(j, b));
  return synth_zj_generic(j, b);
}

ZjResidual zj_residual(const ZjSynthesis& s, const StateVector& b) {
  Eigen::MatrixXcd L = lambda_x_complex(s.D, s.angles);
  Eigen::VectorXcd v = L * to_eigen(b);
  ZjResidual r;
  r.lambda = v(s.j);
  Eigen::VectorXcd p = v;
  p(s.j) = 0;
  r.proportional = p.norm();
  r.unit_phase = std::sqrt(std::max(0.0, v.squaredNorm() - 2 * std::abs(r.lambda) + 1));
  r.unitarity = (L.adjoint() * L - Eigen::MatrixXcd::Identity(s.D, s.D)).cwiseAbs().maxCoeff();
  return r;
}

DenseOperator gate_fourier(unsigned D) { return generator_matrix(Generator::Fourier, D); }
DenseOperator gate_cnot(unsigned D) { return generator_matrix(Generator::Cnot, D); }
DenseOperator gate_swap(unsigned D) { return generator_matrix(Generator::Swap, D); }

DenseOperator gate_cp(unsigned D) {
  DenseOperator op = DenseOperator::identity(D, 2);
  for (unsigned j = 0; j < D; ++j)
    for (unsigned k = 0; k < D; ++k) op.mat(j * D + k, j * D + k) = root_of_unity(D, j * k);
  return op;
}

DenseOperator gate_sq(unsigned D, unsigned q) {
  if (std::gcd(q, D) != 1)
    throw NotInvertible("S_q needs q invertible mod D (q=" + std::to_string(q) +
                        ", D=" + std::to_string(D) + ")");
  DenseOperator op = DenseOperator::identity(D, 1);
  op.mat.setZero();
  for (unsigned j = 0; j < D; ++j) op.mat(j, (j * q) % D) = 1.0;
  return op;
}

bool DecompositionReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

DecompositionReport verify_decompositions(unsigned D, double tol) {
  if (D < 2) throw std::invalid_argument("dimension must be at least 2");
  DecompositionReport rep{D, {}};
  auto add = [&](const std::string& name, const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    double dev = max_abs_diff(a, b);
    rep.checks.push_back({name, dev < tol, dev});
  };
  const auto I = DenseOperator::identity(D, 1);
  const auto F = gate_fourier(D);
  const auto cnot = gate_cnot(D);
  const auto swap = gate_swap(D);
  const auto cnot_ba = op_compose(swap, op_compose(cnot, swap));
  const auto F2 = op_tensor(op_compose(F, F), I);
  auto rhs = op_compose(cnot, op_compose(op_adjoint(cnot_ba), op_compose(cnot, F2)));
  add("swap_decomposition", swap.mat, rhs.mat);
  const auto IF = op_tensor(I, F);
  add("cp_decomposition", gate_cp(D).mat, op_compose(op_adjoint(IF), op_compose(cnot, IF)).mat);
  for (unsigned q = 0; q < D; ++q) {
    bool inv = std::gcd(q, D) == 1;
    std::string name = "s_q" + std::to_string(q);
    try {
      auto S = gate_sq(D, q);
      Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(D, D);
      double dev = max_abs_diff(S.mat.adjoint() * S.mat, id);
      rep.checks.push_back({name + "_unitary", inv && dev < tol, dev});
    } catch (const NotInvertible&) {
      rep.checks.push_back({name + "_rejected", !inv, 0.0});
    }
  }
  return rep;
}

json synthesis_to_json(const ZjSynthesis& s) {
  json a = json::array();
  for (const auto& x : s.angles) a.push_back({x.real(), x.imag()});
  json j{{"D", s.D}, {"j", s.j}, {"angles", a}, {"real", s.real}};
  if (s.phase) j["phase"] = phase_to_json(*s.phase);
  return j;
}

json decomposition_to_json(const DecompositionReport& r) {
  json c = json::array();
  for (const auto& x : r.checks)
    c.push_back({{"name", x.name}, {"pass", x.pass}, {"deviation", x.deviation}});
  return {{"D", r.D}, {"pass", r.pass()}, {"checks", c}};
}

}  // namespace quditzx
