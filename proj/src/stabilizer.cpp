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

#include "quditzx/stabilizer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "quditzx/diagram.hpp"
#include "quditzx/semantics.hpp"
#include "quditzx/synthesis.hpp"

namespace quditzx {

namespace {

constexpr double kPi = 3.141592653589793;

unsigned umod(long long a, long long m) {
  long long r = a % m;
  return unsigned(r < 0 ? r + m : r);
}

unsigned inv_mod(unsigned a, unsigned p) {
  unsigned r = 1, b = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = unsigned((unsigned long long)r * b % p);
    b = unsigned((unsigned long long)b * b % p);
    e >>= 1;
  }
  return r;
}

void require_prime(unsigned D) {
  if (!is_prime(D))
    throw std::invalid_argument("dimension " + std::to_string(D) + " is not prime");
}

void same_shape(const PauliOp& p, const PauliOp& q) {
  if (p.D != q.D || p.n() != q.n())
    throw ShapeMismatch("Pauli operators differ in dimension or qudit count");
}

// Symplectic vector (x_1..x_n, z_1..z_n).
std::vector<unsigned> symp(const PauliOp& p) {
  std::vector<unsigned> v = p.x;
  v.insert(v.end(), p.z.begin(), p.z.end());
  return v;
}

// Coefficients m with sum_i m_i cols[i] = target mod p, if any.
std::optional<std::vector<unsigned>> solve_mod(const std::vector<std::vector<unsigned>>& cols,
                                               const std::vector<unsigned>& target, unsigned p) {
  const size_t rows = target.size(), g = cols.size();
  std::vector<std::vector<unsigned>> a(rows, std::vector<unsigned>(g + 1));
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < g; ++c) a[r][c] = cols[c][r] % p;
    a[r][g] = target[r] % p;
  }
  std::vector<int> pivot_col;
  size_t row = 0;
  for (size_t c = 0; c < g && row < rows; ++c) {
    size_t piv = row;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[row]);
    unsigned inv = inv_mod(a[row][c], p);
    for (auto& v : a[row]) v = unsigned((unsigned long long)v * inv % p);
    for (size_t r = 0; r < rows; ++r) {
      if (r == row || a[r][c] == 0) continue;
      unsigned f = a[r][c];
      for (size_t k = 0; k <= g; ++k)
        a[r][k] = umod((long long)a[r][k] - (long long)f * a[row][k], p);
    }
    pivot_col.push_back(int(c));
    ++row;
  }
  for (size_t r = row; r < rows; ++r)
    if (a[r][g] != 0) return std::nullopt;
  std::vector<unsigned> m(g, 0);
  for (size_t r = 0; r < pivot_col.size(); ++r) m[size_t(pivot_col[r])] = a[r][g];
  return m;
}

size_t rank_mod(const std::vector<std::vector<unsigned>>& cols, unsigned p) {
  if (cols.empty()) return 0;
  size_t rank = 0;
  for (size_t k = 1; k <= cols.size(); ++k) {
    std::vector<std::vector<unsigned>> first(cols.begin(), cols.begin() + long(k) - 1);
    if (k == 1 || !solve_mod(first, cols[k - 1], p)) {
      bool zero = std::all_of(cols[k - 1].begin(), cols[k - 1].end(), [](unsigned v) { return v == 0; });
      if (!zero) ++rank;
    }
  }
  return rank;
}

Eigen::MatrixXcd single_xz(unsigned D, unsigned x, unsigned z) {
  Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(D, D), Z = Eigen::MatrixXcd::Zero(D, D);
  for (unsigned j = 0; j < D; ++j) {
    X((j + D - 1) % D, j) = 1.0;
    Z(j, j) = root_of_unity(D, j);
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(D, D);
  for (unsigned i = 0; i < x; ++i) m = m * X;
  for (unsigned i = 0; i < z; ++i) m = m * Z;
  return m;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

// Image of X_k (x = true) or Z_k under conjugation by g.
PauliOp image(const CliffordGate& g, unsigned D, int n, int k, bool x) {
  auto single = [&](int w, long long a, long long b) { return pauli_single(D, n, w, a, b); };
  const auto& w = g.wires;
  auto gen = [&](int wire) { return x ? single(wire, 1, 0) : single(wire, 0, 1); };
  if (std::find(w.begin(), w.end(), k) == w.end()) return gen(k);
  switch (g.kind) {
    case GateKind::F:
      return x ? single(k, 0, -1) : single(k, 1, 0);
    case GateKind::Sq:
      return x ? single(k, inv_mod(g.q % D, D), 0) : single(k, 0, g.q);
    case GateKind::CNOT: {
      int a = w[0], b = w[1];
      if (x && k == a) return pauli_mul(single(a, 1, 0), single(b, -1, 0));
      if (!x && k == b) return pauli_mul(single(a, 0, 1), single(b, 0, 1));
      return gen(k);
    }
    case GateKind::CP: {
      if (!x) return gen(k);
      int other = k == w[0] ? w[1] : w[0];
      return pauli_mul(single(k, 1, 0), single(other, 0, -1));
    }
    case GateKind::SWAP: {
      int other = k == w[0] ? w[1] : w[0];
      return gen(other);
    }
  }
  throw std::logic_error("unreachable");
}

unsigned outcome_from(const PauliOp& obs, const PauliOp& g) {
  unsigned diff = umod((long long)obs.lambda - g.lambda, 2 * obs.D);
  if (diff % 2) throw std::invalid_argument("observable is not normalized (eigenvalues not powers of eta)");
  return (diff / 2) % obs.D;
}

void check_observable(const Tableau& t, const PauliOp& obs) {
  if (obs.D != t.D || obs.n() != t.n) throw ShapeMismatch("observable shape differs from tableau");
  if (!pauli_pow(obs, obs.D).is_identity())
    throw std::invalid_argument("observable is not normalized: W^D != I");
}

struct Analysis {
  int anti = -1;                      // first generator not commuting with obs
  std::optional<unsigned> determined;  // outcome when all commute
};

Analysis analyse(const Tableau& t, const PauliOp& obs) {
  check_observable(t, obs);
  require_prime(t.D);
  Analysis a;
  for (size_t i = 0; i < t.generators.size(); ++i)
    if (pauli_commutator(t.generators[i], obs) != 0) {
      a.anti = int(i);
      return a;
    }
  std::vector<std::vector<unsigned>> cols;
  for (const auto& g : t.generators) cols.push_back(symp(g));
  auto m = solve_mod(cols, symp(obs), t.D);
  if (!m) throw std::logic_error("commuting observable is outside the stabilizer group");
  PauliOp G = pauli_identity(t.D, t.n);
  for (size_t i = 0; i < cols.size(); ++i) G = pauli_mul(G, pauli_pow(t.generators[i], (*m)[i]));
  a.determined = outcome_from(obs, G);
  return a;
}

}  // namespace

bool is_prime(unsigned D) {
  if (D < 2) return false;
  for (unsigned f = 2; f * f <= D; ++f)
    if (D % f == 0) return false;
  return true;
}

bool PauliOp::is_identity() const {
  return lambda == 0 && std::all_of(x.begin(), x.end(), [](unsigned v) { return v == 0; }) &&
         std::all_of(z.begin(), z.end(), [](unsigned v) { return v == 0; });
}

std::string PauliOp::str() const {
  std::string s = "w^" + std::to_string(lambda);
  for (int k = 0; k < n(); ++k)
    s += " X" + std::to_string(x[k]) + "Z" + std::to_string(z[k]);
  return s;
}

PauliOp make_pauli(unsigned D, long long lambda, const std::vector<long long>& x,
                   const std::vector<long long>& z) {
  if (D < 2) throw std::invalid_argument("dimension must be at least 2");
  if (x.size() != z.size()) throw ShapeMismatch("x and z lengths differ");
  PauliOp p;
  p.D = D;
  p.lambda = umod(lambda, 2 * D);
  for (size_t i = 0; i < x.size(); ++i) {
    p.x.push_back(umod(x[i], D));
    p.z.push_back(umod(z[i], D));
  }
  return p;
}

PauliOp pauli_identity(unsigned D, int n) {
  return make_pauli(D, 0, std::vector<long long>(size_t(n), 0), std::vector<long long>(size_t(n), 0));
}

PauliOp pauli_single(unsigned D, int n, int wire, long long x, long long z) {
  if (wire < 0 || wire >= n) throw std::out_of_range("wire out of range");
  std::vector<long long> xs(size_t(n), 0), zs(size_t(n), 0);
  xs[size_t(wire)] = x;
  zs[size_t(wire)] = z;
  return make_pauli(D, 0, xs, zs);
}

PauliOp pauli_observable(unsigned D, const std::vector<long long>& x, const std::vector<long long>& z) {
  PauliOp p = make_pauli(D, 0, x, z);
  long long xz = 0;
  for (int k = 0; k < p.n(); ++k) xz += (long long)p.x[k] * p.z[k];
  p.lambda = umod((long long)(D - 1) * xz, 2 * D);
  return p;
}

PauliOp pauli_mul(const PauliOp& p, const PauliOp& q) {
  same_shape(p, q);
  const unsigned D = p.D;
  PauliOp r = p;
  long long lam = (long long)p.lambda + q.lambda;
  // Z^b X^c = eta^{-bc} X^c Z^b
  for (int k = 0; k < p.n(); ++k) {
    lam -= 2LL * p.z[k] * q.x[k];
    r.x[k] = (p.x[k] + q.x[k]) % D;
    r.z[k] = (p.z[k] + q.z[k]) % D;
  }
  r.lambda = umod(lam, 2 * D);
  return r;
}

PauliOp pauli_pow(const PauliOp& p, unsigned m) {
  PauliOp r = pauli_identity(p.D, p.n());
  for (unsigned i = 0; i < m; ++i) r = pauli_mul(r, p);
  return r;
}

unsigned pauli_commutator(const PauliOp& p, const PauliOp& q) {
  same_shape(p, q);
  long long s = 0;
  for (int k = 0; k < p.n(); ++k) s += (long long)p.x[k] * q.z[k] - (long long)p.z[k] * q.x[k];
  return umod(s, p.D);
}

Eigen::MatrixXcd pauli_matrix(const PauliOp& p) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (int k = 0; k < p.n(); ++k) m = kron(m, single_xz(p.D, p.x[k], p.z[k]));
  return std::polar(1.0, kPi * p.lambda / p.D) * m;
}

std::string gate_name(GateKind g) {
  switch (g) {
    case GateKind::F: return "F";
    case GateKind::Sq: return "Sq";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CP: return "CP";
    case GateKind::SWAP: return "SWAP";
  }
  return "?";
}

void validate_gate(const CliffordGate& g, int n, unsigned D) {
  size_t want = (g.kind == GateKind::F || g.kind == GateKind::Sq) ? 1 : 2;
  if (g.wires.size() != want)
    throw InvalidGate(gate_name(g.kind) + " needs " + std::to_string(want) + " wire(s)");
  for (int w : g.wires)
    if (w < 0 || w >= n) throw InvalidGate(gate_name(g.kind) + ": wire " + std::to_string(w) + " out of range");
  if (want == 2 && g.wires[0] == g.wires[1]) throw InvalidGate(gate_name(g.kind) + ": wires must differ");
  if (g.kind == GateKind::Sq && std::gcd(g.q, D) != 1)
    throw InvalidGate("Sq: q=" + std::to_string(g.q) + " is not invertible mod " + std::to_string(D));
}

Eigen::MatrixXcd gate_dense(const CliffordGate& g, unsigned D) {
  switch (g.kind) {
    case GateKind::F: return gate_fourier(D).mat;
    case GateKind::Sq: return gate_sq(D, g.q).mat;
    case GateKind::CNOT: return gate_cnot(D).mat;
    case GateKind::CP: return gate_cp(D).mat;
    case GateKind::SWAP: return gate_swap(D).mat;
  }
  throw std::logic_error("unreachable");
}

PauliOp conjugate(const PauliOp& p, const CliffordGate& g) {
  validate_gate(g, p.n(), p.D);
  PauliOp r = pauli_identity(p.D, p.n());
  r.lambda = p.lambda;
  for (int k = 0; k < p.n(); ++k) {
    r = pauli_mul(r, pauli_pow(image(g, p.D, p.n(), k, true), p.x[k]));
    r = pauli_mul(r, pauli_pow(image(g, p.D, p.n(), k, false), p.z[k]));
  }
  return r;
}

Tableau Tableau::zero_state(int n, unsigned D) {
  require_prime(D);
  if (n < 1) throw std::invalid_argument("need at least one qudit");
  Tableau t{n, D, {}};
  for (int k = 0; k < n; ++k) t.generators.push_back(pauli_single(D, n, k, 0, 1));
  return t;
}

std::vector<std::string> tableau_violations(const Tableau& t) {
  std::vector<std::string> v;
  if (!is_prime(t.D)) v.push_back("dimension is not prime");
  if (int(t.generators.size()) > t.n) v.push_back("more generators than qudits");
  for (size_t i = 0; i < t.generators.size(); ++i) {
    const auto& g = t.generators[i];
    if (g.D != t.D || g.n() != t.n) {
      v.push_back("generator " + std::to_string(i) + " has the wrong shape");
      return v;
    }
    if (!pauli_pow(g, t.D).is_identity())
      v.push_back("generator " + std::to_string(i) + " has D-th power != I");
    for (size_t j = i + 1; j < t.generators.size(); ++j)
      if (pauli_commutator(g, t.generators[j]) != 0)
        v.push_back("generators " + std::to_string(i) + " and " + std::to_string(j) + " do not commute");
  }
  if (is_prime(t.D)) {
    std::vector<std::vector<unsigned>> cols;
    for (const auto& g : t.generators) cols.push_back(symp(g));
    if (rank_mod(cols, t.D) != cols.size()) v.push_back("generators are not independent");
  }
  return v;
}

Tableau apply_clifford(const Tableau& t, const CliffordGate& g) {
  require_prime(t.D);
  validate_gate(g, t.n, t.D);
  Tableau r = t;
  for (auto& p : r.generators) p = conjugate(p, g);
  return r;
}

std::vector<Rational> measurement_distribution(const Tableau& t, const PauliOp& obs) {
  Analysis a = analyse(t, obs);
  std::vector<Rational> d(t.D, Rational(0));
  if (a.determined) {
    d[*a.determined] = Rational(1);
  } else {
    for (auto& x : d) x = Rational(1, t.D);
  }
  return d;
}

Tableau measure_outcome(const Tableau& t, const PauliOp& obs, unsigned k) {
  Analysis a = analyse(t, obs);
  if (k >= t.D) throw std::out_of_range("outcome out of range");
  if (a.determined) {
    if (*a.determined != k)
      throw std::invalid_argument("outcome " + std::to_string(k) + " has probability 0");
    return t;
  }
  Tableau r = t;
  const size_t j = size_t(a.anti);
  const PauliOp gj = t.generators[j];
  const unsigned sj_inv = inv_mod(pauli_commutator(gj, obs), t.D);
  for (size_t i = 0; i < r.generators.size(); ++i) {
    if (i == j) continue;
    unsigned si = pauli_commutator(r.generators[i], obs);
    if (si == 0) continue;
    unsigned m = umod(-(long long)si * sj_inv, t.D);
    r.generators[i] = pauli_mul(r.generators[i], pauli_pow(gj, m));
  }
  PauliOp w = obs;
  w.lambda = umod((long long)obs.lambda - 2LL * k, 2 * t.D);
  r.generators[j] = w;
  return r;
}

std::pair<unsigned, Tableau> measure(const Tableau& t, const PauliOp& obs, std::mt19937_64& rng) {
  Analysis a = analyse(t, obs);
  unsigned k = a.determined ? *a.determined : unsigned(rng() % t.D);
  return {k, measure_outcome(t, obs, k)};
}

std::pair<unsigned, Tableau> measure(const Tableau& t, const PauliOp& obs, uint64_t seed) {
  std::mt19937_64 rng(seed);
  return measure(t, obs, rng);
}

Eigen::MatrixXcd embed(const Eigen::MatrixXcd& U, const std::vector<int>& wires, int n, unsigned D) {
  const size_t k = wires.size();
  long long N = 1, K = 1;
  for (int i = 0; i < n; ++i) N *= D;
  for (size_t i = 0; i < k; ++i) K *= D;
  if (U.rows() != K || U.cols() != K) throw ShapeMismatch("matrix size does not match wire count");
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(N, N);
  std::vector<unsigned> dig(static_cast<size_t>(n));
  for (long long col = 0; col < N; ++col) {
    long long c = col;
    for (int i = n - 1; i >= 0; --i) {
      dig[size_t(i)] = unsigned(c % D);
      c /= D;
    }
    long long sub = 0;
    for (int w : wires) sub = sub * D + dig[size_t(w)];
    for (long long r = 0; r < K; ++r) {
      cplx v = U(r, sub);
      if (v == cplx(0)) continue;
      auto d2 = dig;
      long long rr = r;
      for (size_t i = k; i-- > 0;) {
        d2[size_t(wires[i])] = unsigned(rr % D);
        rr /= D;
      }
      long long row = 0;
      for (unsigned x : d2) row = row * D + x;
      M(row, col) += v;
    }
  }
  return M;
}

Eigen::MatrixXcd projector(const PauliOp& obs, unsigned k) {
  const unsigned D = obs.D;
  Eigen::MatrixXcd W = pauli_matrix(obs);
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(W.rows(), W.cols());
  Eigen::MatrixXcd Wt = Eigen::MatrixXcd::Identity(W.rows(), W.cols());
  for (unsigned t = 0; t < D; ++t) {
    P += root_of_unity(D, -(long long)(k * t)) * Wt;
    Wt = Wt * W;
  }
  return P / double(D);
}

std::vector<double> dense_distribution(const Eigen::VectorXcd& psi, const PauliOp& obs) {
  std::vector<double> d;
  for (unsigned k = 0; k < obs.D; ++k) d.push_back((projector(obs, k) * psi).squaredNorm());
  return d;
}

OracleResult statevector_oracle(const Circuit& c, uint64_t seed) {
  if (c.n < 1 || c.n > 3 || c.D < 2 || c.D > 5)
    throw std::length_error("dense oracle size cap exceeded (n <= 3, D <= 5)");
  long long N = 1;
  for (int i = 0; i < c.n; ++i) N *= c.D;
  OracleResult r;
  r.state = Eigen::VectorXcd::Zero(N);
  r.state(0) = 1.0;
  std::mt19937_64 rng(seed);
  for (const auto& op : c.ops) {
    if (auto g = std::get_if<CliffordGate>(&op)) {
      validate_gate(*g, c.n, c.D);
      r.state = embed(gate_dense(*g, c.D), g->wires, c.n, c.D) * r.state;
    } else {
      const auto& m = std::get<Measurement>(op);
      auto dist = dense_distribution(r.state, m.observable);
      std::discrete_distribution<unsigned> pick(dist.begin(), dist.end());
      unsigned k = pick(rng);
      r.state = projector(m.observable, k) * r.state;
      r.state /= r.state.norm();
      r.outcomes.push_back(k);
      r.distributions.push_back(dist);
    }
  }
  return r;
}

CrossCheck cross_check(const Circuit& c, uint64_t seed, double tol) {
  require_prime(c.D);
  OracleResult dense;
  Circuit empty{c.n, c.D, {}};
  dense = statevector_oracle(empty, seed);
  Eigen::VectorXcd psi = dense.state;
  Tableau t = Tableau::zero_state(c.n, c.D);
  std::mt19937_64 rng(seed);
  CrossCheck r;
  bool ok = true;
  for (const auto& op : c.ops) {
    if (auto g = std::get_if<CliffordGate>(&op)) {
      t = apply_clifford(t, *g);
      psi = embed(gate_dense(*g, c.D), g->wires, c.n, c.D) * psi;
      continue;
    }
    const auto& m = std::get<Measurement>(op);
    auto exact = measurement_distribution(t, m.observable);
    auto approx = dense_distribution(psi, m.observable);
    for (unsigned k = 0; k < c.D; ++k)
      r.max_prob_diff = std::max(r.max_prob_diff, std::abs(exact[k].to_double() - approx[k]));
    auto [k, t2] = measure(t, m.observable, rng);
    t = t2;
    r.outcomes.push_back(k);
    ++r.measurements;
    if (approx[k] < 1e-12) {
      ok = false;
      break;
    }
    psi = projector(m.observable, k) * psi;
    psi /= psi.norm();
  }
  for (const auto& g : t.generators)
    r.max_stabilizer_residual =
        std::max(r.max_stabilizer_residual, (pauli_matrix(g) * psi - psi).norm());
  r.pass = ok && r.max_prob_diff < tol && r.max_stabilizer_residual < tol &&
           tableau_violations(t).empty();
  return r;
}

Circuit random_circuit(int n, unsigned D, int length, std::mt19937_64& rng) {
  Circuit c{n, D, {}};
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int i = 0; i < length; ++i) {
    int kind = uni(0, n == 1 ? 2 : 5);
    if (kind == 2 || kind == 5) {
      std::vector<long long> x(static_cast<size_t>(n)), z(static_cast<size_t>(n));
      do {
        for (int k = 0; k < n; ++k) {
          x[size_t(k)] = uni(0, int(D) - 1);
          z[size_t(k)] = uni(0, int(D) - 1);
        }
      } while (std::all_of(x.begin(), x.end(), [](long long v) { return v == 0; }) &&
               std::all_of(z.begin(), z.end(), [](long long v) { return v == 0; }));
      c.ops.push_back(Measurement{pauli_observable(D, x, z), "pauli"});
      continue;
    }
    CliffordGate g;
    if (kind == 0) {
      g = {GateKind::F, {uni(0, n - 1)}, 1};
    } else if (kind == 1) {
      unsigned q;
      do q = unsigned(uni(1, int(D) - 1));
      while (std::gcd(q, D) != 1);
      g = {GateKind::Sq, {uni(0, n - 1)}, q};
    } else {
      int a = uni(0, n - 1), b;
      do b = uni(0, n - 1);
      while (b == a);
      GateKind k = kind == 3 ? GateKind::CNOT : (uni(0, 1) ? GateKind::CP : GateKind::SWAP);
      g = {k, {a, b}, 1};
    }
    c.ops.push_back(g);
  }
  return c;
}

namespace {

std::optional<PhaseVector> coords(const Eigen::VectorXcd& v0, unsigned D) {
  Eigen::VectorXcd v = v0 / v0.norm();
  for (Eigen::Index j = 0; j < v.size(); ++j)
    if (std::abs(std::norm(v(j)) - 1.0 / D) > 1e-9) return std::nullopt;
  std::vector<Turn> e;
  for (unsigned j = 1; j < D; ++j) {
    double turns = std::arg(v(j) / v(0)) / (2 * kPi);
    if (turns < 0) turns += 1;
    Rational q;
    if (snap_rational(turns, 4 * D, 1e-9, q))
      e.push_back(Turn::exact(q.mod1()));
    else
      e.push_back(Turn::from_radians(turns * 2 * kPi));
  }
  return PhaseVector(D, e);
}

}  // namespace

std::optional<PhaseVector> z_coordinates(const Eigen::VectorXcd& v) { return coords(v, unsigned(v.size())); }

std::optional<PhaseVector> x_coordinates(const Eigen::VectorXcd& v) {
  const unsigned D = unsigned(v.size());
  return coords(gate_fourier(D).mat.adjoint() * v, D);
}

std::vector<StabilizerState> enumerate_stabilizer_states(unsigned D) {
  require_prime(D);
  std::vector<std::pair<std::string, std::pair<int, int>>> bases{{"Z", {0, 1}}, {"X", {1, 0}}};
  for (unsigned m = 1; m < D; ++m)
    bases.push_back({m == 1 ? "XZ" : "XZ^" + std::to_string(m), {1, int(m)}});
  const Eigen::MatrixXcd Fd = gate_fourier(D).mat.adjoint();
  std::vector<StabilizerState> out;
  for (const auto& [name, xz] : bases) {
    PauliOp W = pauli_observable(D, {xz.first}, {xz.second});
    for (unsigned k = 0; k < D; ++k) {
      Eigen::MatrixXcd P = projector(W, k);
      Eigen::Index best = 0;
      P.colwise().norm().maxCoeff(&best);
      Eigen::VectorXcd v = P.col(best);
      v /= v.norm();
      for (Eigen::Index j = 0; j < v.size(); ++j)
        if (std::abs(v(j)) > 1e-9) {
          v *= std::polar(1.0, -std::arg(v(j)));
          break;
        }
      StabilizerState s{name, k, W, v, coords(v, D), coords(Fd * v, D)};
      out.push_back(s);
    }
  }
  return out;
}

unsigned phase_order(const PhaseVector& p) {
  unsigned long long l = 1;
  for (const auto& t : p.entries()) l = std::lcm(l, (unsigned long long)t.turns().den());
  return unsigned(l);
}

std::vector<unsigned> abelian_factors(const std::vector<unsigned>& orders) {
  const unsigned N = unsigned(orders.size());
  std::vector<unsigned> out;
  unsigned rest = N;
  for (unsigned p = 2; rest > 1; ++p) {
    if (rest % p) continue;
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    // r_k = log_p #{x : x^{p^k} = 1} - log_p #{x : x^{p^{k-1}} = 1} counts factors of exponent >= k.
    auto logp = [p](unsigned c) {
      unsigned l = 0;
      while (c > 1) {
        c /= p;
        ++l;
      }
      return l;
    };
    std::vector<unsigned> r{0};
    unsigned pk = 1, prev = 0;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      unsigned cnt = 0;
      for (unsigned o : orders) {
        unsigned pp = 1, oo = o;
        while (oo % p == 0) {
          oo /= p;
          pp *= p;
        }
        if (pk % pp == 0) ++cnt;
      }
      unsigned l = logp(cnt);
      r.push_back(l - prev);
      prev = l;
    }
    r.push_back(0);
    pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (unsigned i = 0; i < r[k] - r[k + 1]; ++i) out.push_back(pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

PhaseGroup stabilizer_phase_group(unsigned D) {
  require_prime(D);
  PhaseGroup g;
  g.D = D;
  for (const auto& s : enumerate_stabilizer_states(D))
    if (s.z_coords && std::find(g.elements.begin(), g.elements.end(), *s.z_coords) == g.elements.end())
      g.elements.push_back(*s.z_coords);
  g.closed = true;
  for (const auto& a : g.elements)
    for (const auto& b : g.elements)
      if (std::find(g.elements.begin(), g.elements.end(), phase_add(a, b)) == g.elements.end())
        g.closed = false;
  std::vector<unsigned> orders;
  for (const auto& e : g.elements) orders.push_back(phase_order(e));
  if (g.closed) g.factors = abelian_factors(orders);
  return g;
}

json pauli_to_json(const PauliOp& p) {
  return {{"lambda", p.lambda}, {"x", p.x}, {"z", p.z}};
}

PauliOp pauli_from_json(unsigned D, const json& j) {
  auto x = j.at("x").get<std::vector<long long>>();
  auto z = j.at("z").get<std::vector<long long>>();
  if (j.contains("lambda")) return make_pauli(D, j.at("lambda").get<long long>(), x, z);
  return pauli_observable(D, x, z);
}

json tableau_to_json(const Tableau& t) {
  json g = json::array();
  for (const auto& p : t.generators) g.push_back(pauli_to_json(p));
  return {{"n", t.n}, {"D", t.D}, {"generators", g}};
}

namespace {

Measurement basis_measurement(const std::string& basis, int wire, int n, unsigned D) {
  long long x, z;
  if (basis == "Z") {
    x = 0;
    z = 1;
  } else if (basis == "X") {
    x = 1;
    z = 0;
  } else if (basis.rfind("XZ", 0) == 0) {
    std::string m = basis.substr(2);
    if (!m.empty() && m[0] == '^') m = m.substr(1);
    x = 1;
    z = m.empty() ? 1 : std::stoll(m);
  } else {
    throw ParseError("unknown measurement basis '" + basis + "'");
  }
  std::vector<long long> xs(size_t(n), 0), zs(size_t(n), 0);
  xs[size_t(wire)] = x;
  zs[size_t(wire)] = z;
  return {pauli_observable(D, xs, zs), basis};
}

}  // namespace

Circuit circuit_from_json(const json& j, int n_default, unsigned D_default) {
  Circuit c;
  const json* ops = &j;
  c.n = n_default;
  c.D = D_default;
  if (j.is_object()) {
    c.n = j.value("n", n_default);
    c.D = j.value("D", D_default);
    if (!j.contains("gates")) throw ParseError("circuit: missing 'gates'");
    ops = &j.at("gates");
  }
  if (!ops->is_array()) throw ParseError("circuit: gates must be a list");
  if (!j.is_object()) {
    for (const auto& g : *ops)
      if (g.contains("wires"))
        for (const auto& w : g.at("wires")) c.n = std::max(c.n, w.get<int>() + 1);
  }
  for (size_t i = 0; i < ops->size(); ++i) {
    const json& g = (*ops)[i];
    std::string ctx = "gates[" + std::to_string(i) + "]: ";
    try {
      std::string name = g.at("gate").get<std::string>();
      std::vector<int> wires = g.value("wires", std::vector<int>{});
      if (name == "measure") {
        if (g.contains("x") || g.contains("z")) {
          PauliOp p = pauli_observable(c.D, g.at("x").get<std::vector<long long>>(),
                                       g.at("z").get<std::vector<long long>>());
          if (p.n() != c.n) throw ParseError("observable length differs from n");
          c.ops.push_back(Measurement{p, g.value("basis", std::string("pauli"))});
        } else {
          if (wires.size() != 1) throw ParseError("measure needs one wire or x/z arrays");
          if (wires[0] < 0 || wires[0] >= c.n) throw ParseError("wire out of range");
          c.ops.push_back(basis_measurement(g.value("basis", std::string("Z")), wires[0], c.n, c.D));
        }
        continue;
      }
      CliffordGate cg;
      if (name == "F") cg.kind = GateKind::F;
      else if (name == "Sq" || name == "S") cg.kind = GateKind::Sq;
      else if (name == "CNOT") cg.kind = GateKind::CNOT;
      else if (name == "CP") cg.kind = GateKind::CP;
      else if (name == "SWAP") cg.kind = GateKind::SWAP;
      else throw ParseError("unknown gate '" + name + "'");
      cg.wires = wires;
      cg.q = g.value("q", 1u);
      validate_gate(cg, c.n, c.D);
      c.ops.push_back(cg);
    } catch (const ParseError& e) {
      throw ParseError(ctx + e.what());
    } catch (const InvalidGate& e) {
      throw ParseError(ctx + e.what());
    } catch (const json::exception& e) {
      throw ParseError(ctx + e.what());
    }
  }
  return c;
}

json circuit_to_json(const Circuit& c) {
  json ops = json::array();
  for (const auto& op : c.ops) {
    if (auto g = std::get_if<CliffordGate>(&op)) {
      json o{{"gate", gate_name(g->kind)}, {"wires", g->wires}};
      if (g->kind == GateKind::Sq) o["q"] = g->q;
      ops.push_back(o);
    } else {
      const auto& m = std::get<Measurement>(op);
      ops.push_back({{"gate", "measure"}, {"basis", m.basis}, {"x", m.observable.x}, {"z", m.observable.z}});
    }
  }
  return {{"n", c.n}, {"D", c.D}, {"gates", ops}};
}

json cross_check_to_json(const CrossCheck& c) {
  return {{"measurements", c.measurements},
          {"max_prob_diff", c.max_prob_diff},
          {"max_stabilizer_residual", c.max_stabilizer_residual},
          {"outcomes", c.outcomes},
          {"pass", c.pass}};
}

json state_to_json(const StabilizerState& s) {
  json v = json::array();
  for (Eigen::Index i = 0; i < s.vec.size(); ++i) v.push_back({s.vec(i).real(), s.vec(i).imag()});
  json j{{"basis", s.basis}, {"k", s.k}, {"vector", v}};
  j["z_coords"] = s.z_coords ? phase_to_json(*s.z_coords) : json(nullptr);
  j["x_coords"] = s.x_coords ? phase_to_json(*s.x_coords) : json(nullptr);
  return j;
}

json phase_group_to_json(const PhaseGroup& g) {
  json e = json::array();
  for (const auto& p : g.elements) e.push_back(phase_to_json(p));
  return {{"D", g.D}, {"order", g.elements.size()}, {"closed", g.closed}, {"factors", g.factors},
          {"elements", e}};
}

}  // namespace quditzx
