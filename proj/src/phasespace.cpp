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

#include "quditzx/phasespace.hpp"

#include <algorithm>
#include <optional>

#include "quditzx/stabilizer.hpp"

namespace quditzx {

namespace {

unsigned umod(long long a, long long m) {
  long long r = a % m;
  return unsigned(r < 0 ? r + m : r);
}

unsigned inv_mod(unsigned a, unsigned p) {
  for (unsigned x = 1; x < p; ++x)
    if ((unsigned long long)a * x % p == 1) return x;
  throw std::domain_error("no inverse");
}

void require_prime(unsigned d) {
  if (!is_prime(d)) throw std::invalid_argument("d=" + std::to_string(d) + " is not prime");
}

void check_len(const std::vector<unsigned>& v, int n, const char* what) {
  if (v.size() != size_t(2 * n))
    throw std::invalid_argument(std::string(what) + " needs length " + std::to_string(2 * n));
}

std::vector<unsigned> reduce(unsigned d, std::vector<unsigned> v) {
  for (auto& x : v) x %= d;
  return v;
}

// Reduced row echelon form mod p; returns pivot columns.
std::vector<size_t> rref(unsigned p, std::vector<std::vector<unsigned>>& a) {
  std::vector<size_t> piv;
  if (a.empty()) return piv;
  const size_t cols = a[0].size();
  size_t row = 0;
  for (size_t c = 0; c < cols && row < a.size(); ++c) {
    size_t r = row;
    while (r < a.size() && a[r][c] % p == 0) ++r;
    if (r == a.size()) continue;
    std::swap(a[r], a[row]);
    unsigned inv = inv_mod(a[row][c] % p, p);
    for (auto& v : a[row]) v = unsigned((unsigned long long)v * inv % p);
    for (size_t i = 0; i < a.size(); ++i) {
      if (i == row || a[i][c] % p == 0) continue;
      unsigned f = a[i][c] % p;
      for (size_t k = 0; k < cols; ++k) a[i][k] = umod((long long)a[i][k] - (long long)f * a[row][k], p);
    }
    piv.push_back(c);
    ++row;
  }
  return piv;
}

// Some m with F_i . m = values_i for all i.
std::optional<OnticPoint> solve(unsigned d, int n, const std::vector<DualVector>& V,
                                const std::vector<unsigned>& values) {
  std::vector<std::vector<unsigned>> a;
  for (size_t i = 0; i < V.size(); ++i) {
    auto row = V[i];
    row.push_back(values[i] % d);
    a.push_back(row);
  }
  auto piv = rref(d, a);
  const size_t N = size_t(2 * n);
  for (size_t r = 0; r < a.size(); ++r) {
    bool zero = std::all_of(a[r].begin(), a[r].begin() + long(N), [](unsigned v) { return v == 0; });
    if (zero && a[r][N] != 0) return std::nullopt;
  }
  OnticPoint m(N, 0);
  for (size_t r = 0; r < piv.size(); ++r)
    if (piv[r] < N) m[piv[r]] = a[r][N];
  return m;
}

}  // namespace

size_t omega_size(unsigned d, int n) {
  size_t s = 1;
  for (int i = 0; i < 2 * n; ++i) s *= d;
  return s;
}

size_t point_index(unsigned d, const OnticPoint& m) {
  size_t idx = 0;
  for (unsigned v : m) idx = idx * d + (v % d);
  return idx;
}

OnticPoint point_at(unsigned d, int n, size_t index) {
  OnticPoint m(size_t(2 * n));
  for (int i = 2 * n - 1; i >= 0; --i) {
    m[size_t(i)] = unsigned(index % d);
    index /= d;
  }
  return m;
}

unsigned evaluate_functional(unsigned d, const DualVector& F, const OnticPoint& m) {
  if (F.size() != m.size()) throw std::invalid_argument("functional and point lengths differ");
  unsigned long long s = 0;
  for (size_t i = 0; i < F.size(); ++i) s += (unsigned long long)F[i] * m[i];
  return unsigned(s % d);
}

FunctionalTable linear_table(unsigned d, int n, const DualVector& F) {
  check_len(F, n, "functional");
  FunctionalTable t(omega_size(d, n));
  for (size_t i = 0; i < t.size(); ++i) t[i] = evaluate_functional(d, F, point_at(d, n, i));
  return t;
}

unsigned poisson_bracket(unsigned d, int n, const FunctionalTable& F, const FunctionalTable& G,
                         const OnticPoint& m) {
  const size_t N = omega_size(d, n);
  if (F.size() != N || G.size() != N) throw std::invalid_argument("table size mismatch");
  check_len(m, n, "point");
  auto at = [&](const FunctionalTable& T, const OnticPoint& p) { return (long long)T[point_index(d, p)]; };
  long long s = 0;
  for (int j = 0; j < n; ++j) {
    OnticPoint mx = m, mp = m;
    mx[size_t(2 * j)] = (mx[size_t(2 * j)] + 1) % d;
    mp[size_t(2 * j + 1)] = (mp[size_t(2 * j + 1)] + 1) % d;
    s += (at(F, mx) - at(F, m)) * (at(G, mp) - at(G, m));
    s -= (at(F, mp) - at(F, m)) * (at(G, mx) - at(G, m));
  }
  return umod(s, d);
}

unsigned symplectic_product(unsigned d, const DualVector& F, const DualVector& G) {
  if (F.size() != G.size() || F.size() % 2) throw std::invalid_argument("dual vector shapes differ");
  long long s = 0;
  for (size_t j = 0; j < F.size(); j += 2) s += (long long)F[j] * G[j + 1] - (long long)F[j + 1] * G[j];
  return umod(s, d);
}

Matrix symplectic_form(unsigned d, int n) {
  Matrix J(size_t(2 * n), std::vector<unsigned>(size_t(2 * n), 0));
  for (int j = 0; j < n; ++j) {
    J[size_t(2 * j)][size_t(2 * j + 1)] = 1;
    J[size_t(2 * j + 1)][size_t(2 * j)] = d - 1;
  }
  return J;
}

unsigned rank_mod_p(unsigned d, const std::vector<std::vector<unsigned>>& rows) {
  require_prime(d);
  auto a = rows;
  return unsigned(rref(d, a).size());
}

std::vector<OnticPoint> orthocomplement(unsigned d, int n, const std::vector<DualVector>& V) {
  require_prime(d);
  const size_t N = size_t(2 * n);
  std::vector<std::vector<unsigned>> a;
  for (const auto& F : V) {
    check_len(F, n, "functional");
    a.push_back(reduce(d, F));
  }
  auto piv = rref(d, a);
  std::vector<OnticPoint> basis;
  for (size_t free = 0; free < N; ++free) {
    if (std::find(piv.begin(), piv.end(), free) != piv.end()) continue;
    OnticPoint m(N, 0);
    m[free] = 1;
    for (size_t r = 0; r < piv.size(); ++r) m[piv[r]] = umod(-(long long)a[r][free], d);
    basis.push_back(m);
  }
  return basis;
}

EpistemicState::EpistemicState(unsigned d, int n, std::vector<DualVector> V, OnticPoint v_rep)
    : d_(d), n_(n), V_(std::move(V)), v_(reduce(d, std::move(v_rep))) {
  require_prime(d);
  if (n < 1) throw std::invalid_argument("need at least one system");
  check_len(v_, n, "v_rep");
  for (auto& F : V_) {
    check_len(F, n, "functional");
    F = reduce(d, F);
  }
  for (size_t i = 0; i < V_.size(); ++i)
    for (size_t j = i + 1; j < V_.size(); ++j)
      if (symplectic_product(d, V_[i], V_[j]) != 0)
        throw NotIsotropic("V is not isotropic: elements " + std::to_string(i) + " and " +
                           std::to_string(j) + " have nonzero bracket");
}

EpistemicState EpistemicState::from_valuation(unsigned d, int n, const std::vector<DualVector>& V,
                                              const std::vector<unsigned>& values) {
  require_prime(d);
  if (values.size() != V.size()) throw std::invalid_argument("one value per functional");
  auto m = solve(d, n, V, values);
  if (!m) throw std::invalid_argument("inconsistent valuation");
  return EpistemicState(d, n, V, *m);
}

std::set<OnticPoint> EpistemicState::support() const {
  auto basis = orthocomplement(d_, n_, V_);
  std::set<OnticPoint> out;
  size_t total = 1;
  for (size_t i = 0; i < basis.size(); ++i) total *= d_;
  for (size_t c = 0; c < total; ++c) {
    OnticPoint m = v_;
    size_t rest = c;
    for (const auto& b : basis) {
      unsigned coef = unsigned(rest % d_);
      rest /= d_;
      for (size_t k = 0; k < m.size(); ++k) m[k] = (m[k] + coef * b[k]) % d_;
    }
    out.insert(m);
  }
  return out;
}

std::vector<Rational> epistemic_distribution(const EpistemicState& s) {
  std::vector<Rational> p(omega_size(s.d(), s.n()), Rational(0));
  auto sup = s.support();
  for (const auto& m : sup) p[point_index(s.d(), m)] = Rational(1, int64_t(sup.size()));
  return p;
}

Matrix mat_mul(unsigned d, const Matrix& A, const Matrix& B) {
  Matrix C(A.size(), std::vector<unsigned>(B.empty() ? 0 : B[0].size(), 0));
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t k = 0; k < B.size(); ++k)
      for (size_t j = 0; j < C[i].size(); ++j)
        C[i][j] = unsigned((C[i][j] + (unsigned long long)A[i][k] * B[k][j]) % d);
  return C;
}

Matrix mat_transpose(const Matrix& A) {
  Matrix T(A.empty() ? 0 : A[0].size(), std::vector<unsigned>(A.size()));
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A[i].size(); ++j) T[j][i] = A[i][j];
  return T;
}

Matrix mat_inverse(unsigned d, const Matrix& A) {
  const size_t N = A.size();
  std::vector<std::vector<unsigned>> a(N);
  for (size_t i = 0; i < N; ++i) {
    a[i] = reduce(d, A[i]);
    a[i].resize(2 * N, 0);
    a[i][N + i] = 1;
  }
  auto piv = rref(d, a);
  if (piv.size() < N || piv[N - 1] >= N) throw std::invalid_argument("matrix is singular mod d");
  Matrix inv(N);
  for (size_t i = 0; i < N; ++i) inv[i].assign(a[i].begin() + long(N), a[i].end());
  return inv;
}

bool is_symplectic(unsigned d, int n, const Matrix& S) {
  if (S.size() != size_t(2 * n)) return false;
  for (const auto& r : S)
    if (r.size() != size_t(2 * n)) return false;
  const Matrix J = symplectic_form(d, n);
  return mat_mul(d, mat_transpose(S), mat_mul(d, J, S)) == J;
}

SymplecticAffine make_affine(unsigned d, int n, Matrix S, OnticPoint a) {
  require_prime(d);
  for (auto& r : S) r = reduce(d, r);
  if (!is_symplectic(d, n, S)) throw NotSymplectic("S^T J S != J mod d");
  check_len(a, n, "translation");
  return {d, n, std::move(S), reduce(d, std::move(a))};
}

OnticPoint apply_point(const SymplecticAffine& t, const OnticPoint& m) {
  OnticPoint r(m.size(), 0);
  for (size_t i = 0; i < m.size(); ++i) {
    unsigned long long s = t.a[i];
    for (size_t k = 0; k < m.size(); ++k) s += (unsigned long long)t.S[i][k] * m[k];
    r[i] = unsigned(s % t.d);
  }
  return r;
}

EpistemicState apply_transform(const EpistemicState& s, const SymplecticAffine& t) {
  if (s.d() != t.d || s.n() != t.n) throw std::invalid_argument("transform shape differs from state");
  if (!is_symplectic(t.d, t.n, t.S)) throw NotSymplectic("S^T J S != J mod d");
  const Matrix inv_t = mat_transpose(mat_inverse(t.d, t.S));
  std::vector<DualVector> V;
  for (const auto& F : s.V()) {
    DualVector G(F.size(), 0);
    for (size_t i = 0; i < F.size(); ++i) {
      unsigned long long acc = 0;
      for (size_t k = 0; k < F.size(); ++k) acc += (unsigned long long)inv_t[i][k] * F[k];
      G[i] = unsigned(acc % t.d);
    }
    V.push_back(G);
  }
  return EpistemicState(t.d, t.n, V, apply_point(t, s.v_rep()));
}

SymplecticAffine random_symplectic(unsigned d, int n, std::mt19937_64& rng) {
  const size_t N = size_t(2 * n);
  auto uni = [&](unsigned hi) { return unsigned(std::uniform_int_distribution<unsigned>(0, hi)(rng)); };
  Matrix S(N, std::vector<unsigned>(N, 0));
  for (size_t i = 0; i < N; ++i) S[i][i] = 1;
  for (int step = 0; step < 8 * n; ++step) {
    Matrix E(N, std::vector<unsigned>(N, 0));
    for (size_t i = 0; i < N; ++i) E[i][i] = 1;
    unsigned c = uni(d - 1);
    int j = int(uni(unsigned(n - 1)));
    switch (uni(n > 1 ? 2 : 1)) {
      case 0: E[size_t(2 * j)][size_t(2 * j + 1)] = c; break;  // x += c p
      case 1: E[size_t(2 * j + 1)][size_t(2 * j)] = c; break;  // p += c x
      default: {
        int k = int(uni(unsigned(n - 1)));
        if (k == j) break;
        E[size_t(2 * k)][size_t(2 * j)] = c;                  // x_k += c x_j
        E[size_t(2 * j + 1)][size_t(2 * k + 1)] = (d - c) % d;  // p_j -= c p_k
      }
    }
    S = mat_mul(d, E, S);
  }
  OnticPoint a(N);
  for (auto& v : a) v = uni(d - 1);
  return make_affine(d, n, S, a);
}

std::vector<Rational> measure_probabilities(const std::vector<Rational>& mu,
                                            const std::vector<std::vector<bool>>& indicators) {
  for (size_t m = 0; m < mu.size(); ++m) {
    int hits = 0;
    for (const auto& xi : indicators) {
      if (xi.size() != mu.size()) throw std::invalid_argument("indicator size differs from distribution");
      hits += xi[m];
    }
    if (hits != 1) throw std::invalid_argument("indicators do not partition phase space");
  }
  std::vector<Rational> p;
  for (const auto& xi : indicators) {
    Rational s(0);
    for (size_t m = 0; m < mu.size(); ++m)
      if (xi[m]) s += mu[m];
    p.push_back(s);
  }
  return p;
}

std::vector<std::vector<bool>> functional_indicators(unsigned d, int n, const DualVector& F) {
  auto t = linear_table(d, n, F);
  std::vector<std::vector<bool>> xi(d, std::vector<bool>(t.size(), false));
  for (size_t m = 0; m < t.size(); ++m) xi[t[m]][m] = true;
  return xi;
}

unsigned encode_ontic(unsigned d, const OnticPoint& m) {
  if (m.empty() || m.size() % 2) throw std::invalid_argument("point must have even length");
  if (m.size() > 6) throw std::invalid_argument("encoding supports at most 3 systems");
  unsigned e = 0;
  for (size_t i = 0; i < m.size(); i += 2) e = e * d * d + (m[i] % d) * d + (m[i + 1] % d);
  return e + 1;
}

OnticPoint decode_ontic(unsigned d, int n, unsigned e) {
  if (n < 1 || n > 3) throw std::invalid_argument("encoding supports 1 to 3 systems");
  if (e < 1 || e > omega_size(d, n)) throw std::out_of_range("encoded point out of range");
  return point_at(d, n, e - 1);
}

std::vector<EpistemicState> enumerate_pure_states(unsigned d) {
  require_prime(d);
  std::vector<DualVector> lines{{1, 0}};
  for (unsigned b = 0; b < d; ++b) lines.push_back({b, 1});
  std::vector<EpistemicState> out;
  for (const auto& F : lines)
    for (unsigned v = 0; v < d; ++v) out.push_back(EpistemicState::from_valuation(d, 1, {F}, {v}));
  return out;
}

json epistemic_to_json(const EpistemicState& s) {
  return {{"d", s.d()}, {"n", s.n()}, {"V", s.V()}, {"v_rep", s.v_rep()}};
}

EpistemicState epistemic_from_json(const json& j) {
  return EpistemicState(j.at("d").get<unsigned>(), j.at("n").get<int>(),
                        j.at("V").get<std::vector<DualVector>>(), j.at("v_rep").get<OnticPoint>());
}

}  // namespace quditzx
