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

#include "quditzx/semantics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>

namespace quditzx {

namespace {

constexpr double kPi = std::numbers::pi;

size_t ipow(size_t b, size_t e) {
  size_t r = 1;
  while (e--) r *= b;
  return r;
}

long long pmod(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

cplx root_of_unity(unsigned D, long long power) {
  long long p = pmod(power, D);
  return std::polar(1.0, 2 * kPi * double(p) / double(D));
}

DenseOperator DenseOperator::identity(unsigned D, int wires) {
  size_t n = ipow(D, size_t(wires));
  return {D, wires, wires, Eigen::MatrixXcd::Identity(long(n), long(n))};
}

DenseOperator DenseOperator::scalar(unsigned D, cplx s) {
  Eigen::MatrixXcd m(1, 1);
  m(0, 0) = s;
  return {D, 0, 0, m};
}

DenseOperator op_compose(const DenseOperator& after, const DenseOperator& before) {
  if (after.D != before.D) throw DimensionMismatch("op_compose dimensions");
  if (after.in_arity != before.out_arity)
    throw ArityMismatch("op_compose arity mismatch");
  return {after.D, before.in_arity, after.out_arity, after.mat * before.mat};
}

DenseOperator op_tensor(const DenseOperator& a, const DenseOperator& b) {
  if (a.D != b.D) throw DimensionMismatch("op_tensor dimensions");
  const auto& A = a.mat;
  const auto& B = b.mat;
  Eigen::MatrixXcd K(A.rows() * B.rows(), A.cols() * B.cols());
  for (long i = 0; i < A.rows(); ++i)
    for (long j = 0; j < A.cols(); ++j)
      K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return {a.D, a.in_arity + b.in_arity, a.out_arity + b.out_arity, K};
}

DenseOperator op_adjoint(const DenseOperator& a) {
  return {a.D, a.out_arity, a.in_arity, a.mat.adjoint()};
}

DenseOperator op_scale(const DenseOperator& a, cplx s) {
  return {a.D, a.in_arity, a.out_arity, a.mat * s};
}

DenseOperator op_swap(unsigned D) { return generator_matrix(Generator::Swap, D); }

Generator generator_from_name(const std::string& s) {
  static const std::map<std::string, Generator> names = {
      {"id", Generator::Id},           {"swap", Generator::Swap},
      {"fourier", Generator::Fourier}, {"fourier_dag", Generator::FourierDag},
      {"ket0", Generator::Ket0},       {"ketplus", Generator::KetPlus},
      {"eps_x", Generator::EpsX},      {"eps_z", Generator::EpsZ},
      {"delta_x", Generator::DeltaX},  {"delta_z", Generator::DeltaZ},
      {"cnot", Generator::Cnot}};
  auto it = names.find(s);
  if (it == names.end()) throw std::invalid_argument("unknown generator '" + s + "'");
  return it->second;
}

std::string generator_name(Generator g) {
  switch (g) {
    case Generator::Id: return "id";
    case Generator::Swap: return "swap";
    case Generator::Fourier: return "fourier";
    case Generator::FourierDag: return "fourier_dag";
    case Generator::Ket0: return "ket0";
    case Generator::KetPlus: return "ketplus";
    case Generator::EpsX: return "eps_x";
    case Generator::EpsZ: return "eps_z";
    case Generator::DeltaX: return "delta_x";
    case Generator::DeltaZ: return "delta_z";
    case Generator::Cnot: return "cnot";
  }
  return "?";
}

DenseOperator generator_matrix(Generator g, unsigned D) {
  if (D < 2) throw std::invalid_argument("dimension must be at least 2");
  const long d = long(D);
  const double rt = std::sqrt(double(D));
  Eigen::MatrixXcd m;
  int in = 1, out = 1;
  switch (g) {
    case Generator::Id:
      m = Eigen::MatrixXcd::Identity(d, d);
      break;
    case Generator::Swap:
      m = Eigen::MatrixXcd::Zero(d * d, d * d);
      for (long a = 0; a < d; ++a)
        for (long b = 0; b < d; ++b) m(b * d + a, a * d + b) = 1;
      in = out = 2;
      break;
    case Generator::Fourier:
    case Generator::FourierDag:
      m.resize(d, d);
      for (long j = 0; j < d; ++j)
        for (long k = 0; k < d; ++k)
          m(j, k) = root_of_unity(D, (g == Generator::Fourier ? 1 : -1) * j * k) / rt;
      break;
    case Generator::Ket0:
      m = Eigen::MatrixXcd::Zero(d, 1);
      m(0, 0) = rt;
      in = 0;
      break;
    case Generator::KetPlus:
      m = Eigen::MatrixXcd::Ones(d, 1);
      in = 0;
      break;
    case Generator::EpsX:
      m = Eigen::MatrixXcd::Zero(1, d);
      m(0, 0) = 1;
      out = 0;
      break;
    case Generator::EpsZ:
      m = Eigen::MatrixXcd::Ones(1, d);
      out = 0;
      break;
    case Generator::DeltaZ:
      m = Eigen::MatrixXcd::Zero(d * d, d);
      for (long i = 0; i < d; ++i) m(i * d + i, i) = 1;
      out = 2;
      break;
    case Generator::DeltaX:
      m = Eigen::MatrixXcd::Zero(d * d, d);
      for (long a = 0; a < d; ++a)
        for (long b = 0; b < d; ++b) m(a * d + b, (a + b) % d) = 1;
      out = 2;
      break;
    case Generator::Cnot:
      m = Eigen::MatrixXcd::Zero(d * d, d * d);
      for (long a = 0; a < d; ++a)
        for (long b = 0; b < d; ++b) m(a * d + b, a * d + (a + b) % d) = 1;
      in = out = 2;
      break;
  }
  return {D, in, out, m};
}

std::vector<cplx> c_coefficients(unsigned D, const std::vector<cplx>& alpha) {
  if (alpha.size() + 1 != D) throw DimensionMismatch("c_coefficients length");
  std::vector<cplx> c(D, 0.0);
  for (unsigned j = 0; j < D; ++j) {
    c[j] = 1.0;
    for (unsigned k = 1; k < D; ++k)
      c[j] += std::exp(cplx(0, 1) * alpha[k - 1]) * root_of_unity(D, (long long)j * k);
  }
  return c;
}

std::vector<cplx> c_coefficients(const PhaseVector& alpha) {
  std::vector<cplx> a;
  for (const auto& t : alpha.entries()) a.push_back(t.radians());
  return c_coefficients(alpha.dim(), a);
}

Eigen::MatrixXcd lambda_x_complex(unsigned D, const std::vector<cplx>& alpha) {
  auto c = c_coefficients(D, alpha);
  Eigen::MatrixXcd m(D, D);
  for (unsigned r = 0; r < D; ++r)
    for (unsigned k = 0; k < D; ++k) m(r, k) = c[(r + D - k) % D] / double(D);
  return m;
}

DenseOperator lambda_matrix(Color c, const PhaseVector& alpha) {
  const unsigned D = alpha.dim();
  if (c == Color::Z) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(D, D);
    for (unsigned k = 0; k < D; ++k) m(k, k) = std::polar(1.0, alpha.alpha(k).radians());
    return {D, 1, 1, m};
  }
  std::vector<cplx> a;
  for (const auto& t : alpha.entries()) a.push_back(t.radians());
  return {D, 1, 1, lambda_x_complex(D, a)};
}

Eigen::VectorXcd spider_state(Color c, const PhaseVector& alpha) {
  const unsigned D = alpha.dim();
  Eigen::VectorXcd v(D);
  for (unsigned k = 0; k < D; ++k) v(k) = std::polar(1.0, alpha.alpha(k).radians());
  if (c == Color::X) v = generator_matrix(Generator::Fourier, D).mat * v;
  return v;
}

namespace {

// Per-node view used by both evaluators.
struct NodeTensorSpec {
  NodeKind kind;
  std::vector<cplx> phases;  // e^{i alpha_k}, k = 0..D-1
  std::vector<Leg> legs;
};

struct Prepared {
  unsigned D;
  std::vector<NodeTensorSpec> nodes;  // non-boundary nodes
  std::vector<size_t> in_edges, out_edges;
  size_t n_edges;
};

Prepared prepare(const Diagram& d) {
  validate(d);
  Prepared p{d.dim(), {}, {}, {}, d.edges().size()};
  for (int id : d.inputs()) p.in_edges.push_back(d.legs(id)[0].edge);
  for (int id : d.outputs()) p.out_edges.push_back(d.legs(id)[0].edge);
  for (const auto& [id, n] : d.nodes()) {
    if (is_boundary(n.kind)) continue;
    NodeTensorSpec s{n.kind, {}, d.legs(id)};
    if (is_spider(n.kind))
      for (unsigned k = 0; k < d.dim(); ++k)
        s.phases.push_back(std::polar(1.0, n.phase.alpha(k).radians()));
    p.nodes.push_back(std::move(s));
  }
  return p;
}

// Entry of a node tensor given the value carried by each leg.
cplx node_entry(const NodeTensorSpec& s, unsigned D, const std::vector<int>& leg_vals) {
  const double inv = 1.0 / std::sqrt(double(D));
  switch (s.kind) {
    case NodeKind::Z: {
      if (leg_vals.empty()) {
        cplx t = 0;
        for (auto ph : s.phases) t += ph;
        return t;
      }
      for (int v : leg_vals)
        if (v != leg_vals[0]) return 0.0;
      return s.phases[size_t(leg_vals[0])];
    }
    case NodeKind::X: {
      long long tot = 0;
      for (size_t i = 0; i < leg_vals.size(); ++i)
        tot += (s.legs[i].out ? 1 : -1) * leg_vals[i];
      cplx acc = 0;
      for (unsigned k = 0; k < D; ++k) acc += s.phases[k] * root_of_unity(D, tot * k);
      return acc * std::pow(inv, double(leg_vals.size()));
    }
    case NodeKind::F:
    case NodeKind::Fdag: {
      int o = 0, i = 0;
      for (size_t l = 0; l < leg_vals.size(); ++l)
        (s.legs[l].out ? o : i) = leg_vals[l];
      return root_of_unity(D, (s.kind == NodeKind::F ? 1 : -1) * (long long)o * i) * inv;
    }
    default:
      return 1.0;
  }
}

struct Tensor {
  std::vector<size_t> vars;
  std::vector<cplx> data;
};

Tensor build_tensor(const NodeTensorSpec& s, unsigned D) {
  Tensor t;
  for (const auto& l : s.legs)
    if (std::find(t.vars.begin(), t.vars.end(), l.edge) == t.vars.end())
      t.vars.push_back(l.edge);
  size_t n = ipow(D, t.vars.size());
  t.data.resize(n);
  std::vector<int> vals(t.vars.size()), leg_vals(s.legs.size());
  for (size_t idx = 0; idx < n; ++idx) {
    size_t r = idx;
    for (size_t v = t.vars.size(); v-- > 0;) {
      vals[v] = int(r % D);
      r /= D;
    }
    for (size_t l = 0; l < s.legs.size(); ++l) {
      size_t pos = size_t(std::find(t.vars.begin(), t.vars.end(), s.legs[l].edge) -
                          t.vars.begin());
      leg_vals[l] = vals[pos];
    }
    t.data[idx] = node_entry(s, D, leg_vals);
  }
  return t;
}

// Sum out `summed`, keep `keep`; both tensors may share any vars.
Tensor contract_pair(const Tensor& a, const Tensor& b, const std::vector<size_t>& keep,
                     const std::vector<size_t>& summed, unsigned D) {
  std::vector<size_t> all = keep;
  all.insert(all.end(), summed.begin(), summed.end());
  auto strides = [&](const Tensor& t) {
    std::vector<size_t> s(all.size(), 0);
    size_t st = 1;
    for (size_t v = t.vars.size(); v-- > 0;) {
      size_t pos = size_t(std::find(all.begin(), all.end(), t.vars[v]) - all.begin());
      s[pos] += st;
      st *= D;
    }
    return s;
  };
  auto sa = strides(a), sb = strides(b);
  Tensor r;
  r.vars = keep;
  const size_t nk = ipow(D, keep.size()), ns = ipow(D, summed.size());
  r.data.assign(nk, 0.0);
  std::vector<unsigned> digit(all.size(), 0);
  size_t ia = 0, ib = 0;
  for (size_t k = 0; k < nk; ++k) {
    cplx acc = 0;
    for (size_t s = 0; s < ns; ++s) {
      acc += a.data[ia] * b.data[ib];
      // odometer increment over `all`, last digit fastest
      for (size_t p = all.size(); p-- > 0;) {
        if (++digit[p] < D) {
          ia += sa[p];
          ib += sb[p];
          break;
        }
        digit[p] = 0;
        ia -= sa[p] * (D - 1);
        ib -= sb[p] * (D - 1);
      }
    }
    r.data[k] = acc;
  }
  return r;
}

// Sum out variables owned by one tensor only (self-loop traces).
void trace_private(std::vector<Tensor>& ts, const std::set<size_t>& open, unsigned D) {
  for (auto& t : ts) {
    std::vector<size_t> priv;
    for (size_t v : t.vars) {
      if (open.count(v)) continue;
      int owners = 0;
      for (const auto& u : ts)
        if (std::find(u.vars.begin(), u.vars.end(), v) != u.vars.end()) ++owners;
      if (owners == 1) priv.push_back(v);
    }
    if (priv.empty()) continue;
    std::vector<size_t> keep;
    for (size_t v : t.vars)
      if (std::find(priv.begin(), priv.end(), v) == priv.end()) keep.push_back(v);
    Tensor one{{}, {1.0}};
    t = contract_pair(t, one, keep, priv, D);
  }
}

DenseOperator assemble(const Prepared& p, const Tensor& t, cplx scalar) {
  const unsigned D = p.D;
  const int m = int(p.in_edges.size()), n = int(p.out_edges.size());
  const size_t rows = ipow(D, size_t(n)), cols = ipow(D, size_t(m));
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(long(rows), long(cols));
  std::vector<int> val(p.n_edges, -1);
  for (size_t r = 0; r < rows; ++r) {
    for (size_t c = 0; c < cols; ++c) {
      std::fill(val.begin(), val.end(), -1);
      bool ok = true;
      size_t x = r;
      for (int i = n; i-- > 0;) {
        val[p.out_edges[size_t(i)]] = int(x % D);
        x /= D;
      }
      x = c;
      for (int i = m; i-- > 0;) {
        int v = int(x % D);
        x /= D;
        int& slot = val[p.in_edges[size_t(i)]];
        if (slot >= 0 && slot != v) ok = false;
        slot = v;
      }
      if (!ok) continue;
      size_t idx = 0;
      for (size_t v : t.vars) idx = idx * D + size_t(val[v]);
      M(long(r), long(c)) = scalar * t.data[idx];
    }
  }
  return {D, m, n, M};
}

}  // namespace

DenseOperator evaluate_contract(const Diagram& d) {
  Prepared p = prepare(d);
  const unsigned D = p.D;
  std::set<size_t> open(p.in_edges.begin(), p.in_edges.end());
  open.insert(p.out_edges.begin(), p.out_edges.end());

  std::vector<Tensor> ts;
  for (const auto& s : p.nodes) ts.push_back(build_tensor(s, D));
  trace_private(ts, open, D);

  auto needed_elsewhere = [&](size_t v, size_t i, size_t j) {
    if (open.count(v)) return true;
    for (size_t k = 0; k < ts.size(); ++k) {
      if (k == i || k == j) continue;
      if (std::find(ts[k].vars.begin(), ts[k].vars.end(), v) != ts[k].vars.end())
        return true;
    }
    return false;
  };

  while (ts.size() > 1) {
    size_t bi = 0, bj = 1;
    size_t best = SIZE_MAX;
    bool best_shares = false;
    for (size_t i = 0; i < ts.size(); ++i) {
      for (size_t j = i + 1; j < ts.size(); ++j) {
        std::set<size_t> uni(ts[i].vars.begin(), ts[i].vars.end());
        bool shares = false;
        for (size_t v : ts[j].vars) {
          if (uni.count(v)) shares = true;
          uni.insert(v);
        }
        size_t kept = 0;
        for (size_t v : uni)
          if (needed_elsewhere(v, i, j)) ++kept;
        size_t cost = ipow(D, kept);
        if ((shares && !best_shares) || (shares == best_shares && cost < best)) {
          best = cost;
          best_shares = shares;
          bi = i;
          bj = j;
        }
      }
    }
    std::vector<size_t> keep, summed;
    std::set<size_t> seen;
    for (const Tensor* t : {&ts[bi], &ts[bj]})
      for (size_t v : t->vars) {
        if (!seen.insert(v).second) continue;
        (needed_elsewhere(v, bi, bj) ? keep : summed).push_back(v);
      }
    Tensor r = contract_pair(ts[bi], ts[bj], keep, summed, D);
    ts.erase(ts.begin() + long(bj));
    ts[bi] = std::move(r);
  }
  Tensor final = ts.empty() ? Tensor{{}, {1.0}} : ts[0];
  return assemble(p, final, d.scalar());
}

DenseOperator evaluate_reference(const Diagram& d) {
  Prepared p = prepare(d);
  const unsigned D = p.D;
  const size_t total = ipow(D, p.n_edges);
  if (p.n_edges > 40 || total > 50'000'000)
    throw std::length_error("reference evaluator: too many edges");
  const int m = int(p.in_edges.size()), n = int(p.out_edges.size());
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(long(ipow(D, size_t(n))),
                                              long(ipow(D, size_t(m))));
  std::vector<int> val(p.n_edges, 0), leg_vals;
  for (size_t a = 0; a < total; ++a) {
    size_t x = a;
    for (size_t e = p.n_edges; e-- > 0;) {
      val[e] = int(x % D);
      x /= D;
    }
    cplx w = 1.0;
    for (const auto& s : p.nodes) {
      leg_vals.resize(s.legs.size());
      for (size_t l = 0; l < s.legs.size(); ++l) leg_vals[l] = val[s.legs[l].edge];
      w *= node_entry(s, D, leg_vals);
      if (w == 0.0) break;
    }
    if (w == 0.0) continue;
    size_t r = 0, c = 0;
    for (size_t e : p.out_edges) r = r * D + size_t(val[e]);
    for (size_t e : p.in_edges) c = c * D + size_t(val[e]);
    M(long(r), long(c)) += w;
  }
  return {D, m, n, M * d.scalar()};
}

DenseOperator evaluate(const Diagram& d) { return evaluate_contract(d); }

double max_abs_diff(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw std::invalid_argument("shape mismatch");
  if (A.size() == 0) return 0.0;
  return (A - B).cwiseAbs().maxCoeff();
}

std::optional<cplx> equal_up_to_scalar(const Eigen::MatrixXcd& A,
                                       const Eigen::MatrixXcd& B, double tol) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw std::invalid_argument("equal_up_to_scalar: shape mismatch");
  if (B.size() == 0) return std::nullopt;
  Eigen::Index r = 0, c = 0;
  double bmax = B.cwiseAbs().maxCoeff(&r, &c);
  if (bmax <= tol) return std::nullopt;
  cplx s = A(r, c) / B(r, c);
  if (std::abs(s) <= tol) return std::nullopt;
  if ((A - s * B).cwiseAbs().maxCoeff() > tol) return std::nullopt;
  return s;
}

std::optional<cplx> equal_up_to_scalar(const DenseOperator& A, const DenseOperator& B,
                                       double tol) {
  return equal_up_to_scalar(A.mat, B.mat, tol);
}

json operator_to_json(const DenseOperator& op) {
  json rows = json::array();
  for (long r = 0; r < op.mat.rows(); ++r) {
    json row = json::array();
    for (long c = 0; c < op.mat.cols(); ++c)
      row.push_back({op.mat(r, c).real(), op.mat(r, c).imag()});
    rows.push_back(row);
  }
  return {{"D", op.D},
          {"in", op.in_arity},
          {"out", op.out_arity},
          {"shape", {op.mat.rows(), op.mat.cols()}},
          {"entries", rows}};
}

// ---------------------------------------------------------------------------
// Structure checks.

namespace {

using Mat = Eigen::MatrixXcd;

Mat eye(unsigned D, int w = 1) { return DenseOperator::identity(D, w).mat; }

Mat kron(const Mat& a, const Mat& b) {
  return op_tensor({2, 0, 0, a}, {2, 0, 0, b}).mat;
}

Mat delta(Color c, unsigned D) {
  return generator_matrix(c == Color::Z ? Generator::DeltaZ : Generator::DeltaX, D).mat;
}

Mat eps(Color c, unsigned D) {
  return generator_matrix(c == Color::Z ? Generator::EpsZ : Generator::EpsX, D).mat;
}

Mat cup(Color c, unsigned D) { return delta(c, D) * eps(c, D).adjoint(); }

Mat swap2(unsigned D) { return generator_matrix(Generator::Swap, D).mat; }

// Conjugate of a state with respect to the structure's own compact structure.
Eigen::VectorXcd conj_state(Color c, const Eigen::VectorXcd& a, unsigned D) {
  Mat r = kron(a.adjoint(), eye(D)) * cup(c, D);
  return r.col(0);
}

Eigen::VectorXcd dot(Color c, const Eigen::VectorXcd& a, const Eigen::VectorXcd& b,
                     unsigned D) {
  return delta(c, D).adjoint() * kron(a, b);
}

Color other(Color c) { return c == Color::Z ? Color::X : Color::Z; }

std::vector<Eigen::VectorXcd> classical_points(Color c, unsigned D) {
  std::vector<Eigen::VectorXcd> out;
  for (unsigned j = 0; j < D; ++j) {
    // Z classical points are red shift states, X classical points are green ones.
    PhaseVector p = PhaseVector::shift(D, c == Color::Z ? -int64_t(j) : int64_t(j));
    out.push_back(spider_state(other(c), p));
  }
  return out;
}

struct Acc {
  bool pass = true;
  double dev = 0.0;
  std::string detail;
  void scalar_eq(const Mat& a, const Mat& b, const std::string& what, double tol = 1e-10) {
    auto s = equal_up_to_scalar(a, b, tol);
    if (!s) {
      pass = false;
      double scale = b.cwiseAbs().maxCoeff();
      dev = std::max(dev, scale > 0 ? max_abs_diff(a / a.cwiseAbs().maxCoeff(),
                                                   b / scale)
                                    : a.cwiseAbs().maxCoeff());
      detail += what + " fails; ";
    } else {
      double d = max_abs_diff(a, *s * b);
      dev = std::max(dev, d);
    }
  }
  void exact_eq(const Mat& a, const Mat& b, const std::string& what, double tol = 1e-10) {
    double d = max_abs_diff(a, b);
    dev = std::max(dev, d);
    if (d > tol) {
      pass = false;
      detail += what + " fails; ";
    }
  }
};

Eigen::VectorXcd random_flat_state(Color c, unsigned D, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0, 2 * kPi);
  std::vector<double> a;
  for (unsigned k = 1; k < D; ++k) a.push_back(u(rng));
  return spider_state(c, PhaseVector::from_radians(D, a));
}

}  // namespace

std::vector<std::string> structure_check_ids() {
  return {"assoc_z",       "assoc_x",        "comm_z",
          "comm_x",        "unit_z",         "unit_x",
          "frobenius_z",   "frobenius_x",    "special_z",
          "special_x",     "classical_z",    "classical_x",
          "unbiased_z",    "unbiased_x",     "coherence",
          "complementarity", "strong_complementarity", "dualizer_unitary",
          "dim_independence", "x_points_cyclic",  "cups_differ",
          "fourier_copy",          "fourier_points"};
}

CheckReport structure_check(const std::string& id, unsigned D) {
  if (D < 2) throw std::invalid_argument("dimension must be at least 2");
  Acc acc;
  std::mt19937_64 rng(0x5eed + D);
  const Mat I = eye(D);
  auto colour_of = [&](const std::string& s) {
    return s.back() == 'z' ? Color::Z : Color::X;
  };
  const std::string base = id.substr(0, id.find('_'));

  if (base == "assoc" || base == "comm" || base == "unit" || base == "frobenius" ||
      base == "special" || base == "classical" || base == "unbiased") {
    if (id.size() < 2 || (id.back() != 'z' && id.back() != 'x') || id[id.size() - 2] != '_')
      throw std::invalid_argument("unknown check id '" + id + "'");
    Color c = colour_of(id);
    Mat dl = delta(c, D), ep = eps(c, D);
    if (base == "assoc") {
      acc.scalar_eq(kron(dl, I) * dl, kron(I, dl) * dl, "associativity");
    } else if (base == "comm") {
      acc.scalar_eq(swap2(D) * dl, dl, "commutativity");
    } else if (base == "unit") {
      acc.scalar_eq(kron(ep, I) * dl, I, "left unit");
      acc.scalar_eq(kron(I, ep) * dl, I, "right unit");
    } else if (base == "frobenius") {
      acc.scalar_eq(kron(dl.adjoint(), I) * kron(I, dl), dl * dl.adjoint(), "Frobenius");
      acc.scalar_eq(kron(I, dl.adjoint()) * kron(dl, I), dl * dl.adjoint(), "Frobenius'");
    } else if (base == "special") {
      acc.scalar_eq(dl.adjoint() * dl, I, "specialness");
    } else if (base == "classical") {
      for (const auto& k : classical_points(c, D)) {
        acc.scalar_eq(dl * k, kron(k, k), "copy");
        if (std::abs((ep * k)(0, 0)) < 1e-9) {
          acc.pass = false;
          acc.detail += "delete fails; ";
        }
      }
    } else {
      // s (a . a*) = eps^dagger for every unbiased point, with a real s.
      std::vector<Eigen::VectorXcd> pts = classical_points(other(c), D);
      for (int t = 0; t < 4; ++t) pts.push_back(random_flat_state(c, D, rng));
      for (const auto& a : pts)
        acc.scalar_eq(dot(c, a, conj_state(c, a, D), D), ep.adjoint(), "unbiasedness");
    }
  } else if (id == "coherence") {
    for (Color c : {Color::Z, Color::X}) {
      Mat u = eps(other(c), D).adjoint();
      acc.scalar_eq(delta(c, D) * u, kron(u, u), "unit copied");
      if (std::abs((eps(c, D) * u)(0, 0)) < 1e-9) {
        acc.pass = false;
        acc.detail += "unit deleted fails; ";
      }
    }
  } else if (id == "complementarity") {
    for (Color c : {Color::Z, Color::X}) {
      Mat dl = delta(c, D), ep = eps(c, D);
      for (const auto& k : classical_points(other(c), D))
        acc.scalar_eq(dot(c, k, conj_state(c, k, D), D), ep.adjoint(),
                      "classical point of the other colour is unbiased");
    }
  } else if (id == "strong_complementarity") {
    for (Color c : {Color::Z, Color::X}) {
      Mat lhs = delta(other(c), D) * delta(c, D).adjoint();
      Mat mid = kron(kron(I, swap2(D)), I);
      Mat rhs = kron(delta(c, D).adjoint(), delta(c, D).adjoint()) * mid *
                kron(delta(other(c), D), delta(other(c), D));
      acc.scalar_eq(lhs, rhs, "bialgebra");
    }
  } else if (id == "dualizer_unitary") {
    Mat d = kron(I, cup(Color::Z, D).adjoint()) * kron(cup(Color::X, D), I);
    acc.scalar_eq(d.adjoint() * d, I, "dualizer unitarity");
  } else if (id == "dim_independence") {
    cplx a = (cup(Color::Z, D).adjoint() * cup(Color::Z, D))(0, 0);
    cplx b = (cup(Color::X, D).adjoint() * cup(Color::X, D))(0, 0);
    acc.dev = std::abs(a - b);
    acc.pass = acc.dev < 1e-10;
    acc.detail = "dim_Z=" + std::to_string(a.real()) + " dim_X=" + std::to_string(b.real());
  } else if (id == "x_points_cyclic") {
    auto pts = classical_points(Color::X, D);
    // pts[j] is proportional to the Z-phase (j k / D); the dot product adds indices.
    for (unsigned a = 0; a < D; ++a)
      for (unsigned b = 0; b < D; ++b)
        acc.scalar_eq(dot(Color::Z, pts[a], pts[b], D), pts[(a + b) % D], "closure");
    for (unsigned a = 0; a < D; ++a) {
      Eigen::VectorXcd p = pts[0];
      for (unsigned t = 0; t < D; ++t) p = dot(Color::Z, p, pts[a], D);
      acc.scalar_eq(p, pts[0], "order divides D");
    }
    Eigen::VectorXcd p = pts[0];
    for (unsigned t = 1; t < D; ++t) {
      p = dot(Color::Z, p, pts[1], D);
      if (equal_up_to_scalar(p, pts[0], 1e-9)) {
        acc.pass = false;
        acc.detail += "generator has order < D; ";
      }
    }
  } else if (id == "cups_differ") {
    auto s = equal_up_to_scalar(cup(Color::Z, D), cup(Color::X, D), 1e-10);
    acc.pass = !s.has_value();
    acc.detail = s ? "compact structures coincide" : "compact structures differ";
  } else if (id == "fourier_copy") {
    Mat F = generator_matrix(Generator::Fourier, D).mat;
    acc.scalar_eq(kron(F, F) * delta(Color::Z, D) * F.adjoint(), delta(Color::X, D),
                  "(F x F) delta_Z F^dagger = delta_X");
    if (acc.pass) {
      auto s = equal_up_to_scalar(kron(F, F) * delta(Color::Z, D) * F.adjoint(),
                                  delta(Color::X, D), 1e-10);
      acc.detail = "scalar " + std::to_string(s->real()) + " (1/sqrt(D) with Fig. 2 scalars)";
    }
  } else if (id == "fourier_points") {
    Mat F = generator_matrix(Generator::Fourier, D).mat;
    for (int t = 0; t < 6; ++t) {
      std::uniform_real_distribution<double> u(0, 2 * kPi);
      std::vector<double> a;
      for (unsigned k = 1; k < D; ++k) a.push_back(u(rng));
      auto p = PhaseVector::from_radians(D, a);
      acc.exact_eq(F * spider_state(Color::Z, p), spider_state(Color::X, p),
                   "F |a>_Z = |a>_X");
    }
  } else {
    throw std::invalid_argument("unknown check id '" + id + "'");
  }
  return {id, D, acc.pass, acc.dev, acc.detail};
}

json check_to_json(const CheckReport& r) {
  return {{"id", r.id}, {"D", r.D}, {"pass", r.pass}, {"deviation", r.deviation},
          {"detail", r.detail}};
}

}  // namespace quditzx
