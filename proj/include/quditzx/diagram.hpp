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

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "quditzx/phase.hpp"

namespace quditzx {

using cplx = std::complex<double>;

enum class NodeKind { Z, X, F, Fdag, In, Out };

std::string kind_name(NodeKind k);
NodeKind kind_from_name(const std::string& s);

inline bool is_spider(NodeKind k) { return k == NodeKind::Z || k == NodeKind::X; }
inline bool is_box(NodeKind k) { return k == NodeKind::F || k == NodeKind::Fdag; }
inline bool is_boundary(NodeKind k) {
  return k == NodeKind::In || k == NodeKind::Out;
}

struct Node {
  NodeKind kind = NodeKind::Z;
  PhaseVector phase;  // spiders only
  int position = -1;  // boundaries only
};

/**
 * A wire from src to dst. For the source it is an output leg, for the
 * destination an input leg. Z spiders ignore the distinction; X spiders and
 * boxes do not.
 */
struct Edge {
  int src = 0;
  int dst = 0;
  bool operator==(const Edge& o) const { return src == o.src && dst == o.dst; }
};

/** One endpoint of an edge as seen from a node. */
struct Leg {
  size_t edge;
  bool out;  // true when the node is the edge's source
};

class Diagram {
 public:
  Diagram() = default;
  explicit Diagram(unsigned D);

  unsigned dim() const { return dim_; }
  cplx scalar() const { return scalar_; }
  void set_scalar(cplx s) { scalar_ = s; }
  void scale(cplx s) { scalar_ *= s; }

  const std::map<int, Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Node& node(int id) const;
  bool has_node(int id) const { return nodes_.count(id) != 0; }

  int next_id() const { return nodes_.empty() ? 0 : nodes_.rbegin()->first + 1; }

  int add_node(Node n);
  int add_node_with_id(int id, Node n);
  int add_z(const PhaseVector& p);
  int add_x(const PhaseVector& p);
  int add_z() { return add_z(PhaseVector(dim_)); }
  int add_x() { return add_x(PhaseVector(dim_)); }
  int add_spider(NodeKind k, const PhaseVector& p);
  int add_box(bool dagger);
  int add_input(int position);
  int add_output(int position);
  void add_edge(int src, int dst);

  void remove_node(int id);  // also removes incident edges
  void remove_edges(std::vector<size_t> idx);
  void set_phase(int id, const PhaseVector& p);
  void set_kind(int id, NodeKind k);
  void set_edge(size_t i, Edge e) { edges_.at(i) = e; }

  /** Legs in edge order; a self-loop yields an out leg and an in leg. */
  std::vector<Leg> legs(int id) const;
  size_t degree(int id) const { return legs(id).size(); }

  /** Boundary ids sorted by position. */
  std::vector<int> inputs() const;
  std::vector<int> outputs() const;

 private:
  unsigned dim_ = 2;
  cplx scalar_{1.0, 0.0};
  std::map<int, Node> nodes_;
  std::vector<Edge> edges_;
};

enum class ViolationKind {
  DanglingEdge,
  BadBoundaryDegree,
  BadBoxDegree,
  PhaseLengthMismatch,
  NonContiguousBoundary,
  BadBoundaryOrientation,
};

std::string violation_name(ViolationKind k);

struct Violation {
  ViolationKind kind;
  std::string message;
};

class InvalidDiagram : public std::invalid_argument {
 public:
  explicit InvalidDiagram(std::vector<Violation> v);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArityMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::vector<Violation> violations(const Diagram& d);
/** Returns d unchanged, or throws InvalidDiagram listing every violation. */
const Diagram& validate(const Diagram& d);

enum class ComposeMode { Sequential, Parallel };

/** Sequential: outputs of d1 feed inputs of d2. */
Diagram compose(const Diagram& d1, const Diagram& d2, ComposeMode mode);

/** A bare wire on `n` parallel qudits. */
Diagram identity_diagram(unsigned D, int n = 1);

json to_json(const Diagram& d);
Diagram diagram_from_json(const json& j);
Diagram diagram_from_string(const std::string& text);
Diagram json_roundtrip(const Diagram& d);

std::string export_dot(const Diagram& d);

/** Isomorphism preserving kinds, phases, boundary positions and edge directions. */
bool isomorphic(const Diagram& a, const Diagram& b);

/** FNV-1a over the canonical JSON text. */
uint64_t diagram_hash(const Diagram& d);

}  // namespace quditzx
