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

#include "quditzx/diagram.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace quditzx {

std::string kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Z: return "Z";
    case NodeKind::X: return "X";
    case NodeKind::F: return "F";
    case NodeKind::Fdag: return "Fdag";
    case NodeKind::In: return "in";
    case NodeKind::Out: return "out";
  }
  return "?";
}

NodeKind kind_from_name(const std::string& s) {
  if (s == "Z") return NodeKind::Z;
  if (s == "X") return NodeKind::X;
  if (s == "F") return NodeKind::F;
  if (s == "Fdag") return NodeKind::Fdag;
  if (s == "in") return NodeKind::In;
  if (s == "out") return NodeKind::Out;
  throw std::invalid_argument("unknown node kind '" + s + "'");
}

Diagram::Diagram(unsigned D) : dim_(D) {
  if (D < 2) throw std::invalid_argument("dimension must be at least 2");
}

const Node& Diagram::node(int id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end())
    throw std::out_of_range("no node with id " + std::to_string(id));
  return it->second;
}

int Diagram::add_node(Node n) { return add_node_with_id(next_id(), std::move(n)); }

int Diagram::add_node_with_id(int id, Node n) {
  if (nodes_.count(id))
    throw std::invalid_argument("duplicate node id " + std::to_string(id));
  nodes_.emplace(id, std::move(n));
  return id;
}

int Diagram::add_spider(NodeKind k, const PhaseVector& p) {
  if (!is_spider(k)) throw std::invalid_argument("not a spider kind");
  return add_node(Node{k, p, -1});
}

int Diagram::add_z(const PhaseVector& p) { return add_spider(NodeKind::Z, p); }
int Diagram::add_x(const PhaseVector& p) { return add_spider(NodeKind::X, p); }

int Diagram::add_box(bool dagger) {
  return add_node(Node{dagger ? NodeKind::Fdag : NodeKind::F, {}, -1});
}

int Diagram::add_input(int position) {
  return add_node(Node{NodeKind::In, {}, position});
}

int Diagram::add_output(int position) {
  return add_node(Node{NodeKind::Out, {}, position});
}

void Diagram::add_edge(int src, int dst) { edges_.push_back({src, dst}); }

void Diagram::remove_node(int id) {
  std::vector<size_t> idx;
  for (size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].src == id || edges_[i].dst == id) idx.push_back(i);
  remove_edges(idx);
  nodes_.erase(id);
}

void Diagram::remove_edges(std::vector<size_t> idx) {
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  for (auto it = idx.rbegin(); it != idx.rend(); ++it)
    edges_.erase(edges_.begin() + long(*it));
}

void Diagram::set_phase(int id, const PhaseVector& p) {
  auto& n = nodes_.at(id);
  if (!is_spider(n.kind)) throw std::invalid_argument("phase on a non-spider");
  n.phase = p;
}

void Diagram::set_kind(int id, NodeKind k) {
  auto& n = nodes_.at(id);
  if (is_spider(n.kind) != is_spider(k))
    throw std::invalid_argument("kind change must keep a spider a spider");
  n.kind = k;
}

std::vector<Leg> Diagram::legs(int id) const {
  std::vector<Leg> out;
  for (size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].src == id) out.push_back({i, true});
    if (edges_[i].dst == id) out.push_back({i, false});
  }
  return out;
}

namespace {

std::vector<int> boundary_ids(const std::map<int, Node>& nodes, NodeKind k) {
  std::vector<std::pair<int, int>> v;
  for (const auto& [id, n] : nodes)
    if (n.kind == k) v.push_back({n.position, id});
  std::sort(v.begin(), v.end());
  std::vector<int> out;
  for (auto& p : v) out.push_back(p.second);
  return out;
}

}  // namespace

std::vector<int> Diagram::inputs() const { return boundary_ids(nodes_, NodeKind::In); }
std::vector<int> Diagram::outputs() const { return boundary_ids(nodes_, NodeKind::Out); }

std::string violation_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::DanglingEdge: return "DanglingEdge";
    case ViolationKind::BadBoundaryDegree: return "BadBoundaryDegree";
    case ViolationKind::BadBoxDegree: return "BadBoxDegree";
    case ViolationKind::PhaseLengthMismatch: return "PhaseLengthMismatch";
    case ViolationKind::NonContiguousBoundary: return "NonContiguousBoundary";
    case ViolationKind::BadBoundaryOrientation: return "BadBoundaryOrientation";
  }
  return "?";
}

namespace {

std::string join_violations(const std::vector<Violation>& v) {
  std::string s = "invalid diagram:";
  for (const auto& x : v) s += " [" + violation_name(x.kind) + "] " + x.message + ";";
  return s;
}

}  // namespace

InvalidDiagram::InvalidDiagram(std::vector<Violation> v)
    : std::invalid_argument(join_violations(v)), violations_(std::move(v)) {}

std::vector<Violation> violations(const Diagram& d) {
  std::vector<Violation> out;
  auto add = [&](ViolationKind k, const std::string& m) { out.push_back({k, m}); };
  for (size_t i = 0; i < d.edges().size(); ++i) {
    const Edge& e = d.edges()[i];
    if (!d.has_node(e.src) || !d.has_node(e.dst))
      add(ViolationKind::DanglingEdge,
          "edge " + std::to_string(i) + " [" + std::to_string(e.src) + "," +
              std::to_string(e.dst) + "] has a missing endpoint");
  }
  for (const auto& [id, n] : d.nodes()) {
    auto legs = d.legs(id);
    std::string who = kind_name(n.kind) + " node " + std::to_string(id);
    if (is_boundary(n.kind)) {
      if (legs.size() != 1) {
        add(ViolationKind::BadBoundaryDegree,
            who + " has degree " + std::to_string(legs.size()));
      } else if (legs[0].out != (n.kind == NodeKind::In)) {
        add(ViolationKind::BadBoundaryOrientation,
            who + (n.kind == NodeKind::In ? " must be the source of its edge"
                                          : " must be the target of its edge"));
      }
    } else if (is_box(n.kind)) {
      int nin = 0, nout = 0;
      for (const auto& l : legs) (l.out ? nout : nin)++;
      if (legs.size() != 2 || nin != 1 || nout != 1)
        add(ViolationKind::BadBoxDegree,
            who + " needs one in-port and one out-port, has " +
                std::to_string(nin) + " in and " + std::to_string(nout) + " out");
    } else if (n.phase.dim() != d.dim() ||
               n.phase.entries().size() + 1 != d.dim()) {
      add(ViolationKind::PhaseLengthMismatch,
          who + " has " + std::to_string(n.phase.entries().size()) +
              " phases, expected " + std::to_string(d.dim() - 1));
    }
  }
  for (NodeKind k : {NodeKind::In, NodeKind::Out}) {
    std::vector<int> pos;
    for (const auto& [id, n] : d.nodes())
      if (n.kind == k) pos.push_back(n.position);
    std::sort(pos.begin(), pos.end());
    for (size_t i = 0; i < pos.size(); ++i) {
      if (pos[i] != int(i)) {
        add(ViolationKind::NonContiguousBoundary,
            kind_name(k) + " positions are not 0.." + std::to_string(pos.size() - 1));
        break;
      }
    }
  }
  return out;
}

const Diagram& validate(const Diagram& d) {
  auto v = violations(d);
  if (!v.empty()) throw InvalidDiagram(std::move(v));
  return d;
}

namespace {

// Copy `src` into `dst` with ids shifted by `offset`; returns the id map.
std::map<int, int> absorb(Diagram& dst, const Diagram& src, int offset,
                          int in_shift, int out_shift, bool skip_inputs) {
  std::map<int, int> idmap;
  for (const auto& [id, n] : src.nodes()) {
    if (skip_inputs && n.kind == NodeKind::In) continue;
    Node m = n;
    if (m.kind == NodeKind::In) m.position += in_shift;
    if (m.kind == NodeKind::Out) m.position += out_shift;
    idmap[id] = dst.add_node_with_id(id + offset, m);
  }
  return idmap;
}

}  // namespace

Diagram compose(const Diagram& d1, const Diagram& d2, ComposeMode mode) {
  if (d1.dim() != d2.dim())
    throw DimensionMismatch("compose on different dimensions");
  validate(d1);
  validate(d2);
  Diagram out(d1.dim());
  out.set_scalar(d1.scalar() * d2.scalar());
  const int offset = d1.next_id();

  if (mode == ComposeMode::Parallel) {
    absorb(out, d1, 0, 0, 0, false);
    auto m2 = absorb(out, d2, offset, int(d1.inputs().size()),
                     int(d1.outputs().size()), false);
    for (const auto& e : d1.edges()) out.add_edge(e.src, e.dst);
    for (const auto& e : d2.edges()) out.add_edge(m2[e.src], m2[e.dst]);
    return out;
  }

  auto outs = d1.outputs();
  auto ins = d2.inputs();
  if (outs.size() != ins.size())
    throw ArityMismatch("sequential compose: " + std::to_string(outs.size()) +
                        " outputs vs " + std::to_string(ins.size()) + " inputs");
  // Glued boundaries disappear; the wire a -> out_i -> in_i -> b becomes a -> b.
  std::set<int> drop1(outs.begin(), outs.end());
  std::map<int, int> feeder;  // d1 output id -> source of its edge
  for (const auto& e : d1.edges())
    if (drop1.count(e.dst)) feeder[e.dst] = e.src;
  std::map<int, int> in_pos;  // d2 input id -> position
  for (size_t i = 0; i < ins.size(); ++i) in_pos[ins[i]] = int(i);

  for (const auto& [id, n] : d1.nodes())
    if (!drop1.count(id)) out.add_node_with_id(id, n);
  for (const auto& [id, n] : d2.nodes())
    if (n.kind != NodeKind::In) out.add_node_with_id(id + offset, n);
  for (const auto& e : d1.edges())
    if (!drop1.count(e.dst)) out.add_edge(e.src, e.dst);
  for (const auto& e : d2.edges()) {
    if (in_pos.count(e.src)) {
      int src = feeder.at(outs[size_t(in_pos[e.src])]);
      out.add_edge(src, e.dst + offset);
    } else {
      out.add_edge(e.src + offset, e.dst + offset);
    }
  }
  return out;
}

Diagram identity_diagram(unsigned D, int n) {
  Diagram d(D);
  for (int i = 0; i < n; ++i) {
    int a = d.add_input(i);
    int b = d.add_output(i);
    d.add_edge(a, b);
  }
  return d;
}

json to_json(const Diagram& d) {
  json j;
  j["dimension"] = d.dim();
  j["scalar"] = {d.scalar().real(), d.scalar().imag()};
  json nodes = json::array();
  for (const auto& [id, n] : d.nodes()) {
    json o{{"id", id}, {"kind", kind_name(n.kind)}};
    if (is_spider(n.kind)) o["phase"] = phase_to_json(n.phase);
    if (is_boundary(n.kind)) o["position"] = n.position;
    if (is_box(n.kind)) {
      for (const auto& l : d.legs(id)) o[l.out ? "outPort" : "inPort"] = l.edge;
    }
    nodes.push_back(o);
  }
  j["nodes"] = nodes;
  json edges = json::array();
  for (const auto& e : d.edges()) edges.push_back({e.src, e.dst});
  j["edges"] = edges;
  return j;
}

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

}  // namespace

Diagram diagram_from_json(const json& j) {
  if (!j.is_object()) parse_fail("<root>", "expected an object");
  if (!j.contains("dimension")) parse_fail("<root>", "missing field \"dimension\"");
  if (!j["dimension"].is_number_integer() || j["dimension"].get<int>() < 2)
    parse_fail("dimension", "must be an integer >= 2");
  Diagram d(j["dimension"].get<unsigned>());
  if (j.contains("scalar")) {
    const auto& s = j["scalar"];
    if (!s.is_array() || s.size() != 2 || !s[0].is_number() || !s[1].is_number())
      parse_fail("scalar", "must be [re, im]");
    d.set_scalar({s[0].get<double>(), s[1].get<double>()});
  }
  if (!j.contains("nodes") || !j["nodes"].is_array())
    parse_fail("<root>", "missing array \"nodes\"");
  if (j.contains("edges") && !j["edges"].is_array())
    parse_fail("edges", "must be an array");

  std::vector<Edge> edges;
  if (j.contains("edges")) {
    for (size_t i = 0; i < j["edges"].size(); ++i) {
      const auto& e = j["edges"][i];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
          !e[1].is_number_integer())
        parse_fail("edges[" + std::to_string(i) + "]", "must be [src, dst]");
      edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
  }

  for (size_t i = 0; i < j["nodes"].size(); ++i) {
    const auto& o = j["nodes"][i];
    std::string where = "nodes[" + std::to_string(i) + "]";
    try {
      if (!o.contains("id") || !o["id"].is_number_integer())
        parse_fail(where, "missing integer \"id\"");
      if (!o.contains("kind")) parse_fail(where, "missing \"kind\"");
      Node n;
      n.kind = kind_from_name(o["kind"].get<std::string>());
      int id = o["id"].get<int>();
      if (is_spider(n.kind)) {
        if (o.contains("phase")) {
          std::vector<Turn> t;
          for (const auto& x : o["phase"]) t.push_back(turn_from_json(x));
          // Length is checked by validate, so keep whatever was given.
          if (t.size() + 1 == d.dim())
            n.phase = PhaseVector(d.dim(), t);
          else
            n.phase = PhaseVector();
        } else {
          n.phase = PhaseVector(d.dim());
        }
      }
      if (is_boundary(n.kind)) {
        if (!o.contains("position")) parse_fail(where, "boundary needs \"position\"");
        n.position = o["position"].get<int>();
      }
      if (is_box(n.kind)) {
        for (const char* port : {"inPort", "outPort"}) {
          if (!o.contains(port)) continue;
          size_t e = o[port].get<size_t>();
          if (e >= edges.size())
            parse_fail(where + "." + port, "edge index out of range");
          bool want_dst = std::string(port) == "inPort";
          Edge& ed = edges[e];
          if ((want_dst ? ed.dst : ed.src) != id) {
            if ((want_dst ? ed.src : ed.dst) != id)
              parse_fail(where + "." + port, "edge is not incident to the box");
            std::swap(ed.src, ed.dst);
          }
        }
      }
      d.add_node_with_id(id, n);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      parse_fail(where, e.what());
    }
  }
  for (const auto& e : edges) d.add_edge(e.src, e.dst);
  return d;
}

Diagram diagram_from_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return diagram_from_json(j);
}

Diagram json_roundtrip(const Diagram& d) {
  return diagram_from_string(to_json(d).dump());
}

std::string export_dot(const Diagram& d) {
  std::ostringstream os;
  os << "digraph G {\n";
  for (const auto& [id, n] : d.nodes()) {
    os << "  n" << id << " [";
    switch (n.kind) {
      case NodeKind::Z:
      case NodeKind::X: {
        os << "shape=circle, style=filled, fillcolor="
           << (n.kind == NodeKind::Z ? "green" : "red");
        std::string lab = n.phase.is_zero() ? "" : n.phase.str();
        os << ", label=\"" << lab << "\"";
        break;
      }
      case NodeKind::F:
      case NodeKind::Fdag:
        os << "shape=square, label=\"" << (n.kind == NodeKind::F ? "F" : "F+")
           << "\"";
        break;
      case NodeKind::In:
      case NodeKind::Out:
        os << "shape=plaintext, label=\"" << kind_name(n.kind) << n.position
           << "\"";
        break;
    }
    os << "];\n";
  }
  for (const auto& e : d.edges()) os << "  n" << e.src << " -> n" << e.dst << ";\n";
  os << "}\n";
  return os.str();
}

namespace {

using EdgeCount = std::map<std::pair<int, int>, int>;

EdgeCount count_edges(const Diagram& d) {
  EdgeCount c;
  for (const auto& e : d.edges()) c[{e.src, e.dst}]++;
  return c;
}

int lookup(const EdgeCount& c, int a, int b) {
  auto it = c.find({a, b});
  return it == c.end() ? 0 : it->second;
}

bool same_label(const Node& a, const Node& b) {
  if (a.kind != b.kind) return false;
  if (is_spider(a.kind)) return a.phase == b.phase;
  if (is_boundary(a.kind)) return a.position == b.position;
  return true;
}

}  // namespace

bool isomorphic(const Diagram& a, const Diagram& b) {
  if (a.dim() != b.dim() || a.scalar() != b.scalar()) return false;
  if (a.nodes().size() != b.nodes().size() || a.edges().size() != b.edges().size())
    return false;
  EdgeCount ca = count_edges(a), cb = count_edges(b);

  // Visit boundaries first, then the rest in breadth-first order from them.
  std::vector<int> order;
  std::set<int> seen;
  for (const auto& [id, n] : a.nodes())
    if (is_boundary(n.kind)) { order.push_back(id); seen.insert(id); }
  for (const auto& [id, n] : a.nodes()) {
    if (seen.count(id)) continue;
    order.push_back(id);
    seen.insert(id);
  }
  std::vector<int> bfs;
  std::set<int> placed;
  std::vector<int> queue;
  for (int s : order) {
    if (placed.count(s)) continue;
    queue.assign(1, s);
    placed.insert(s);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int u = queue[qi];
      bfs.push_back(u);
      for (const auto& l : a.legs(u)) {
        const Edge& e = a.edges()[l.edge];
        int v = l.out ? e.dst : e.src;
        if (!placed.count(v)) { placed.insert(v); queue.push_back(v); }
      }
    }
  }

  std::map<int, int> fwd;
  std::set<int> used;
  std::function<bool(size_t)> go = [&](size_t i) -> bool {
    if (i == bfs.size()) return true;
    int u = bfs[i];
    const Node& nu = a.node(u);
    for (const auto& [v, nv] : b.nodes()) {
      if (used.count(v) || !same_label(nu, nv)) continue;
      if (a.degree(u) != b.degree(v)) continue;
      if (lookup(ca, u, u) != lookup(cb, v, v)) continue;
      bool ok = true;
      for (const auto& [w, w2] : fwd) {
        if (lookup(ca, u, w) != lookup(cb, v, w2) ||
            lookup(ca, w, u) != lookup(cb, w2, v)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      fwd[u] = v;
      used.insert(v);
      if (go(i + 1)) return true;
      fwd.erase(u);
      used.erase(v);
    }
    return false;
  };
  return go(0);
}

uint64_t diagram_hash(const Diagram& d) {
  std::string s = to_json(d).dump();
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace quditzx
