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

#include "quditzx/rewrite.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "quditzx/semantics.hpp"

namespace quditzx {

std::string rule_name(RuleId r) {
  switch (r) {
    case RuleId::S_fuse: return "S_fuse";
    case RuleId::D_identity: return "D_identity";
    case RuleId::B_copy: return "B_copy";
    case RuleId::B_bialgebra: return "B_bialgebra";
    case RuleId::K2_commute: return "K2_commute";
    case RuleId::F1_color: return "F1_color";
    case RuleId::F2_cancel: return "F2_cancel";
    case RuleId::L_loop: return "L_loop";
  }
  return "?";
}

RuleId rule_from_name(const std::string& s) {
  for (RuleId r : all_rules())
    if (rule_name(r) == s) return r;
  if (s == "K1" || s == "K1_copy") return RuleId::B_copy;
  throw std::invalid_argument("unknown rule '" + s + "'");
}

std::vector<RuleId> all_rules() {
  return {RuleId::S_fuse,     RuleId::D_identity, RuleId::B_copy,
          RuleId::B_bialgebra, RuleId::K2_commute, RuleId::F1_color,
          RuleId::F2_cancel,  RuleId::L_loop};
}

namespace {

NodeKind other_colour(NodeKind k) { return k == NodeKind::Z ? NodeKind::X : NodeKind::Z; }

int far_end(const Diagram& d, int /*id*/, const Leg& l) {
  const Edge& e = d.edges()[l.edge];
  return l.out ? e.dst : e.src;
}

bool is_loop(const Diagram& d, size_t e) { return d.edges()[e].src == d.edges()[e].dst; }

int64_t mod(int64_t a, int64_t m) {
  int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// Phase of a classical point of the opposite colour that sits on a Z-basis
// (for red) or Fourier-basis (for green) value `c`, as an output leg.
PhaseVector out_point(NodeKind colour, unsigned D, int64_t c) {
  return PhaseVector::shift(D, colour == NodeKind::X ? -c : c);
}

// Map of colour `colour` that adds `idx` to the value passing through it.
PhaseVector map_phase(NodeKind colour, unsigned D, int64_t idx) {
  return PhaseVector::shift(D, colour == NodeKind::X ? -idx : idx);
}

int64_t map_index(const Node& m, unsigned D) {
  int64_t s = *m.phase.shift_index();
  return m.kind == NodeKind::X ? mod(-s, D) : s;
}

// ---- matching --------------------------------------------------------------

std::vector<Site> match_fuse(const Diagram& d) {
  std::set<std::pair<int, int>> pairs;
  for (const auto& e : d.edges()) {
    if (e.src == e.dst) continue;
    const Node& a = d.node(e.src);
    const Node& b = d.node(e.dst);
    if (is_spider(a.kind) && a.kind == b.kind)
      pairs.insert({std::min(e.src, e.dst), std::max(e.src, e.dst)});
  }
  std::vector<Site> out;
  for (auto [a, b] : pairs) out.push_back({RuleId::S_fuse, {a, b}});
  return out;
}

std::vector<Site> match_loop(const Diagram& d) {
  std::set<int> ids;
  for (const auto& e : d.edges())
    if (e.src == e.dst && is_spider(d.node(e.src).kind)) ids.insert(e.src);
  std::vector<Site> out;
  for (int s : ids) out.push_back({RuleId::L_loop, {s}});
  return out;
}

bool identity_matches(const Diagram& d, int s) {
  const Node& n = d.node(s);
  if (!is_spider(n.kind) || !n.phase.is_zero()) return false;
  auto legs = d.legs(s);
  if (legs.size() != 2 || legs[0].edge == legs[1].edge) return false;
  if (legs[0].out != legs[1].out) return true;
  if (n.kind != NodeKind::Z) return false;
  // Same-role legs: one neighbour's leg must change role, so it must be a Z spider.
  return d.node(far_end(d, s, legs[0])).kind == NodeKind::Z ||
         d.node(far_end(d, s, legs[1])).kind == NodeKind::Z;
}

std::vector<Site> match_identity(const Diagram& d) {
  std::vector<Site> out;
  for (const auto& [id, n] : d.nodes())
    if (identity_matches(d, id)) out.push_back({RuleId::D_identity, {id}});
  return out;
}

std::vector<Site> match_copy(const Diagram& d) {
  std::vector<Site> out;
  for (const auto& [id, n] : d.nodes()) {
    if (!is_spider(n.kind)) continue;
    auto legs = d.legs(id);
    if (legs.size() != 1) continue;
    if (!n.phase.shift_index()) continue;
    int g = far_end(d, id, legs[0]);
    if (d.node(g).kind != other_colour(n.kind)) continue;
    out.push_back({RuleId::B_copy, {id, g}});
  }
  return out;
}

bool is_map_node(const Diagram& d, int id) {
  const Node& n = d.node(id);
  if (!is_spider(n.kind) || !n.phase.shift_index()) return false;
  auto legs = d.legs(id);
  return legs.size() == 2 && legs[0].edge != legs[1].edge && legs[0].out != legs[1].out;
}

std::vector<Site> match_commute(const Diagram& d) {
  std::vector<Site> out;
  for (const auto& [id, n] : d.nodes()) {
    if (!is_map_node(d, id)) continue;
    auto legs = d.legs(id);
    int a = far_end(d, id, legs[0]), b = far_end(d, id, legs[1]);
    if (a == b) continue;
    for (int g : {a, b})
      if (d.node(g).kind == other_colour(n.kind)) out.push_back({RuleId::K2_commute, {id, g}});
  }
  return out;
}

bool colour_matches(const Diagram& d, int s) {
  const Node& n = d.node(s);
  if (!is_spider(n.kind)) return false;
  auto legs = d.legs(s);
  if (legs.empty()) return false;
  std::set<int> boxes;
  for (const auto& l : legs) {
    if (is_loop(d, l.edge)) return false;
    int b = far_end(d, s, l);
    NodeKind want = (n.kind == NodeKind::Z) == l.out ? NodeKind::F : NodeKind::Fdag;
    if (d.node(b).kind != want || !boxes.insert(b).second) return false;
  }
  for (int b : boxes)
    for (const auto& l : d.legs(b)) {
      int y = far_end(d, b, l);
      if (y != s && boxes.count(y)) return false;
    }
  return true;
}

std::vector<Site> match_colour(const Diagram& d) {
  std::vector<Site> out;
  for (const auto& [id, n] : d.nodes())
    if (colour_matches(d, id)) out.push_back({RuleId::F1_color, {id}});
  return out;
}

std::vector<Site> match_cancel(const Diagram& d) {
  std::vector<Site> out;
  std::set<std::vector<int>> seen;
  for (const auto& e : d.edges()) {
    if (e.src == e.dst) continue;
    NodeKind a = d.node(e.src).kind, b = d.node(e.dst).kind;
    if (!is_box(a) || !is_box(b) || a == b) continue;
    std::vector<int> site{e.src, e.dst};
    // A closed F F-dagger loop is one site, reported lowest id first.
    bool closed = far_end(d, e.dst, d.legs(e.dst)[0]) == e.src &&
                  far_end(d, e.dst, d.legs(e.dst)[1]) == e.src;
    if (closed) std::sort(site.begin(), site.end());
    if (seen.insert(site).second) out.push_back({RuleId::F2_cancel, site});
  }
  return out;
}

bool bialgebra_matches(const Diagram& d, int u, int v) {
  const Node& nu = d.node(u);
  const Node& nv = d.node(v);
  if (!is_spider(nu.kind) || nv.kind != other_colour(nu.kind)) return false;
  if (!nu.phase.is_zero() || !nv.phase.is_zero()) return false;
  auto lu = d.legs(u), lv = d.legs(v);
  if (lu.size() != 3 || lv.size() != 3) return false;
  int uin = 0, uout = 0, vin = 0, vout = 0;
  for (const auto& l : lu) {
    int y = far_end(d, u, l);
    if (l.out) {
      if (y != v) return false;
      ++uout;
    } else {
      if (y == u || y == v) return false;
      ++uin;
    }
  }
  for (const auto& l : lv) {
    int y = far_end(d, v, l);
    if (!l.out) {
      if (y != u) return false;
      ++vin;
    } else {
      if (y == u || y == v) return false;
      ++vout;
    }
  }
  return uin == 2 && uout == 1 && vin == 1 && vout == 2;
}

std::vector<Site> match_bialgebra(const Diagram& d) {
  std::vector<Site> out;
  std::set<std::pair<int, int>> seen;
  for (const auto& e : d.edges())
    if (e.src != e.dst && bialgebra_matches(d, e.src, e.dst) && seen.insert({e.src, e.dst}).second)
      out.push_back({RuleId::B_bialgebra, {e.src, e.dst}});
  return out;
}

// ---- application -----------------------------------------------------------

RewriteResult do_fuse(const Diagram& d, int a, int b) {
  Diagram out = d;
  bool first = true;
  std::vector<size_t> drop;
  for (size_t i = 0; i < out.edges().size(); ++i) {
    Edge e = out.edges()[i];
    bool conn = (e.src == a && e.dst == b) || (e.src == b && e.dst == a);
    if (conn) {
      if (first) {
        drop.push_back(i);
        first = false;
      } else {
        out.set_edge(i, {a, a});
      }
      continue;
    }
    if (e.src == b) e.src = a;
    if (e.dst == b) e.dst = a;
    out.set_edge(i, e);
  }
  out.remove_edges(drop);
  out.set_phase(a, phase_add(d.node(a).phase, d.node(b).phase));
  out.remove_node(b);
  return {out, {a}};
}

RewriteResult do_loop(const Diagram& d, int s) {
  Diagram out = d;
  for (size_t i = 0; i < out.edges().size(); ++i)
    if (out.edges()[i].src == s && out.edges()[i].dst == s) {
      out.remove_edges({i});
      break;
    }
  return {out, {s}};
}

RewriteResult do_identity(const Diagram& d, int s) {
  auto legs = d.legs(s);
  int n0 = far_end(d, s, legs[0]), n1 = far_end(d, s, legs[1]);
  Edge ne;
  if (legs[0].out != legs[1].out) {
    ne = legs[0].out ? Edge{n1, n0} : Edge{n0, n1};
  } else if (legs[0].out) {
    // s -> n0, s -> n1: the new source's leg turns from input to output.
    ne = d.node(n0).kind == NodeKind::Z ? Edge{n0, n1} : Edge{n1, n0};
  } else {
    // n0 -> s, n1 -> s: the new target's leg turns from output to input.
    ne = d.node(n1).kind == NodeKind::Z ? Edge{n0, n1} : Edge{n1, n0};
  }
  Diagram out = d;
  out.remove_node(s);
  out.add_edge(ne.src, ne.dst);
  return {out, {}};
}

RewriteResult do_copy(const Diagram& d, int s, int g) {
  const unsigned D = d.dim();
  const Node& ns = d.node(s);
  const Node& ng = d.node(g);
  const Leg sl = d.legs(s)[0];
  int64_t t = *ns.phase.shift_index();
  int64_t j = ns.kind == NodeKind::X ? mod(-t, D) : t;
  int64_t c = sl.out ? j : mod(-j, D);

  Diagram out = d;
  std::vector<std::pair<Leg, int>> rest;  // leg of g, far node
  for (const auto& l : d.legs(g)) {
    if (l.edge == sl.edge || is_loop(d, l.edge)) continue;
    rest.push_back({l, far_end(d, g, l)});
  }
  out.remove_node(s);
  out.remove_node(g);
  std::vector<int> produced;
  for (const auto& [l, y] : rest) {
    PhaseVector p = out_point(ns.kind, D, l.out ? c : -c);
    int n = out.add_spider(ns.kind, p);
    produced.push_back(n);
    if (l.out)
      out.add_edge(n, y);
    else
      out.add_edge(y, n);
  }
  double L = double(rest.size());
  out.scale(std::polar(1.0, ng.phase.alpha(unsigned(c)).radians()) *
            std::pow(std::sqrt(double(D)), 1.0 - L));
  return {out, produced};
}

RewriteResult do_commute(const Diagram& d, int m, int g) {
  const unsigned D = d.dim();
  const Node& nm = d.node(m);
  const Node& ng = d.node(g);
  int64_t j = map_index(nm, D);
  auto mlegs = d.legs(m);
  const Leg& to_g = far_end(d, m, mlegs[0]) == g ? mlegs[0] : mlegs[1];
  const Leg& to_y = far_end(d, m, mlegs[0]) == g ? mlegs[1] : mlegs[0];
  int y = far_end(d, m, to_y);
  bool on_out_leg = !to_g.out;  // g -> m means the map sits on g's output
  int64_t t = on_out_leg ? j : mod(-j, D);
  unsigned k = unsigned(mod(-t, D));

  std::vector<std::pair<Leg, int>> rest;
  for (const auto& l : d.legs(g)) {
    if (l.edge == to_g.edge || is_loop(d, l.edge)) continue;
    rest.push_back({l, far_end(d, g, l)});
  }
  Diagram out = d;
  out.remove_node(m);
  if (on_out_leg)
    out.add_edge(g, y);
  else
    out.add_edge(y, g);
  // Redirect the remaining legs of g through fresh maps.
  std::vector<size_t> drop;
  std::vector<std::pair<Leg, int>> relink;
  for (size_t i = 0; i < out.edges().size(); ++i) {
    const Edge& e = out.edges()[i];
    if (e.src == e.dst) continue;
    if ((e.src == g || e.dst == g) && i + 1 != out.edges().size()) drop.push_back(i);
  }
  out.remove_edges(drop);
  std::vector<int> produced{g};
  for (const auto& [l, z] : rest) {
    int n = out.add_spider(nm.kind, map_phase(nm.kind, D, l.out ? -t : t));
    produced.push_back(n);
    if (l.out) {
      out.add_edge(g, n);
      out.add_edge(n, z);
    } else {
      out.add_edge(z, n);
      out.add_edge(n, g);
    }
  }
  out.set_phase(g, phase_neg_transform(ng.phase, k));
  out.scale(std::polar(1.0, ng.phase.alpha(k).radians()));
  return {out, produced};
}

RewriteResult do_colour(const Diagram& d, int s) {
  Diagram out = d;
  std::vector<std::pair<Leg, int>> legs;
  for (const auto& l : d.legs(s)) legs.push_back({l, far_end(d, s, l)});
  std::vector<Edge> fresh;
  for (const auto& [l, b] : legs) {
    for (const auto& bl : d.legs(b)) {
      int y = far_end(d, b, bl);
      if (y == s) continue;
      fresh.push_back(l.out ? Edge{s, y} : Edge{y, s});
    }
  }
  for (const auto& [l, b] : legs) out.remove_node(b);
  for (const auto& e : fresh) out.add_edge(e.src, e.dst);
  out.set_kind(s, other_colour(d.node(s).kind));
  return {out, {s}};
}

RewriteResult do_cancel(const Diagram& d, int b1, int b2) {
  Diagram out = d;
  int a = -1, c = -1;
  bool closed = true;
  for (const auto& l : d.legs(b1)) {
    int y = far_end(d, b1, l);
    if (y != b2) closed = false;
  }
  if (closed) {
    out.remove_node(b1);
    out.remove_node(b2);
    out.scale(double(d.dim()));
    return {out, {}};
  }
  // Find the chain a -> first -> second -> c, whichever of b1/b2 is first.
  int first = b1, second = b2;
  for (const auto& l : d.legs(b2))
    if (l.out && far_end(d, b2, l) == b1) std::swap(first, second);
  for (const auto& l : d.legs(first))
    if (!l.out) a = far_end(d, first, l);
  for (const auto& l : d.legs(second))
    if (l.out) c = far_end(d, second, l);
  out.remove_node(b1);
  out.remove_node(b2);
  out.add_edge(a, c);
  return {out, {}};
}

RewriteResult do_bialgebra(const Diagram& d, int u, int v) {
  std::vector<int> ins, outs;
  for (const auto& l : d.legs(u))
    if (!l.out) ins.push_back(far_end(d, u, l));
  for (const auto& l : d.legs(v))
    if (l.out) outs.push_back(far_end(d, v, l));
  NodeKind ku = d.node(u).kind, kv = d.node(v).kind;
  Diagram out = d;
  out.remove_node(u);
  out.remove_node(v);
  PhaseVector zero(d.dim());
  int c0 = out.add_spider(kv, zero), c1 = out.add_spider(kv, zero);
  int m0 = out.add_spider(ku, zero), m1 = out.add_spider(ku, zero);
  out.add_edge(ins[0], c0);
  out.add_edge(ins[1], c1);
  for (int c : {c0, c1})
    for (int m : {m0, m1}) out.add_edge(c, m);
  out.add_edge(m0, outs[0]);
  out.add_edge(m1, outs[1]);
  out.scale(std::sqrt(double(d.dim())));
  return {out, {c0, c1, m0, m1}};
}

}  // namespace

std::vector<Site> find_matches(const Diagram& d, RuleId r) {
  validate(d);
  std::vector<Site> s;
  switch (r) {
    case RuleId::S_fuse: s = match_fuse(d); break;
    case RuleId::L_loop: s = match_loop(d); break;
    case RuleId::D_identity: s = match_identity(d); break;
    case RuleId::B_copy: s = match_copy(d); break;
    case RuleId::K2_commute: s = match_commute(d); break;
    case RuleId::F1_color: s = match_colour(d); break;
    case RuleId::F2_cancel: s = match_cancel(d); break;
    case RuleId::B_bialgebra: s = match_bialgebra(d); break;
  }
  std::sort(s.begin(), s.end(),
            [](const Site& a, const Site& b) { return a.nodes < b.nodes; });
  return s;
}

RewriteResult apply_rule_traced(const Diagram& d, const Site& site) {
  if (site.rule == RuleId::B_copy || site.rule == RuleId::K2_commute) {
    if (!site.nodes.empty() && d.has_node(site.nodes[0])) {
      const Node& n = d.node(site.nodes[0]);
      if (is_spider(n.kind) && !n.phase.is_exact())
        throw NonExactPhase(rule_name(site.rule) + " needs an exact classical-point phase on node " +
                            std::to_string(site.nodes[0]));
    }
  }
  auto ms = find_matches(d, site.rule);
  if (std::find(ms.begin(), ms.end(), site) == ms.end()) {
    std::string ids;
    for (int n : site.nodes) ids += " " + std::to_string(n);
    throw StaleSite(rule_name(site.rule) + " does not match at nodes" + ids);
  }
  const auto& n = site.nodes;
  switch (site.rule) {
    case RuleId::S_fuse: return do_fuse(d, n[0], n[1]);
    case RuleId::L_loop: return do_loop(d, n[0]);
    case RuleId::D_identity: return do_identity(d, n[0]);
    case RuleId::B_copy: return do_copy(d, n[0], n[1]);
    case RuleId::K2_commute: return do_commute(d, n[0], n[1]);
    case RuleId::F1_color: return do_colour(d, n[0]);
    case RuleId::F2_cancel: return do_cancel(d, n[0], n[1]);
    case RuleId::B_bialgebra: return do_bialgebra(d, n[0], n[1]);
  }
  throw std::logic_error("unreachable");
}

Diagram apply_rule(const Diagram& d, RuleId r, const Site& site) {
  if (site.rule != r) throw StaleSite("site belongs to " + rule_name(site.rule));
  return apply_rule_traced(d, site).diagram;
}

RewriteResult split_spider(const Diagram& d, int node, const std::vector<size_t>& edges,
                           const PhaseVector& phase) {
  validate(d);
  const Node& n = d.node(node);
  if (!is_spider(n.kind)) throw std::invalid_argument("split_spider on a non-spider");
  Diagram out = d;
  int fresh = out.add_spider(n.kind, phase);
  for (size_t i : edges) {
    Edge e = out.edges().at(i);
    if (e.src != node && e.dst != node)
      throw std::invalid_argument("edge " + std::to_string(i) + " is not incident to the spider");
    if (e.src == node) e.src = fresh;
    if (e.dst == node) e.dst = fresh;
    out.set_edge(i, e);
  }
  out.set_phase(node, phase_add(n.phase, phase_invert(phase)));
  out.add_edge(node, fresh);
  return {out, {node, fresh}};
}

RewriteResult insert_fourier_pair(const Diagram& d, size_t edge, bool f_first) {
  validate(d);
  Diagram out = d;
  Edge e = out.edges().at(edge);
  int b1 = out.add_box(!f_first), b2 = out.add_box(f_first);
  out.remove_edges({edge});
  out.add_edge(e.src, b1);
  out.add_edge(b1, b2);
  out.add_edge(b2, e.dst);
  return {out, {b1, b2}};
}

std::pair<Diagram, RewriteTrace> simplify(const Diagram& d) {
  validate(d);
  static const RuleId order[] = {RuleId::F2_cancel, RuleId::S_fuse, RuleId::L_loop,
                                 RuleId::D_identity, RuleId::B_copy};
  RewriteTrace tr;
  tr.initial_hash = diagram_hash(d);
  Diagram cur = d;
  for (;;) {
    bool stepped = false;
    for (RuleId r : order) {
      auto ms = find_matches(cur, r);
      if (ms.empty()) continue;
      size_t before = cur.edges().size();
      auto res = apply_rule_traced(cur, ms.front());
      if (res.diagram.edges().size() >= before)
        throw std::logic_error("simplify step did not reduce the edge count");
      tr.steps.push_back({r, ms.front().nodes, res.produced});
      cur = std::move(res.diagram);
      stepped = true;
      break;
    }
    if (!stepped) break;
  }
  tr.final_hash = diagram_hash(cur);
  return {cur, tr};
}

Diagram replay(const Diagram& initial, const RewriteTrace& trace) {
  if (diagram_hash(initial) != trace.initial_hash)
    throw std::invalid_argument("replay: initial diagram hash differs from trace");
  Diagram cur = initial;
  for (const auto& s : trace.steps) {
    auto res = apply_rule_traced(cur, {s.rule, s.matched});
    if (res.produced != s.produced)
      throw std::runtime_error("replay: produced nodes differ at " + rule_name(s.rule));
    cur = std::move(res.diagram);
  }
  if (diagram_hash(cur) != trace.final_hash)
    throw std::runtime_error("replay: final hash differs from trace");
  return cur;
}

json trace_to_json(const RewriteTrace& t) {
  json steps = json::array();
  for (const auto& s : t.steps)
    steps.push_back({{"rule", rule_name(s.rule)}, {"matched", s.matched}, {"produced", s.produced}});
  return {{"initial_hash", t.initial_hash}, {"final_hash", t.final_hash}, {"steps", steps}};
}

RewriteTrace trace_from_json(const json& j) {
  RewriteTrace t;
  t.initial_hash = j.at("initial_hash").get<uint64_t>();
  t.final_hash = j.at("final_hash").get<uint64_t>();
  for (const auto& s : j.at("steps"))
    t.steps.push_back({rule_from_name(s.at("rule").get<std::string>()),
                       s.at("matched").get<std::vector<int>>(),
                       s.at("produced").get<std::vector<int>>()});
  return t;
}

// ---- soundness harness -----------------------------------------------------

namespace {

struct Builder {
  Diagram d;
  std::mt19937_64& rng;
  int nin = 0, nout = 0;

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

  PhaseVector random_phase() {
    const unsigned D = d.dim();
    if (coin(0.2)) {
      std::vector<double> r;
      std::uniform_real_distribution<double> u(0, 6.283185307179586);
      for (unsigned k = 1; k < D; ++k) r.push_back(u(rng));
      return PhaseVector::from_radians(D, r);
    }
    std::vector<Rational> t;
    for (unsigned k = 1; k < D; ++k) t.push_back(Rational(uniform(0, 2 * int(D) - 1), 2 * D));
    return PhaseVector::from_turns(D, t);
  }
  NodeKind colour() { return coin() ? NodeKind::Z : NodeKind::X; }
  int in_to(int n) {
    int b = d.add_input(nin++);
    d.add_edge(b, n);
    return b;
  }
  int out_from(int n) {
    int b = d.add_output(nout++);
    d.add_edge(n, b);
    return b;
  }
  void boundary_legs(int n, int max_total) {
    int a = uniform(0, std::min(2, max_total));
    int b = uniform(0, std::min(2, max_total - a));
    for (int i = 0; i < a; ++i) in_to(n);
    for (int i = 0; i < b; ++i) out_from(n);
  }
};

}  // namespace

Diagram random_instance(RuleId r, unsigned D, uint64_t seed) {
  std::mt19937_64 rng(seed);
  Builder B{Diagram(D), rng};
  Diagram& d = B.d;
  switch (r) {
    case RuleId::S_fuse: {
      NodeKind c = B.colour();
      int a = d.add_spider(c, B.random_phase()), b = d.add_spider(c, B.random_phase());
      int k = B.uniform(1, 2);
      for (int i = 0; i < k; ++i) B.coin() ? d.add_edge(a, b) : d.add_edge(b, a);
      B.boundary_legs(a, 4 - k);
      B.boundary_legs(b, 4 - k);
      break;
    }
    case RuleId::L_loop: {
      int s = d.add_spider(B.colour(), B.random_phase());
      int k = B.uniform(1, 2);
      for (int i = 0; i < k; ++i) d.add_edge(s, s);
      B.boundary_legs(s, 3);
      break;
    }
    case RuleId::D_identity: {
      NodeKind c = B.colour();
      int s = d.add_spider(c, PhaseVector(D));
      int pattern = c == NodeKind::X ? 0 : B.uniform(0, 2);
      auto neighbour = [&]() {
        int n = d.add_spider(NodeKind::Z, B.random_phase());
        B.boundary_legs(n, 2);
        return n;
      };
      if (pattern == 0) {
        int a = B.coin() ? neighbour() : -1;
        int z = B.coin() ? neighbour() : -1;
        if (a < 0) B.in_to(s); else d.add_edge(a, s);
        if (z < 0) B.out_from(s); else d.add_edge(s, z);
      } else if (pattern == 1) {
        int a = neighbour();
        d.add_edge(s, a);
        if (B.coin()) B.out_from(s); else d.add_edge(s, neighbour());
      } else {
        int a = neighbour();
        d.add_edge(a, s);
        if (B.coin()) B.in_to(s); else d.add_edge(neighbour(), s);
      }
      break;
    }
    case RuleId::B_copy: {
      NodeKind c = B.colour();
      int g = d.add_spider(c, B.random_phase());
      int s = d.add_spider(other_colour(c), PhaseVector::shift(D, B.uniform(0, int(D) - 1)));
      B.coin() ? d.add_edge(s, g) : d.add_edge(g, s);
      if (B.coin(0.3)) d.add_edge(g, g);
      B.boundary_legs(g, 3);
      break;
    }
    case RuleId::K2_commute: {
      NodeKind c = B.colour();
      int g = d.add_spider(c, B.random_phase());
      int m = d.add_spider(other_colour(c), PhaseVector::shift(D, B.uniform(0, int(D) - 1)));
      if (B.coin()) {
        d.add_edge(g, m);
        B.out_from(m);
      } else {
        B.in_to(m);
        d.add_edge(m, g);
      }
      if (B.coin(0.3)) d.add_edge(g, g);
      B.boundary_legs(g, 3);
      break;
    }
    case RuleId::F1_color: {
      NodeKind c = B.colour();
      int s = d.add_spider(c, B.random_phase());
      int k = B.uniform(1, 3);
      for (int i = 0; i < k; ++i) {
        bool out = B.coin();
        bool dag = (c == NodeKind::Z) != out;
        int b = d.add_box(dag);
        if (out) {
          d.add_edge(s, b);
          B.out_from(b);
        } else {
          B.in_to(b);
          d.add_edge(b, s);
        }
      }
      break;
    }
    case RuleId::F2_cancel: {
      bool f_first = B.coin();
      int variant = B.uniform(0, 2);
      int b1 = d.add_box(!f_first), b2 = d.add_box(f_first);
      d.add_edge(b1, b2);
      if (variant == 0) {
        d.add_edge(b2, b1);
        int w = d.add_z();
        B.in_to(w);
        B.out_from(w);
      } else {
        int a = variant == 1 ? -1 : d.add_spider(B.colour(), B.random_phase());
        if (a < 0) B.in_to(b1);
        else {
          B.boundary_legs(a, 2);
          d.add_edge(a, b1);
        }
        B.out_from(b2);
      }
      break;
    }
    case RuleId::B_bialgebra: {
      NodeKind c = B.colour();
      int u = d.add_spider(c, PhaseVector(D)), v = d.add_spider(other_colour(c), PhaseVector(D));
      B.in_to(u);
      B.in_to(u);
      d.add_edge(u, v);
      B.out_from(v);
      B.out_from(v);
      break;
    }
  }
  return d;
}

SoundnessReport soundness_report(RuleId r, unsigned D, int trials, uint64_t seed, double tol) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  SoundnessReport rep{};
  rep.rule = r;
  rep.D = D;
  rep.trials = trials;
  rep.seed = seed;
  std::mt19937_64 master(seed);
  for (int t = 0; t < trials; ++t) {
    uint64_t s = master();
    try {
      Diagram lhs = random_instance(r, D, s);
      auto sites = find_matches(lhs, r);
      if (sites.empty()) throw std::logic_error("generated instance has no match");
      std::mt19937_64 pick(s ^ 0x9e3779b97f4a7c15ULL);
      const Site& site = sites[pick() % sites.size()];
      Diagram rhs = apply_rule(lhs, r, site);
      auto A = evaluate(lhs), Bm = evaluate(rhs);
      if (A.in_arity != Bm.in_arity || A.out_arity != Bm.out_arity)
        throw std::logic_error("arity changed");
      double scale = std::max(1e-300, A.mat.cwiseAbs().maxCoeff());
      if (scale < tol && Bm.mat.cwiseAbs().maxCoeff() < tol) {
        ++rep.exact;
        ++rep.passed;
        continue;
      }
      double exact_dev = max_abs_diff(A.mat, Bm.mat) / scale;
      Eigen::Index i = 0, j = 0;
      Bm.mat.cwiseAbs().maxCoeff(&i, &j);
      cplx sc = A.mat(i, j) / Bm.mat(i, j);
      double prop_dev = max_abs_diff(A.mat, sc * Bm.mat) / scale;
      rep.worst_deviation = std::max(rep.worst_deviation, prop_dev);
      rep.worst_exact_deviation = std::max(rep.worst_exact_deviation, exact_dev);
      if (exact_dev < tol) ++rep.exact;
      if (prop_dev < tol && std::abs(sc) > tol)
        ++rep.passed;
      else
        rep.failures.push_back({t, s, "deviation " + std::to_string(prop_dev)});
    } catch (const std::exception& e) {
      rep.failures.push_back({t, s, e.what()});
    }
  }
  return rep;
}

json report_to_json(const SoundnessReport& r) {
  json f = json::array();
  for (const auto& x : r.failures)
    f.push_back({{"trial", x.trial}, {"seed", x.seed}, {"message", x.message}});
  return {{"rule", rule_name(r.rule)},
          {"D", r.D},
          {"trials", r.trials},
          {"seed", r.seed},
          {"passed", r.passed},
          {"exact", r.exact},
          {"worst_deviation", r.worst_deviation},
          {"worst_exact_deviation", r.worst_exact_deviation},
          {"pass", r.pass()},
          {"failures", f}};
}

}  // namespace quditzx
