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

// Batch front end for the quditzx library.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "quditzx/diagram.hpp"
#include "quditzx/equivalence.hpp"
#include "quditzx/phasespace.hpp"
#include "quditzx/rewrite.hpp"
#include "quditzx/semantics.hpp"
#include "quditzx/stabilizer.hpp"
#include "quditzx/synthesis.hpp"
#include "quditzx/toyrel.hpp"

namespace qz = quditzx;
using qz::json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

double tolerance() {
  if (const char* s = std::getenv("QUDITZX_TOL")) {
    char* end = nullptr;
    double t = std::strtod(s, &end);
    if (end == s || *end != '\0' || !(t > 0)) throw std::invalid_argument("QUDITZX_TOL: not a positive number");
    return t;
  }
  return 1e-9;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

qz::Diagram read_diagram(const std::string& path) {
  std::string text = read_file(path);
  try {
    return qz::diagram_from_string(text);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

std::string fmt(double v) {
  if (std::abs(v) < 5e-13) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt(qz::cplx c) {
  std::string re = fmt(c.real());
  double im = std::abs(c.imag()) < 5e-13 ? 0.0 : c.imag();
  if (im == 0.0) return re;
  return re + (im < 0 ? "-" : "+") + fmt(std::abs(im)) + "i";
}

void print_matrix(const Eigen::MatrixXcd& m) {
  for (long r = 0; r < m.rows(); ++r) {
    for (long c = 0; c < m.cols(); ++c) std::cout << (c ? "  " : "") << fmt(m(r, c));
    std::cout << "\n";
  }
}

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

struct Globals {
  bool json = false;
};

// ---------------------------------------------------------------------------

int cmd_eval(const Globals& g, const std::string& path) {
  qz::DenseOperator op = qz::evaluate(read_diagram(path));
  if (g.json) {
    std::cout << qz::operator_to_json(op).dump(2) << "\n";
  } else {
    std::cout << "D=" << op.D << " in=" << op.in_arity << " out=" << op.out_arity << " shape="
              << op.mat.rows() << "x" << op.mat.cols() << "\n";
    print_matrix(op.mat);
  }
  return 0;
}

int cmd_simplify(const Globals& g, const std::string& path, const std::string& out_path) {
  qz::Diagram d = read_diagram(path);
  auto [s, trace] = qz::simplify(d);
  double dev = qz::max_abs_diff(qz::evaluate(d).mat, qz::evaluate(s).mat);
  bool ok = dev < tolerance();
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error(out_path + ": cannot write");
    out << qz::to_json(s).dump(2) << "\n";
  }
  if (g.json) {
    json j{{"diagram", qz::to_json(s)}, {"trace", qz::trace_to_json(trace)}, {"deviation", dev}, {"pass", ok}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "steps " << trace.steps.size() << ", nodes " << d.nodes().size() << " -> " << s.nodes().size()
              << ", edges " << d.edges().size() << " -> " << s.edges().size() << "\n";
    for (const auto& st : trace.steps) {
      std::cout << "  " << qz::rule_name(st.rule) << " on";
      for (int n : st.matched) std::cout << " " << n;
      std::cout << "\n";
    }
    std::cout << "semantics preserved (deviation " << fmt(dev) << "): " << verdict(ok) << "\n";
  }
  return ok ? 0 : kExitFail;
}

int cmd_rule_check(const Globals& g, const std::string& rule, unsigned D, int trials, uint64_t seed) {
  std::vector<qz::RuleId> rules;
  if (rule == "all")
    rules = qz::all_rules();
  else
    rules.push_back(qz::rule_from_name(rule));
  bool ok = true;
  json arr = json::array();
  for (auto r : rules) {
    auto rep = qz::soundness_report(r, D, trials, seed, tolerance());
    ok = ok && rep.pass();
    if (g.json) {
      arr.push_back(qz::report_to_json(rep));
    } else {
      std::cout << verdict(rep.pass()) << " " << qz::rule_name(r) << " D=" << D << " " << rep.passed << "/"
                << rep.trials << " exact " << rep.exact << " worst " << fmt(rep.worst_deviation) << "\n";
      for (const auto& f : rep.failures)
        std::cout << "  trial " << f.trial << " seed " << f.seed << ": " << f.message << "\n";
    }
  }
  if (g.json) std::cout << json{{"pass", ok}, {"reports", arr}}.dump(2) << "\n";
  return ok ? 0 : kExitFail;
}

struct SynthArgs {
  unsigned D = 3;
  std::string target = "zj";
  unsigned j = 0;
  double phi = 0.0;
  std::vector<double> amps;
  int samples = 1;
  uint64_t seed = 1;
  bool decompositions = false;
};

int cmd_synth(const Globals& g, const SynthArgs& a) {
  const double tol = tolerance();
  json out;
  bool ok = true;
  if (a.target == "xj") {
    qz::PhaseVector p = qz::synth_xj(a.D, a.j, a.phi);
    const Eigen::MatrixXcd L = qz::lambda_matrix(qz::Color::Z, p).mat;
    const Eigen::MatrixXcd T = qz::xj_target(a.D, a.j, a.phi);
    // Equal up to global phase.
    auto k = qz::equal_up_to_scalar(L, T, tol);
    double dev = k ? qz::max_abs_diff(L, *k * T) : qz::max_abs_diff(L, T);
    ok = k && std::abs(std::abs(*k) - 1.0) < tol;
    out = {{"target", "xj"}, {"D", a.D}, {"j", a.j}, {"phi", a.phi}, {"phase", qz::phase_to_json(p)},
           {"deviation", dev}, {"pass", ok}};
    if (!g.json)
      std::cout << verdict(ok) << " X_" << a.j << "(" << fmt(a.phi) << ") D=" << a.D << " phase " << p.str()
                << " deviation " << fmt(dev) << "\n";
  } else if (a.target == "zj") {
    std::vector<qz::StateVector> states;
    if (!a.amps.empty()) {
      if (a.amps.size() != 2 * size_t(a.D)) throw std::invalid_argument("--state needs 2*D numbers (re im pairs)");
      std::vector<qz::cplx> v;
      for (unsigned k = 0; k < a.D; ++k) v.emplace_back(a.amps[2 * k], a.amps[2 * k + 1]);
      states.push_back(qz::make_state(v));
    } else {
      std::mt19937_64 rng(a.seed);
      for (int i = 0; i < a.samples; ++i) states.push_back(qz::random_state(a.D, rng));
    }
    json rows = json::array();
    for (const auto& b : states) {
      try {
        auto s = qz::synth_zj(a.j, b);
        auto r = qz::zj_residual(s, b);
        bool pass = r.unit_phase < tol;
        ok = ok && pass;
        json row = qz::synthesis_to_json(s);
        row["proportional_residual"] = r.proportional;
        row["unit_phase_residual"] = r.unit_phase;
        row["unitarity"] = r.unitarity;
        row["pass"] = pass;
        rows.push_back(row);
        if (!g.json)
          std::cout << verdict(pass) << " Z_" << a.j << " D=" << a.D << " real=" << (s.real ? "yes" : "no")
                    << " proportional " << fmt(r.proportional) << " unit-phase " << fmt(r.unit_phase) << "\n";
      } catch (const qz::Degenerate& e) {
        ok = false;
        rows.push_back({{"degenerate", true}, {"reason", e.what()}});
        if (!g.json) std::cout << "DEGENERATE " << e.what() << "\n";
      }
    }
    out = {{"target", "zj"}, {"D", a.D}, {"j", a.j}, {"results", rows}, {"pass", ok}};
  } else {
    throw std::invalid_argument("--target must be zj or xj");
  }
  if (a.decompositions) {
    auto rep = qz::verify_decompositions(a.D, tol);
    ok = ok && rep.pass();
    out["decompositions"] = qz::decomposition_to_json(rep);
    out["pass"] = ok;
    if (!g.json)
      for (const auto& c : rep.checks) std::cout << verdict(c.pass) << " " << c.name << " " << fmt(c.deviation) << "\n";
  }
  if (g.json) std::cout << out.dump(2) << "\n";
  return ok ? 0 : kExitFail;
}

int cmd_stab_run(const Globals& g, const std::string& path, bool oracle, uint64_t seed, unsigned D, int n) {
  qz::Circuit c;
  try {
    c = qz::circuit_from_json(read_json(path), n, D);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  qz::Tableau t = qz::Tableau::zero_state(c.n, c.D);
  std::mt19937_64 rng(seed);
  std::vector<unsigned> outcomes;
  json dists = json::array();
  for (const auto& op : c.ops) {
    if (auto* gate = std::get_if<qz::CliffordGate>(&op)) {
      t = qz::apply_clifford(t, *gate);
    } else {
      const auto& m = std::get<qz::Measurement>(op);
      json dist = json::array();
      for (const auto& p : qz::measurement_distribution(t, m.observable)) dist.push_back(p.str());
      dists.push_back(dist);
      auto [k, nt] = qz::measure(t, m.observable, rng);
      outcomes.push_back(k);
      t = nt;
    }
  }
  bool ok = true;
  json out{{"n", c.n}, {"D", c.D}, {"outcomes", outcomes}, {"distributions", dists}, {"tableau", qz::tableau_to_json(t)}};
  std::optional<qz::CrossCheck> cc;
  if (oracle) {
    cc = qz::cross_check(c, seed, tolerance());
    ok = cc->pass;
    out["oracle"] = qz::cross_check_to_json(*cc);
  }
  out["pass"] = ok;
  if (g.json) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "n=" << c.n << " D=" << c.D << " ops=" << c.ops.size() << " outcomes";
    for (unsigned k : outcomes) std::cout << " " << k;
    std::cout << "\nstabilizers";
    for (const auto& p : t.generators) std::cout << " " << p.str();
    std::cout << "\n";
    if (cc)
      std::cout << verdict(cc->pass) << " oracle: " << cc->measurements << " measurements, max prob diff "
                << fmt(cc->max_prob_diff) << ", stabilizer residual " << fmt(cc->max_stabilizer_residual) << "\n";
  }
  return ok ? 0 : kExitFail;
}

int cmd_spek_check(const Globals& g, unsigned D) {
  auto rep = qz::rel_structure_check(D);
  json printed{{"delta_z_printed_equals_delta_z", qz::delta_z_printed(D) == qz::spek_generator("delta_z", D)},
               {"delta_x_printed_equals_delta_x", qz::delta_x_printed(D) == qz::spek_generator("delta_x", D)},
               {"delta_x_literal_equals_delta_x", qz::delta_x_literal(D) == qz::spek_generator("delta_x", D)},
               {"bell_printed_equals_bell", qz::bell_printed(D) == qz::spek_generator("bell", D)}};
  if (g.json) {
    json j = qz::rel_report_to_json(rep);
    j["printed_variants"] = printed;
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& c : rep.checks)
      std::cout << verdict(c.pass) << " " << c.id << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
    for (auto it = printed.begin(); it != printed.end(); ++it)
      std::cout << "info " << it.key() << ": " << (it.value().get<bool>() ? "yes" : "no") << "\n";
  }
  return rep.pass() ? 0 : kExitFail;
}

std::string support_str(const std::set<qz::OnticPoint>& s, unsigned d) {
  std::string out = "{";
  bool first = true;
  for (const auto& m : s) {
    out += (first ? "" : ",") + std::to_string(qz::encode_ontic(d, m));
    first = false;
  }
  return out + "}";
}

int cmd_phase_space(const Globals& g, unsigned d, const std::string& state_path, bool transform, uint64_t seed) {
  std::vector<qz::EpistemicState> states;
  if (!state_path.empty()) {
    try {
      states.push_back(qz::epistemic_from_json(read_json(state_path)));
    } catch (const std::exception& e) {
      throw std::runtime_error(state_path + ": " + e.what());
    }
  } else {
    if (!qz::is_prime(d)) throw std::invalid_argument("--dim must be prime");
    states = qz::enumerate_pure_states(d);
  }
  std::mt19937_64 rng(seed);
  bool ok = true;
  json arr = json::array();
  for (const auto& s : states) {
    auto mu = qz::epistemic_distribution(s);
    qz::Rational total(0);
    for (const auto& p : mu) total = total + p;
    bool pass = total == qz::Rational(1);
    json row = qz::epistemic_to_json(s);
    row["support"] = json::array();
    for (const auto& m : s.support()) row["support"].push_back(qz::encode_ontic(s.d(), m));
    row["total"] = total.str();
    if (transform) {
      auto t = qz::random_symplectic(s.d(), s.n(), rng);
      auto img = qz::apply_transform(s, t);
      std::set<qz::OnticPoint> mapped;
      for (const auto& m : s.support()) mapped.insert(qz::apply_point(t, m));
      bool match = mapped == img.support();
      pass = pass && match;
      row["transformed_support"] = json::array();
      for (const auto& m : img.support()) row["transformed_support"].push_back(qz::encode_ontic(s.d(), m));
      row["transform_consistent"] = match;
    }
    row["pass"] = pass;
    ok = ok && pass;
    arr.push_back(row);
    if (!g.json) {
      std::cout << verdict(pass) << " support " << support_str(s.support(), s.d()) << " total " << total.str();
      if (transform) std::cout << " image " << row["transformed_support"].dump();
      std::cout << "\n";
    }
  }
  if (g.json) std::cout << json{{"d", d}, {"states", arr}, {"pass", ok}}.dump(2) << "\n";
  return ok ? 0 : kExitFail;
}

int cmd_equiv(const Globals& g) {
  auto states = qz::build_3spek_states();
  auto dict = qz::build_dictionary();
  auto r = qz::run_equivalence_checks();
  if (g.json) {
    json j = qz::equivalence_to_json(r);
    j["states"] = qz::spek_states_to_json(states);
    j["dictionary"] = qz::dictionary_to_json(dict);
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& s : states.discrepancies) std::cout << "note " << s << "\n";
    std::cout << verdict(r.consistent == int(r.pairs.size())) << " possibilistic " << r.consistent << "/"
              << r.pairs.size() << "\n";
    std::cout << verdict(r.prob_matches == int(r.pairs.size())) << " probabilities " << r.prob_matches << "/"
              << r.pairs.size() << "\n";
    auto factors = [](const std::vector<unsigned>& f) {
      std::string s;
      for (unsigned x : f) s += (s.empty() ? "Z" : " x Z") + std::to_string(x);
      return s;
    };
    std::cout << verdict(r.toy_z.isomorphic) << " Z phase group " << factors(r.toy_z.factors) << " vs "
              << factors(r.quantum_factors) << "\n";
    std::cout << verdict(r.toy_x.isomorphic) << " X phase group " << factors(r.toy_x.factors) << " vs "
              << factors(r.quantum_factors) << "\n";
    std::cout << verdict(r.equivariant_z == r.phase_maps_z) << " Z phase maps equivariant " << r.equivariant_z
              << "/" << r.phase_maps_z << "\n";
    std::cout << verdict(r.equivariant_x == r.phase_maps_x) << " X phase maps equivariant " << r.equivariant_x
              << "/" << r.phase_maps_x << "\n";
    std::cout << "info z_1/z_2 kets exchanged: X isomorphic " << (r.mirrored_x.isomorphic ? "yes" : "no")
              << ", X equivariant " << r.mirrored_equivariant_x << "/" << r.phase_maps_x << "\n";
  }
  return r.pass() ? 0 : kExitFail;
}

int cmd_export_dot(const std::string& path) {
  std::cout << qz::export_dot(read_diagram(path));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quditzx: qudit ZX calculus, stabilizer and toy-theory checks"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json, "JSON output")->configurable(false);
  app.fallthrough();

  std::string path, out_path, rule = "all", target = "zj", state_path;
  unsigned D = 3, j = 0, n = 1;
  int trials = 50, samples = 1;
  uint64_t seed = 1;
  double phi = 0.0;
  bool oracle = false, decompositions = false, transform = false;
  std::vector<double> amps;

  auto* eval = app.add_subcommand("eval", "Evaluate a diagram to its matrix");
  eval->add_option("diagram", path, "Diagram JSON file")->required();

  auto* simp = app.add_subcommand("simplify", "Simplify a diagram and emit the rewrite trace");
  simp->add_option("diagram", path, "Diagram JSON file")->required();
  simp->add_option("-o,--out", out_path, "Write the simplified diagram here");

  auto* rc = app.add_subcommand("rule-check", "Seeded soundness check of rewrite rules");
  rc->add_option("--rule", rule, "Rule name or 'all'");
  rc->add_option("--dim", D, "Qudit dimension")->check(CLI::Range(2u, 7u));
  rc->add_option("--trials", trials, "Random instances per rule")->check(CLI::PositiveNumber);
  rc->add_option("--seed", seed, "Seed");

  auto* sy = app.add_subcommand("synth", "Synthesize X_j or Z_j phases");
  sy->add_option("--dim", D, "Qudit dimension")->check(CLI::Range(2u, 7u));
  sy->add_option("--target", target, "zj or xj");
  sy->add_option("--j", j, "Target index");
  sy->add_option("--phi", phi, "Rotation angle in radians (xj)");
  sy->add_option("--state", amps, "Amplitudes as re im pairs (zj)");
  sy->add_option("--samples", samples, "Random states when --state is absent")->check(CLI::PositiveNumber);
  sy->add_option("--seed", seed, "Seed");
  sy->add_flag("--decompositions", decompositions, "Also verify gate decompositions");

  auto* st = app.add_subcommand("stab-run", "Run a Clifford circuit on the tableau simulator");
  st->add_option("circuit", path, "Circuit JSON file")->required();
  st->add_flag("--oracle", oracle, "Cross-check against the dense simulator");
  st->add_option("--seed", seed, "Measurement seed");
  st->add_option("--dim", D, "Default dimension");
  st->add_option("--qudits", n, "Default qudit count");

  auto* sp = app.add_subcommand("spek-check", "Relational structure checks");
  sp->add_option("--dim", D, "Dimension")->check(CLI::Range(2u, 5u));

  auto* ps = app.add_subcommand("phase-space", "Epistemic states on discrete phase space");
  ps->add_option("--dim", D, "Prime dimension");
  ps->add_option("--state", state_path, "Epistemic state JSON file");
  ps->add_flag("--transform", transform, "Apply a seeded random symplectic transform");
  ps->add_option("--seed", seed, "Seed");

  auto* eq = app.add_subcommand("equiv", "Toy theory vs qutrit stabilizer checks");

  auto* dot = app.add_subcommand("export-dot", "Export a diagram as DOT");
  dot->add_option("diagram", path, "Diagram JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitError;
  }

  try {
    if (*eval) return cmd_eval(g, path);
    if (*simp) return cmd_simplify(g, path, out_path);
    if (*rc) return cmd_rule_check(g, rule, D, trials, seed);
    if (*sy) return cmd_synth(g, {D, target, j, phi, amps, samples, seed, decompositions});
    if (*st) return cmd_stab_run(g, path, oracle, seed, D, int(n));
    if (*sp) return cmd_spek_check(g, D);
    if (*ps) return cmd_phase_space(g, D, state_path, transform, seed);
    if (*eq) return cmd_equiv(g);
    if (*dot) return cmd_export_dot(path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
