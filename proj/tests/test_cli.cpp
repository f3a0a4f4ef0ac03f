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

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#ifndef QUDITZX_BIN
#error "QUDITZX_BIN must name the CLI binary"
#endif

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + std::string("\"") + QUDITZX_BIN + "\" " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name, const std::string& content) {
  fs::path dir = fs::temp_directory_path() / "quditzx_cli_test";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream(p) << content;
  return p;
}

const char* kFuse = R"({"dimension":3,"nodes":[
  {"id":0,"kind":"in","position":0},
  {"id":1,"kind":"Z","phase":[{"exact":[1,3]},{"exact":[0,1]}]},
  {"id":2,"kind":"Z","phase":[{"exact":[2,3]},{"exact":[0,1]}]},
  {"id":3,"kind":"out","position":0}],
  "edges":[[0,1],[1,2],[2,3]]})";

}  // namespace

TEST_CASE("eval") {
  auto empty = scratch("empty.json", R"({"dimension":2,"nodes":[],"edges":[]})");
  auto r = run("eval " + empty.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("\n1\n") != std::string::npos);
  auto j = run("--json eval " + empty.string());
  CHECK(j.code == 0);
  auto parsed = nlohmann::json::parse(j.out);
  CHECK(parsed.at("entries")[0][0][0] == 1.0);
}

TEST_CASE("simplify and export-dot") {
  auto f = scratch("fuse.json", kFuse);
  auto r = run("--json simplify " + f.string());
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("pass") == true);
  CHECK(j.at("trace").at("steps").size() >= 1);
  auto dot = run("export-dot " + f.string());
  CHECK(dot.code == 0);
  CHECK(dot.out.find("digraph") == 0);
}

TEST_CASE("rule-check") {
  auto r = run("rule-check --rule S_fuse --dim 3 --trials 50 --seed 7");
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS S_fuse") != std::string::npos);
  CHECK(run("rule-check --rule nope --dim 3").code == 2);
}

TEST_CASE("synth") {
  CHECK(run("synth --dim 3 --target zj --j 0 --state 1 0 0 0 0 0").code == 0);
  CHECK(run("synth --dim 4 --target xj --j 2 --phi 3.141592653589793 --decompositions").code == 0);
  // Generic states need complex angles, so the unit-phase check fails.
  auto r = run("synth --dim 3 --target zj --j 1 --samples 3 --seed 3");
  CHECK(r.code == 1);
  CHECK(r.out.find("real=no") != std::string::npos);
}

TEST_CASE("stab-run") {
  auto c = scratch("circ.json", R"({"n":2,"D":3,"gates":[{"gate":"F","wires":[0]},{"gate":"CNOT","wires":[0,1]},
    {"gate":"measure","wires":[0],"basis":"Z"},{"gate":"measure","wires":[1],"basis":"Z"}]})");
  auto r = run("--json stab-run " + c.string() + " --oracle --seed 4");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("oracle").at("pass") == true);
  auto outs = j.at("outcomes");
  CHECK((outs[0].get<int>() + outs[1].get<int>()) % 3 == 0);
  auto bad = scratch("bad.json", R"({"n":1,"D":3,"gates":[{"gate":"CNOT","wires":[0,0]}]})");
  auto e = run("stab-run " + bad.string());
  CHECK(e.code == 2);
  CHECK(e.out.find("bad.json") != std::string::npos);
}

TEST_CASE("spek-check and phase-space") {
  CHECK(run("spek-check --dim 3").code == 0);
  auto r = run("--json phase-space --dim 3 --transform --seed 2");
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out).at("states").size() == 12);
  auto s = scratch("state.json", R"({"d":3,"n":1,"V":[[1,1]],"v_rep":[0,0]})");
  auto one = run("phase-space --state " + s.string());
  CHECK(one.code == 0);
  CHECK(one.out.find("{1,6,8}") != std::string::npos);
}

TEST_CASE("equiv reports the X-side mismatch") {
  auto r = run("equiv");
  CHECK(r.code == 1);
  CHECK(r.out.find("PASS possibilistic 144/144") != std::string::npos);
  CHECK(r.out.find("PASS probabilities 144/144") != std::string::npos);
  CHECK(r.out.find("FAIL X phase group") != std::string::npos);
}

TEST_CASE("determinism") {
  CHECK(run("--json equiv").out == run("--json equiv").out);
  CHECK(run("--json rule-check --rule all --dim 3 --trials 5 --seed 9").out ==
        run("--json rule-check --rule all --dim 3 --trials 5 --seed 9").out);
  CHECK(run("--json synth --dim 5 --samples 4 --seed 1").out == run("--json synth --dim 5 --samples 4 --seed 1").out);
}

TEST_CASE("errors and tolerance override") {
  auto missing = run("eval /nonexistent/diagram.json");
  CHECK(missing.code == 2);
  CHECK(missing.out.find("/nonexistent/diagram.json") != std::string::npos);
  CHECK(run("").code != 0);
  CHECK(run("frobnicate").code != 0);
  CHECK(run("rule-check --rule S_fuse --dim 2 --trials 1", "QUDITZX_TOL=abc").code == 2);
  auto f = scratch("fuse2.json", kFuse);
  CHECK(run("simplify " + f.string(), "QUDITZX_TOL=1e-6").code == 0);
}
