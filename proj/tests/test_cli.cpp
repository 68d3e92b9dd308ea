// Copyright 2026 The ellipdecay Authors
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

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ellipdecay/cli.hpp"

using namespace ellipdecay;
using nlohmann::json;

namespace {

struct Run {
  int rc;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int rc = run_command(args, out, err);
  return {rc, out.str(), err.str()};
}

json doc(const Run& r) {
  REQUIRE(r.rc == 0);
  return json::parse(r.out);
}

}  // namespace

TEST_CASE("floats print with 17 significant digits and round-trip") {
  nlohmann::ordered_json j;
  j["a"] = 0.1;
  j["b"] = 1.0;
  j["c"] = 1e-300;
  j["d"] = std::nan("");
  j["e"] = -std::numeric_limits<double>::infinity();
  j["f"] = 3;
  j["g"] = std::vector<double>{2.0, 1.0 / 3.0};
  std::string s = emit_json(j);
  CHECK(s.find("\"a\": 0.10000000000000001") != std::string::npos);
  CHECK(s.find("\"b\": 1.0") != std::string::npos);
  CHECK(s.find("\"c\": 1e-300,") != std::string::npos);
  CHECK(s.find("\"d\": null") != std::string::npos);
  CHECK(s.find("\"e\": null") != std::string::npos);
  CHECK(s.find("\"f\": 3,") != std::string::npos);
  CHECK(s.find("[2.0, 0.33333333333333331]") != std::string::npos);
  json back = json::parse(s);
  CHECK(back["a"].get<double>() == 0.1);
  CHECK(back["g"][1].get<double>() == 1.0 / 3.0);
}

TEST_CASE("exc on the bilaplacian") {
  Run r = run({"exc", "--radial", "z^2", "--lambda", "-4"});
  CHECK(r.err.empty());
  CHECK(r.out.find("\"discrete\": [1.0]") != std::string::npos);
  json j = doc(r);
  CHECK(j["verb"] == "exc");
  CHECK(j["source"] == "radial_exact");
  CHECK(j["solver"].is_null());

  json g = doc(run({"exc", "--radial", "z^2", "--dim", "2", "--backend", "generic", "--lambda", "16", "--seed", "7"}));
  REQUIRE(g["discrete"].size() == 1);
  CHECK(std::abs(g["discrete"][0].get<double>() - 2.0) < 1e-8);
  CHECK(g["solver"]["seed"] == 7);
  CHECK(g["solver"]["starts"] == 512);
  CHECK_FALSE(g["solver"].contains("threads"));
}

TEST_CASE("crit example") {
  json j = doc(run({"crit", "--radial", "z^2-2z"}));
  CHECK(j["critical_values"] == json::array({-1.0, 0.0}));
  CHECK(j["range_min"] == -1.0);
}

TEST_CASE("validation errors exit 2 with usage on the diagnostic stream") {
  Run r = run({"exc", "--lambda", "1"});
  CHECK(r.rc == 2);
  CHECK(r.out.empty());
  CHECK(r.err.find("Usage") != std::string::npos);

  CHECK(run({"exc", "--radial", "z", "--lambda", "1", "--bogus"}).rc == 2);
  CHECK(run({"nope"}).rc == 2);
  CHECK(run({}).rc == 2);
  CHECK(run({"exc", "--radial", "z", "--poly", "x1", "--lambda", "1"}).rc == 2);
  CHECK(run({"exc", "--radial", "z^", "--lambda", "1"}).rc == 2);
  CHECK(run({"exc", "--poly", "x1^2", "--backend", "radial", "--lambda", "1"}).rc == 2);
  CHECK(run({"crit", "--radial", "z", "--format", "csv"}).rc == 2);
  CHECK(run({"flow", "--poly", "x1^2", "--sigma", "1", "--omega", "1,0", "--xi", "0"}).rc == 2);
  CHECK(run({"lab", "--g0", "z", "--lambda", "3"}).rc == 2);
  CHECK(run({"comm-check"}).rc == 2);
  Run h = run({"exc", "--help"});
  CHECK(h.rc == 0);
  CHECK(h.out.find("--radial") != std::string::npos);
}

TEST_CASE("solver failure exits 3") {
  Run r = run({"ct", "--poly", "(x1^2+x2^2)^2", "--lambda", "-4", "--sigma-max", "0.5"});
  CHECK(r.rc == 3);
  CHECK(r.out.empty());
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("solver config file and flag override") {
  std::string path = "test_cli_config.json";
  {
    std::ofstream f(path);
    f << R"({"starts": 64, "seed": 11})";
  }
  json j = doc(run({"exc", "--poly", "(x1^2+x2^2)^2", "--lambda", "1", "--config", path, "--seed", "12"}));
  CHECK(j["solver"]["starts"] == 64);
  CHECK(j["solver"]["seed"] == 12);
  {
    std::ofstream f(path);
    f << R"({"strats": 64})";
  }
  CHECK(run({"exc", "--poly", "x1^2", "--lambda", "-1", "--config", path}).rc == 2);
  std::remove(path.c_str());
}

TEST_CASE("repeated runs are byte identical") {
  std::vector<std::string> a{"exc", "--poly", "x1^4+x2^4-x1^2", "--lambda", "-2", "--seed", "99", "--starts", "128"};
  CHECK(run(a).out == run(a).out);
  setenv("ELLIPDECAY_THREADS", "4", 1);
  std::string threaded = run(a).out;
  unsetenv("ELLIPDECAY_THREADS");
  CHECK(threaded == run(a).out);
  std::vector<std::string> c{"comm-check", "--random", "3", "--seed", "5"};
  CHECK(run(c).out == run(c).out);
}

TEST_CASE("flow at witnesses and at a given point") {
  json j = doc(run({"flow", "--radial", "z^2", "--dim", "2", "--lambda", "16"}));
  REQUIRE(j["witnesses"].size() == 1);
  CHECK(j["witnesses"][0]["norm"].get<double>() < 1e-8);
  // d/dt omega and d/dt xi vanish for xi = 0 on the Laplacian at any sigma
  json p = doc(run({"flow", "--poly", "x1^2+x2^2", "--sigma", "0.5", "--omega", "0.6,0.8", "--xi", "0,0"}));
  CHECK(p["norm"].get<double>() < 1e-12);
}

TEST_CASE("comm-check, weyl and report") {
  json c = doc(run({"comm-check", "--all-monomials", "--max-degree", "3", "--dims", "1,2"}));
  CHECK(c["cases"].size() == 3 + 9);
  CHECK(c["all_equal"] == true);
  CHECK(c["cases"][0]["wall_time"].is_null());
  json t = doc(run({"comm-check", "--poly", "x1^3", "--timing"}));
  CHECK(t["cases"][0]["wall_time"].is_number());

  json w = doc(run({"weyl", "--q", "x1^2", "--f", "x1", "--check"}));
  CHECK(w["symbol"] == "xi1^2 + 2i*xi1 - 1");
  CHECK(w["check"]["equal"] == true);

  json r = doc(run({"report", "--radial", "z^2", "--lambda", "-4", "--compact"}));
  CHECK(r["refined_branch"] == "r_eps");
  CHECK(r["sigma_exc"]["discrete"] == json::array({1.0}));
}

TEST_CASE("lab json and csv") {
  json j = doc(run({"lab", "--g0", "z", "--lambda", "-1"}));
  CHECK(std::abs(j["sigma_hat"].get<double>() - 1.0) < 0.01);
  CHECK(j["residual"].get<double>() < 1e-8);
  Run csv = run({"lab", "--g0", "z", "--lambda", "-1", "--format", "csv"});
  REQUIRE(csv.rc == 0);
  CHECK(csv.out.rfind("x,abs_phi,V\n", 0) == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 4097);
}
