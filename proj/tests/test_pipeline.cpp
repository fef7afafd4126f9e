/*
 Copyright 2026 The turnpike authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "support/testutil.hpp"
#include "turnpike/errors.hpp"
#include "turnpike/io.hpp"
#include "turnpike/pipeline.hpp"

using namespace turnpike;

namespace {

std::string slurp(const std::string& file) {
  std::ifstream in(file);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/turnpike_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

const char* kEx1LqJson = R"({
  "n": 2, "m": 1,
  "A": [[0, 1], [-1, 0]],
  "B": [[0], [1]],
  "Q": [[1, 0], [0, 1]],
  "U": [[1]],
  "xd": [2, 7],
  "ud": [0],
  "terminal": {"kind": "fixed-initial-free-final", "x0": [0, 0]}
})";

}  // namespace

TEST_SUITE("pipeline") {

  TEST_CASE("config validation messages") {
    RunConfig cfg;
    cfg.T = 0.0;
    try {
      cfg.validate();
      FAIL("expected rejection");
    } catch (const InvalidArgumentError& e) {
      CHECK(std::string(e.what()) == "T must be positive");
    }
    cfg.T = 1.0;
    cfg.steps = 1;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgumentError);
    cfg.steps = 10;
    cfg.anchor_fraction = 1.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgumentError);

    CHECK_THROWS_AS(problem_from_spec("ex3"), InvalidArgumentError);
    CHECK_THROWS_AS(method_from_string("collocation"), InvalidArgumentError);
  }

  TEST_CASE("trajectory CSV: schema, determinism, round trip") {
    TempFile a("a.csv"), b("b.csv");
    RunConfig cfg;
    cfg.problem = "ex1";
    cfg.method = Method::ShootMid;
    cfg.T = 8.0;
    cfg.steps = 200;
    cfg.output_csv = a.path;
    run(cfg);
    cfg.output_csv = b.path;
    run(cfg);

    const std::string ca = slurp(a.path);
    CHECK(ca == slurp(b.path));  // identical configs, identical bytes

    std::istringstream in(ca);
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,x1,x2,lam1,lam2,u1");
    int rows = 0;
    for (std::string line; std::getline(in, line);)
      if (!line.empty()) ++rows;
    CHECK(rows == 201);

    const ExtremalPath back = read_trajectory_csv(a.path);
    CHECK(back.t.size() == 201);
    CHECK(back.x.cols() == 2);
    CHECK(back.u.cols() == 1);
    TempFile c("c.csv");
    write_trajectory_csv(c.path, back);
    CHECK(slurp(c.path) == ca);  // 17 significant digits survive the round trip
  }

  TEST_CASE("run produces a full report") {
    RunConfig cfg;
    cfg.problem = "ex2";
    cfg.method = Method::Direct;
    cfg.T = 10.0;
    cfg.steps = 400;
    const RunResult r = run(cfg);
    for (const char* key : {"problem", "method", "T", "steps", "static", "assumptions",
                            "riccati", "wellposedness", "solver", "turnpike"})
      CHECK(r.summary.contains(key));
    CHECK(r.summary["solver"]["converged"].get<bool>());
    CHECK(r.summary["riccati"]["C2"].get<double>() > 0.0);
    CHECK(r.summary["static"]["x_bar"][0].get<double>() == doctest::Approx(1.25));
    CHECK(r.summary["riccati"].contains("C2_conservative"));
    CHECK_FALSE(r.summary["turnpike"].contains("lq_bounds"));  // ex2 is not LQ

    RunConfig lq;
    lq.problem = "ex1";
    lq.method = Method::ShootMid;
    lq.T = 12.0;
    lq.steps = 400;
    const RunResult rl = run(lq);
    CHECK(rl.summary["turnpike"]["lq_bounds"]["x_ratio"].get<double>() < 10.0);
  }

  TEST_CASE("compare: identical configs coincide, distances are recorded") {
    RunConfig cfg;
    cfg.problem = "ex1";
    cfg.method = Method::ShootMid;
    cfg.T = 6.0;
    cfg.steps = 300;
    const auto rows = compare({cfg, cfg});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].converged_a);
    CHECK(rows[0].converged_b);
    CHECK(rows[0].sup_distance == 0.0);

    const std::string csv = compare_csv(rows);
    CHECK(csv.find("method_a,method_b") == 0);
    CHECK(csv.find("shoot-mid,shoot-mid") != std::string::npos);
  }

  TEST_CASE("compare: classic shooting failure on ex2 is recorded, not thrown") {
    RunConfig a;
    a.problem = "ex2";
    a.T = 20.0;
    a.steps = 500;
    a.method = Method::ShootMid;
    RunConfig b = a;
    b.method = Method::ShootClassic;
    b.guess = "zero";
    const auto rows = compare({a, b});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].converged_a);
    CHECK_FALSE(rows[0].converged_b);
    CHECK(std::isnan(rows[0].sup_distance));
  }

  TEST_CASE("compare rejects mismatched horizons") {
    RunConfig a, b;
    b.T = a.T + 1.0;
    CHECK_THROWS_AS(compare({a, b}), InvalidArgumentError);
    CHECK_THROWS_AS(compare({a}), InvalidArgumentError);
  }

  TEST_CASE("nested-grid distances subsample the finer grid") {
    RunConfig a;
    a.problem = "ex1";
    a.method = Method::ShootMid;
    a.T = 6.0;
    a.steps = 150;
    RunConfig b = a;
    b.steps = 300;
    const auto rows = compare({a, b});
    CHECK(rows[0].sup_distance < 1e-6);  // same extremal, different sampling

    ExtremalPath p1, p2;
    p1.t.setLinSpaced(101, 0.0, 1.0);
    p2.t.setLinSpaced(104, 0.0, 1.0);
    p1.x.setZero(101, 1);
    p2.x.setZero(104, 1);
    p1.lam = p1.x;
    p2.lam = p2.x;
    p1.u = p1.x;
    p2.u = p2.x;
    CHECK_THROWS_AS(extremal_distance(p1, p2), InvalidArgumentError);
  }

  TEST_CASE("sweep runs every horizon and keeps input order") {
    RunConfig cfg;
    cfg.problem = "ex1";
    cfg.method = Method::ShootMid;
    cfg.steps = 300;
    const auto rows = sweep(cfg, {4.0, 8.0}, 2);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].T == 4.0);
    CHECK(rows[1].T == 8.0);
    CHECK(rows[0].converged);
    CHECK(rows[1].converged);
    CHECK(rows[1].x_avg_dist < rows[0].x_avg_dist);
    const std::string csv = sweep_csv(rows, cfg);
    CHECK(csv.find("T,method,steps") == 0);
  }

  TEST_CASE("LQ problem file loading and validation") {
    TempFile f("lq.json");
    {
      std::ofstream out(f.path);
      out << kEx1LqJson;
    }
    const Problem p = problem_from_spec("lq:" + f.path);
    CHECK(p.n == 2);
    CHECK(p.terminal_kind == TerminalKind::FixedInitialFreeFinal);
    const StaticSolution s = solve_static(p);
    CHECK((s.x_bar - testutil::vec2(1, 0)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((s.lambda_bar - testutil::vec2(-7, 1)).cwiseAbs().maxCoeff() < 1e-10);

    auto reject = [&](const std::string& body) {
      TempFile g("bad.json");
      std::ofstream out(g.path);
      out << body;
      out.close();
      CHECK_THROWS_AS(load_lq_problem(g.path), IoError);
    };
    reject(R"({"n": 2})");  // missing fields
    reject(R"({"n": 2, "m": 1, "A": [[0,1],[-1,0]], "B": [[0],[1]],
               "Q": [[1, 0.5], [0, 1]], "U": [[1]], "xd": [0,0], "ud": [0],
               "terminal": {"kind": "periodic"}})");  // asymmetric Q
    reject(R"({"n": 2, "m": 1, "A": [[0,1],[-1,0]], "B": [[0],[1]],
               "Q": [[1, 0], [0, 1]], "U": [[-1]], "xd": [0,0], "ud": [0],
               "terminal": {"kind": "periodic"}})");  // U not positive definite
    reject(R"({"n": 2, "m": 1, "A": [[0,1],[-1,0]], "B": [[0],[1]],
               "Q": [[1, 0], [0, 1]], "U": [[1]], "xd": [0,0], "ud": [0],
               "terminal": {"kind": "free"}})");  // unknown kind
    CHECK_THROWS_AS(load_lq_problem("/nonexistent/path.json"), IoError);
  }
}
