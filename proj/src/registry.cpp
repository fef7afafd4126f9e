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
#include "turnpike/registry.hpp"

#include <Eigen/Dense>
#include <fstream>

#include <json.hpp>

#include "turnpike/errors.hpp"

namespace turnpike {

namespace {

using nlohmann::json;

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

Eigen::MatrixXd parse_matrix(const json& j, int rows, int cols, const std::string& name) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw IoError("LQ file: field '" + name + "' must be an array of " + std::to_string(rows) +
                  " rows");
  Eigen::MatrixXd out(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const json& row = j.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw IoError("LQ file: row " + std::to_string(i) + " of '" + name + "' must have " +
                    std::to_string(cols) + " entries");
    for (int c = 0; c < cols; ++c) out(i, c) = row.at(c).get<double>();
  }
  return out;
}

Eigen::VectorXd parse_vector(const json& j, int size, const std::string& name) {
  if (!j.is_array() || static_cast<int>(j.size()) != size)
    throw IoError("LQ file: field '" + name + "' must be an array of length " +
                  std::to_string(size));
  Eigen::VectorXd out(size);
  for (int i = 0; i < size; ++i) out[i] = j.at(i).get<double>();
  return out;
}

void require_spd(const Eigen::MatrixXd& M, const std::string& name) {
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw IoError("LQ file: matrix '" + name + "' is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw IoError("LQ file: matrix '" + name + "' is not positive definite");
}

}  // namespace

Problem make_example1() {
  LqData d;
  d.A.resize(2, 2);
  d.A << 0, 1, -1, 0;
  d.B.resize(2, 1);
  d.B << 0, 1;
  d.Q = Eigen::MatrixXd::Identity(2, 2);
  d.U = Eigen::MatrixXd::Identity(1, 1);
  d.xd = vec2(2, 7);
  d.ud = Eigen::VectorXd::Zero(1);
  Problem p = make_lq_problem(std::move(d), TerminalKind::FixedInitialFreeFinal, vec2(0, 0));
  p.name = "ex1";
  return p;
}

Problem make_example2() {
  Problem p;
  p.name = "ex2";
  p.n = 2;
  p.m = 1;
  p.f = [](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    return vec2(x[1], 1.0 - x[0] + x[1] * x[1] * x[1] + u[0]);
  };
  p.f0 = [](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    const double a = x[0] - 0.5, b = x[1] - 0.5, c = u[0] - 1.0;
    return 0.5 * (a * a + b * b + c * c);
  };
  p.f_x = [](const Eigen::VectorXd& x, const Eigen::VectorXd&) {
    Eigen::MatrixXd j(2, 2);
    j << 0, 1, -1, 3.0 * x[1] * x[1];
    return j;
  };
  p.f_u = [](const Eigen::VectorXd&, const Eigen::VectorXd&) {
    Eigen::MatrixXd j(2, 1);
    j << 0, 1;
    return j;
  };
  p.f0_x = [](const Eigen::VectorXd& x, const Eigen::VectorXd&) {
    return vec2(x[0] - 0.5, x[1] - 0.5);
  };
  p.f0_u = [](const Eigen::VectorXd&, const Eigen::VectorXd& u) {
    return Eigen::VectorXd::Constant(1, u[0] - 1.0);
  };
  p.curvature = [](const Eigen::VectorXd& x, const Eigen::VectorXd& lambda,
                   const Eigen::VectorXd&) {
    HamiltonianCurvature c;
    c.Hxx.resize(2, 2);
    c.Hxx << -1, 0, 0, 6.0 * x[1] * lambda[1] - 1.0;
    c.Hxu = Eigen::MatrixXd::Zero(2, 1);
    c.Huu = -Eigen::MatrixXd::Identity(1, 1);
    return c;
  };
  // H is strictly concave in u: the stationarity condition solves in closed form.
  p.control_law = [](const Eigen::VectorXd&, const Eigen::VectorXd& lambda) {
    return Eigen::VectorXd::Constant(1, 1.0 + lambda[1]);
  };
  set_terminal(p, TerminalKind::FixedBoth, vec2(1, 1), vec2(3, 0));
  return p;
}

Problem load_lq_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open LQ problem file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw IoError("cannot parse LQ problem file " + path + ": " + e.what());
  }

  for (const char* field : {"n", "m", "A", "B", "Q", "U", "xd", "ud", "terminal"})
    if (!j.contains(field)) throw IoError("LQ file: missing field '" + std::string(field) + "'");

  const int n = j.at("n").get<int>();
  const int m = j.at("m").get<int>();
  if (n < 1 || m < 1) throw IoError("LQ file: n and m must be >= 1");

  LqData d;
  d.A = parse_matrix(j.at("A"), n, n, "A");
  d.B = parse_matrix(j.at("B"), n, m, "B");
  d.Q = parse_matrix(j.at("Q"), n, n, "Q");
  d.U = parse_matrix(j.at("U"), m, m, "U");
  d.xd = parse_vector(j.at("xd"), n, "xd");
  d.ud = parse_vector(j.at("ud"), m, "ud");
  require_spd(d.Q, "Q");
  require_spd(d.U, "U");

  const json& t = j.at("terminal");
  const std::string kind = t.value("kind", "");
  TerminalKind tk;
  Eigen::VectorXd x0, x1;
  if (kind == "fixed-both") {
    tk = TerminalKind::FixedBoth;
    x0 = parse_vector(t.at("x0"), n, "terminal.x0");
    x1 = parse_vector(t.at("x1"), n, "terminal.x1");
  } else if (kind == "fixed-initial-free-final") {
    tk = TerminalKind::FixedInitialFreeFinal;
    x0 = parse_vector(t.at("x0"), n, "terminal.x0");
  } else if (kind == "periodic") {
    tk = TerminalKind::Periodic;
  } else {
    throw IoError("LQ file: unknown terminal kind '" + kind + "'");
  }

  Problem p = make_lq_problem(std::move(d), tk, std::move(x0), std::move(x1));
  p.name = "lq:" + path;
  return p;
}

Problem problem_from_spec(const std::string& spec) {
  if (spec == "ex1") return make_example1();
  if (spec == "ex2") return make_example2();
  if (spec.rfind("lq:", 0) == 0) return load_lq_problem(spec.substr(3));
  throw InvalidArgumentError("unknown problem '" + spec +
                             "' (expected ex1, ex2 or lq:<file>)");
}

Problem with_terminal(const Problem& p, TerminalKind kind, Eigen::VectorXd x0,
                      Eigen::VectorXd x1) {
  Problem out = p;
  set_terminal(out, kind, std::move(x0), std::move(x1));
  return out;
}

}  // namespace turnpike
