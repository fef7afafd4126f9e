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
#include "turnpike/problem.hpp"

#include <Eigen/Dense>

#include "turnpike/errors.hpp"
#include "turnpike/numderiv.hpp"

namespace turnpike {

namespace {

void check_vec(const Eigen::VectorXd& v, int size, const char* what) {
  if (v.size() != size)
    throw DimensionError(std::string(what) + ": expected size " + std::to_string(size) +
                         ", got " + std::to_string(v.size()));
}

}  // namespace

void set_terminal(Problem& p, TerminalKind kind, Eigen::VectorXd x0, Eigen::VectorXd x1) {
  const int n = p.n;
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(n, n);
  p.terminal_kind = kind;
  p.terminal_curv = [n](const Eigen::VectorXd&, const Eigen::VectorXd&, const Eigen::VectorXd&) {
    TerminalCurvature c;
    c.N1 = c.N2 = c.N3 = c.N4 = Eigen::MatrixXd::Zero(n, n);
    return c;
  };
  switch (kind) {
    case TerminalKind::FixedBoth: {
      check_vec(x0, n, "set_terminal x0");
      check_vec(x1, n, "set_terminal x1");
      p.k = 2 * n;
      p.x0 = std::move(x0);
      p.x1 = std::move(x1);
      p.terminal = [x0 = p.x0, x1 = p.x1](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
        Eigen::VectorXd r(x.size() + y.size());
        r << x - x0, y - x1;
        return r;
      };
      Eigen::MatrixXd Rx(2 * n, n), Ry(2 * n, n);
      Rx << I, Z;
      Ry << Z, I;
      p.terminal_jac = [Rx, Ry](const Eigen::VectorXd&, const Eigen::VectorXd&) {
        return TerminalJacobians{Rx, Ry};
      };
      break;
    }
    case TerminalKind::FixedInitialFreeFinal: {
      check_vec(x0, n, "set_terminal x0");
      p.k = n;
      p.x0 = std::move(x0);
      p.x1.resize(0);
      p.terminal = [x0 = p.x0](const Eigen::VectorXd& x, const Eigen::VectorXd&) {
        return Eigen::VectorXd(x - x0);
      };
      p.terminal_jac = [I, Z](const Eigen::VectorXd&, const Eigen::VectorXd&) {
        return TerminalJacobians{I, Z};
      };
      break;
    }
    case TerminalKind::Periodic: {
      p.k = n;
      p.x0.resize(0);
      p.x1.resize(0);
      p.terminal = [](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
        return Eigen::VectorXd(x - y);
      };
      p.terminal_jac = [I](const Eigen::VectorXd&, const Eigen::VectorXd&) {
        return TerminalJacobians{I, -I};
      };
      break;
    }
    default:
      throw InvalidArgumentError(
          "set_terminal handles the structured kinds only; set the fields directly for General");
  }
}

void set_constrained_final(Problem& p, Eigen::VectorXd x0, TerminalMapFn g, int p_dim) {
  const int n = p.n;
  check_vec(x0, n, "set_constrained_final x0");
  if (p_dim < 1) throw InvalidArgumentError("set_constrained_final: p_dim must be >= 1");
  p.terminal_kind = TerminalKind::ConstrainedFinal;
  p.k = n + p_dim;
  p.x0 = std::move(x0);
  p.x1.resize(0);
  // g only sees the final point; reuse the two-argument signature with x ignored.
  p.terminal = [x0 = p.x0, g, p_dim](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    Eigen::VectorXd gy = g(x, y);
    if (gy.size() != p_dim)
      throw DimensionError("constrained-final g: wrong output dimension");
    Eigen::VectorXd r(x.size() + p_dim);
    r << x - x0, gy;
    return r;
  };
  p.terminal_jac = nullptr;   // finite differences
  p.terminal_curv = nullptr;  // finite differences
}

Eigen::VectorXd eval_terminal(const Problem& p, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& y) {
  check_vec(x, p.n, "terminal x");
  check_vec(y, p.n, "terminal y");
  Eigen::VectorXd r = p.terminal(x, y);
  if (r.size() != p.k) throw DimensionError("terminal map: wrong output dimension");
  return r;
}

TerminalJacobians terminal_jacobians(const Problem& p, const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& y) {
  if (p.terminal_jac) return p.terminal_jac(x, y);
  TerminalJacobians j;
  j.Rx = fd::jacobian([&](const Eigen::VectorXd& v) { return p.terminal(v, y); }, x);
  j.Ry = fd::jacobian([&](const Eigen::VectorXd& v) { return p.terminal(x, v); }, y);
  return j;
}

TerminalCurvature terminal_curvature(const Problem& p, const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& y, const Eigen::VectorXd& gamma) {
  check_vec(gamma, p.k, "terminal gamma");
  if (p.terminal_curv) return p.terminal_curv(x, y, gamma);
  const int n = p.n;
  // Hessian of the scalar gamma'R(x, y) over the stacked variable (x; y).
  Eigen::VectorXd v(2 * n);
  v << x, y;
  Eigen::MatrixXd h = fd::hessian(
      [&](const Eigen::VectorXd& w) {
        return gamma.dot(p.terminal(w.head(n), w.tail(n)));
      },
      v);
  TerminalCurvature c;
  c.N1 = h.topLeftCorner(n, n);
  c.N2 = h.topRightCorner(n, n);
  c.N3 = h.bottomLeftCorner(n, n);
  c.N4 = h.bottomRightCorner(n, n);
  return c;
}

Problem make_lq_problem(LqData lq, TerminalKind kind, Eigen::VectorXd x0, Eigen::VectorXd x1) {
  const int n = static_cast<int>(lq.A.rows());
  const int m = static_cast<int>(lq.B.cols());
  if (lq.A.cols() != n || lq.B.rows() != n || lq.Q.rows() != n || lq.Q.cols() != n ||
      lq.U.rows() != m || lq.U.cols() != m || lq.xd.size() != n || lq.ud.size() != m)
    throw DimensionError("make_lq_problem: inconsistent LQ data dimensions");

  Problem p;
  p.name = "lq";
  p.n = n;
  p.m = m;
  const LqData d = lq;
  p.f = [d](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    return Eigen::VectorXd(d.A * x + d.B * u);
  };
  p.f0 = [d](const Eigen::VectorXd& x, const Eigen::VectorXd& u) {
    const Eigen::VectorXd dx = x - d.xd;
    const Eigen::VectorXd du = u - d.ud;
    return 0.5 * dx.dot(d.Q * dx) + 0.5 * du.dot(d.U * du);
  };
  p.f_x = [d](const Eigen::VectorXd&, const Eigen::VectorXd&) { return d.A; };
  p.f_u = [d](const Eigen::VectorXd&, const Eigen::VectorXd&) { return d.B; };
  p.f0_x = [d](const Eigen::VectorXd& x, const Eigen::VectorXd&) {
    return Eigen::VectorXd(d.Q * (x - d.xd));
  };
  p.f0_u = [d](const Eigen::VectorXd&, const Eigen::VectorXd& u) {
    return Eigen::VectorXd(d.U * (u - d.ud));
  };
  p.curvature = [d, n, m](const Eigen::VectorXd&, const Eigen::VectorXd&, const Eigen::VectorXd&) {
    HamiltonianCurvature c;
    c.Hxx = -d.Q;
    c.Hxu = Eigen::MatrixXd::Zero(n, m);
    c.Huu = -d.U;
    return c;
  };
  const Eigen::LLT<Eigen::MatrixXd> u_llt(lq.U);
  if (u_llt.info() != Eigen::Success)
    throw SingularError("make_lq_problem: U is not positive definite");
  p.control_law = [d, u_llt](const Eigen::VectorXd&, const Eigen::VectorXd& lambda) {
    return Eigen::VectorXd(d.ud + u_llt.solve(d.B.transpose() * lambda));
  };
  p.lq = std::move(lq);
  set_terminal(p, kind, std::move(x0), std::move(x1));
  return p;
}

}  // namespace turnpike
