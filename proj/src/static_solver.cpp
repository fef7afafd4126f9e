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
#include "turnpike/static_solver.hpp"

#include <Eigen/Dense>

#include "turnpike/errors.hpp"
#include "turnpike/model.hpp"

namespace turnpike {

Eigen::VectorXd static_residual(const Problem& p, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& lambda, const Eigen::VectorXd& u) {
  Eigen::VectorXd r(2 * p.n + p.m);
  r << p.f(x, u), -hamiltonian_grad_x(p, x, lambda, u), hamiltonian_grad_u(p, x, lambda, u);
  return r;
}

namespace {

void finish(const Problem& p, StaticSolution& s) {
  s.kkt_residual = static_residual(p, s.x_bar, s.lambda_bar, s.u_bar).lpNorm<Eigen::Infinity>();
  s.gamma_bar = compute_gamma_bar(p, s);
  s.defect = compute_defect(p, s);
}

}  // namespace

StaticSolution solve_static(const Problem& p, const ExtremalPoint& guess,
                            const StaticOptions& opts) {
  const int n = p.n, m = p.m;
  if (guess.x.size() != n || guess.lambda.size() != n || guess.u.size() != m)
    throw DimensionError("solve_static: guess dimensions do not match the problem");
  if (!guess.x.allFinite() || !guess.lambda.allFinite() || !guess.u.allFinite())
    throw InvalidArgumentError("solve_static: guess has non-finite entries");

  Eigen::VectorXd x = guess.x, lambda = guess.lambda, u = guess.u;
  Eigen::VectorXd r = static_residual(p, x, lambda, u);
  int it = 0;
  for (; it < opts.max_iter; ++it) {
    if (r.lpNorm<Eigen::Infinity>() <= opts.tol) break;

    const HamiltonianBlocks b = hessian_blocks(p, {x, lambda, u});
    Eigen::MatrixXd J(2 * n + m, 2 * n + m);
    J.setZero();
    // rows f
    J.block(0, 0, n, n) = b.Hxl;
    J.block(0, 2 * n, n, m) = b.Hlu;
    // rows -dH/dx
    J.block(n, 0, n, n) = -b.Hxx;
    J.block(n, n, n, n) = -b.Hxl.transpose();
    J.block(n, 2 * n, n, m) = -b.Hxu;
    // rows dH/du
    J.block(2 * n, 0, m, n) = b.Hxu.transpose();
    J.block(2 * n, n, m, n) = b.Hlu.transpose();
    J.block(2 * n, 2 * n, m, m) = b.Huu;

    const Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
    if (!lu.isInvertible())
      throw SingularError("solve_static: Newton matrix is singular; try a different guess");
    const Eigen::VectorXd delta = lu.solve(-r);

    // Backtracking on the squared residual norm.
    const double phi0 = r.squaredNorm();
    double alpha = 1.0;
    bool accepted = false;
    while (alpha >= opts.min_step) {
      const Eigen::VectorXd xt = x + alpha * delta.head(n);
      const Eigen::VectorXd lt = lambda + alpha * delta.segment(n, n);
      const Eigen::VectorXd ut = u + alpha * delta.tail(m);
      const Eigen::VectorXd rt = static_residual(p, xt, lt, ut);
      if (rt.allFinite() && rt.squaredNorm() < phi0) {
        x = xt;
        lambda = lt;
        u = ut;
        r = rt;
        accepted = true;
        break;
      }
      alpha *= opts.backtrack;
    }
    if (!accepted)
      throw ConvergenceError("static solve diverged: line search stalled",
                             r.lpNorm<Eigen::Infinity>(), it);
  }
  if (r.lpNorm<Eigen::Infinity>() > opts.tol)
    throw ConvergenceError("static solve diverged: iteration limit reached",
                           r.lpNorm<Eigen::Infinity>(), it);

  StaticSolution s;
  s.x_bar = x;
  s.u_bar = u;
  s.lambda_bar = lambda;
  s.iterations = it;
  finish(p, s);
  return s;
}

StaticSolution solve_static(const Problem& p, const StaticOptions& opts) {
  ExtremalPoint zero{Eigen::VectorXd::Zero(p.n), Eigen::VectorXd::Zero(p.n),
                     Eigen::VectorXd::Zero(p.m)};
  return solve_static(p, zero, opts);
}

StaticSolution solve_static_lq(const Problem& p, const StaticOptions&) {
  if (!p.lq) throw InvalidArgumentError("solve_static_lq: problem carries no LQ data");
  const LqData& d = *p.lq;
  const int n = p.n;

  const Eigen::MatrixXd BUinvBt =
      d.B * d.U.ldlt().solve(Eigen::MatrixXd(d.B.transpose()));
  Eigen::MatrixXd M(2 * n, 2 * n);
  M << d.A, BUinvBt, d.Q, -d.A.transpose();
  Eigen::VectorXd rhs(2 * n);
  rhs << -d.B * d.ud, d.Q * d.xd;

  const Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  if (!lu.isInvertible())
    throw SingularError(
        "static LQ system singular: null(A^T) and null(B^T) intersect nontrivially");
  const Eigen::VectorXd xl = lu.solve(rhs);

  StaticSolution s;
  s.x_bar = xl.head(n);
  s.lambda_bar = xl.tail(n);
  s.u_bar = d.ud + d.U.ldlt().solve(d.B.transpose() * s.lambda_bar);
  s.iterations = 0;
  finish(p, s);
  return s;
}

Eigen::VectorXd compute_gamma_bar(const Problem& p, const StaticSolution& s) {
  const TerminalJacobians tj = terminal_jacobians(p, s.x_bar, s.x_bar);
  const Eigen::MatrixXd G = tj.Rx * tj.Rx.transpose() + tj.Ry * tj.Ry.transpose();
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(G);
  if (!lu.isInvertible())
    throw SingularError("terminal map R is singular at the static pair (x_bar, x_bar)");
  return lu.solve((-tj.Rx + tj.Ry) * s.lambda_bar);
}

double compute_defect(const Problem& p, const StaticSolution& s) {
  const TerminalJacobians tj = terminal_jacobians(p, s.x_bar, s.x_bar);
  Eigen::VectorXd tv(2 * p.n);
  tv << -s.lambda_bar - tj.Rx.transpose() * s.gamma_bar,
      s.lambda_bar - tj.Ry.transpose() * s.gamma_bar;
  return eval_terminal(p, s.x_bar, s.x_bar).norm() + tv.norm();
}

}  // namespace turnpike
