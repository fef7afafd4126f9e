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
#include "turnpike/model.hpp"

#include <Eigen/Dense>

#include "turnpike/errors.hpp"
#include "turnpike/numderiv.hpp"
#include "turnpike/static_solver.hpp"

namespace turnpike {

namespace {

void check_point(const Problem& p, const ExtremalPoint& e) {
  if (e.x.size() != p.n || e.lambda.size() != p.n || e.u.size() != p.m)
    throw DimensionError("extremal point dimensions do not match the problem (n=" +
                         std::to_string(p.n) + ", m=" + std::to_string(p.m) + ")");
  if (!e.x.allFinite() || !e.lambda.allFinite() || !e.u.allFinite())
    throw InvalidArgumentError("extremal point has non-finite entries");
}

void check_finite(const Eigen::MatrixXd& mat, const char* name) {
  if (mat.allFinite()) return;
  for (Eigen::Index j = 0; j < mat.cols(); ++j)
    for (Eigen::Index i = 0; i < mat.rows(); ++i)
      if (!std::isfinite(mat(i, j)))
        throw InvalidArgumentError("hessian_blocks: non-finite entry " + std::string(name) + "(" +
                                   std::to_string(i) + "," + std::to_string(j) + ")");
}

}  // namespace

double eval_hamiltonian(const Problem& p, const ExtremalPoint& e) {
  check_point(p, e);
  return e.lambda.dot(p.f(e.x, e.u)) - p.f0(e.x, e.u);
}

Eigen::VectorXd hamiltonian_grad_x(const Problem& p, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& lambda, const Eigen::VectorXd& u) {
  if (p.f_x && p.f0_x) return p.f_x(x, u).transpose() * lambda - p.f0_x(x, u);
  return fd::gradient(
      [&](const Eigen::VectorXd& v) { return lambda.dot(p.f(v, u)) - p.f0(v, u); }, x);
}

Eigen::VectorXd hamiltonian_grad_u(const Problem& p, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& lambda, const Eigen::VectorXd& u) {
  if (p.f_u && p.f0_u) return p.f_u(x, u).transpose() * lambda - p.f0_u(x, u);
  return fd::gradient(
      [&](const Eigen::VectorXd& v) { return lambda.dot(p.f(x, v)) - p.f0(x, v); }, u);
}

HamiltonianBlocks hessian_blocks(const Problem& p, const ExtremalPoint& e) {
  check_point(p, e);
  const int n = p.n, m = p.m;
  HamiltonianBlocks b;

  if (p.f_x)
    b.Hxl = p.f_x(e.x, e.u);
  else
    b.Hxl = fd::jacobian([&](const Eigen::VectorXd& v) { return p.f(v, e.u); }, e.x);
  if (p.f_u)
    b.Hlu = p.f_u(e.x, e.u);
  else
    b.Hlu = fd::jacobian([&](const Eigen::VectorXd& v) { return p.f(e.x, v); }, e.u);

  if (p.curvature) {
    const HamiltonianCurvature c = p.curvature(e.x, e.lambda, e.u);
    b.Hxx = c.Hxx;
    b.Hxu = c.Hxu;
    b.Huu = c.Huu;
  } else {
    // Hessian of the scalar H over the stacked variable (x; u).
    Eigen::VectorXd v(n + m);
    v << e.x, e.u;
    const Eigen::MatrixXd h = fd::hessian(
        [&](const Eigen::VectorXd& w) {
          return e.lambda.dot(p.f(w.head(n), w.tail(m))) - p.f0(w.head(n), w.tail(m));
        },
        v);
    b.Hxx = h.topLeftCorner(n, n);
    b.Hxu = h.topRightCorner(n, m);
    b.Huu = h.bottomRightCorner(m, m);
  }

  check_finite(b.Hxx, "Hxx");
  check_finite(b.Hxl, "Hxl");
  check_finite(b.Hxu, "Hxu");
  check_finite(b.Hlu, "Hlu");
  check_finite(b.Huu, "Huu");
  return b;
}

LinearizationData assemble_abw(const HamiltonianBlocks& b) {
  const Eigen::MatrixXd huu = 0.5 * (b.Huu + b.Huu.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(huu);
  const double emax = es.eigenvalues().cwiseAbs().maxCoeff();
  const double emin = es.eigenvalues().cwiseAbs().minCoeff();
  if (emin <= 0.0 || emax / emin > 1e12)
    throw SingularError("strong Legendre condition violated: Huu is numerically singular");

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(huu);
  const Eigen::MatrixXd huu_inv_hxut = lu.solve(b.Hxu.transpose());  // m x n

  LinearizationData d;
  d.A = b.Hxl - b.Hlu * huu_inv_hxut;
  d.B = b.Hlu;
  d.W = -b.Hxx + b.Hxu * huu_inv_hxut;
  d.W = 0.5 * (d.W + d.W.transpose()).eval();
  return d;
}

Eigen::MatrixXd controllability_matrix(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  const Eigen::Index n = A.rows(), m = B.cols();
  Eigen::MatrixXd K(n, n * m);
  Eigen::MatrixXd block = B;
  for (Eigen::Index i = 0; i < n; ++i) {
    K.middleCols(i * m, m) = block;
    block = A * block;
  }
  return K;
}

AssumptionReport check_assumptions(const LinearizationData& d, const Problem& p,
                                   const StaticSolution& s) {
  AssumptionReport r;

  const Eigen::MatrixXd K = controllability_matrix(d.A, d.B);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(K);
  const double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  const double tol = smax * std::max(K.rows(), K.cols()) *
                     std::numeric_limits<double>::epsilon();
  r.kalman_rank = static_cast<int>((svd.singularValues().array() > tol).count());
  r.kalman_ok = (r.kalman_rank == p.n);

  const HamiltonianBlocks b = hessian_blocks(p, {s.x_bar, s.lambda_bar, s.u_bar});
  const Eigen::MatrixXd neg_huu = -0.5 * (b.Huu + b.Huu.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eh(neg_huu);
  r.huu_min_eig_neg = eh.eigenvalues().minCoeff();
  r.huu_negdef = r.huu_min_eig_neg > 0.0;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ew(d.W);
  r.w_min_eig = ew.eigenvalues().minCoeff();
  r.w_posdef = r.w_min_eig > 0.0;

  const TerminalJacobians tj = terminal_jacobians(p, s.x_bar, s.x_bar);
  Eigen::MatrixXd dR(p.k, 2 * p.n);
  dR << tj.Rx, tj.Ry;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd_r(dR);
  const double rmax = svd_r.singularValues().size() ? svd_r.singularValues()(0) : 0.0;
  const double rtol = rmax * std::max(dR.rows(), dR.cols()) *
                      std::numeric_limits<double>::epsilon();
  r.r_rank = static_cast<int>((svd_r.singularValues().array() > rtol).count());
  r.r_full_rank = (r.r_rank == p.k);
  return r;
}

}  // namespace turnpike
