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
#include "turnpike/direct.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <cmath>
#include <vector>

#include "turnpike/errors.hpp"
#include "turnpike/model.hpp"
#include "turnpike/numderiv.hpp"

namespace turnpike {

Transcription transcribe(const Problem& p, double T, int N) {
  if (N < 2) throw InvalidArgumentError("transcribe: N must be >= 2");
  if (!(T > 0.0)) throw InvalidArgumentError("transcribe: T must be positive");
  return Transcription{&p, T, N, T / N};
}

double Transcription::objective(const Eigen::VectorXd& Z) const {
  const Problem& p = *problem;
  double total = 0.0;
  for (int i = 0; i < N; ++i)
    total += h * p.f0(Z.segment(x_index(i), p.n), Z.segment(u_index(i), p.m));
  return total;
}

Eigen::VectorXd Transcription::objective_gradient(const Eigen::VectorXd& Z) const {
  const Problem& p = *problem;
  Eigen::VectorXd g = Eigen::VectorXd::Zero(decision_dim());
  for (int i = 0; i < N; ++i) {
    const Eigen::VectorXd xi = Z.segment(x_index(i), p.n);
    const Eigen::VectorXd ui = Z.segment(u_index(i), p.m);
    if (p.f0_x && p.f0_u) {
      g.segment(x_index(i), p.n) += h * p.f0_x(xi, ui);
      g.segment(u_index(i), p.m) += h * p.f0_u(xi, ui);
    } else {
      g.segment(x_index(i), p.n) +=
          h * fd::gradient([&](const Eigen::VectorXd& v) { return p.f0(v, ui); }, xi);
      g.segment(u_index(i), p.m) +=
          h * fd::gradient([&](const Eigen::VectorXd& v) { return p.f0(xi, v); }, ui);
    }
  }
  return g;
}

Eigen::VectorXd Transcription::constraints(const Eigen::VectorXd& Z) const {
  const Problem& p = *problem;
  Eigen::VectorXd c(constraint_dim());
  for (int i = 0; i < N; ++i) {
    const Eigen::VectorXd xi = Z.segment(x_index(i), p.n);
    const Eigen::VectorXd ui = Z.segment(u_index(i), p.m);
    c.segment(p.n * i, p.n) = Z.segment(x_index(i + 1), p.n) - xi - h * p.f(xi, ui);
  }
  c.tail(p.k) = eval_terminal(p, Z.segment(x_index(0), p.n), Z.segment(x_index(N), p.n));
  return c;
}

Eigen::SparseMatrix<double> Transcription::constraint_jacobian(const Eigen::VectorXd& Z) const {
  const Problem& p = *problem;
  const int n = p.n, m = p.m;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(N) * n * (n + m + 1) + 2 * p.k * n);

  for (int i = 0; i < N; ++i) {
    const Eigen::VectorXd xi = Z.segment(x_index(i), n);
    const Eigen::VectorXd ui = Z.segment(u_index(i), m);
    const Eigen::MatrixXd fx =
        p.f_x ? p.f_x(xi, ui)
              : fd::jacobian([&](const Eigen::VectorXd& v) { return p.f(v, ui); }, xi);
    const Eigen::MatrixXd fu =
        p.f_u ? p.f_u(xi, ui)
              : fd::jacobian([&](const Eigen::VectorXd& v) { return p.f(xi, v); }, ui);
    const int row = n * i;
    for (int r = 0; r < n; ++r) {
      trip.emplace_back(row + r, x_index(i + 1) + r, 1.0);
      trip.emplace_back(row + r, x_index(i) + r, -1.0 - h * fx(r, r));
      for (int c = 0; c < n; ++c)
        if (c != r) trip.emplace_back(row + r, x_index(i) + c, -h * fx(r, c));
      for (int c = 0; c < m; ++c) trip.emplace_back(row + r, u_index(i) + c, -h * fu(r, c));
    }
  }

  const TerminalJacobians tj =
      terminal_jacobians(p, Z.segment(x_index(0), n), Z.segment(x_index(N), n));
  const int row0 = n * N;
  for (int r = 0; r < p.k; ++r)
    for (int c = 0; c < n; ++c) {
      if (tj.Rx(r, c) != 0.0) trip.emplace_back(row0 + r, x_index(0) + c, tj.Rx(r, c));
      if (tj.Ry(r, c) != 0.0) trip.emplace_back(row0 + r, x_index(N) + c, tj.Ry(r, c));
    }

  Eigen::SparseMatrix<double> J(constraint_dim(), decision_dim());
  J.setFromTriplets(trip.begin(), trip.end());
  return J;
}

Eigen::SparseMatrix<double> Transcription::lagrangian_hessian(const Eigen::VectorXd& Z,
                                                              const Eigen::VectorXd& mu) const {
  const Problem& p = *problem;
  const int n = p.n, m = p.m;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(N) * (n + m) * (n + m) + 4 * n * n);

  // Node block: h * Hess f0 - h * <mu_i, Hess f> = -h * Hess_{(x,u)} H(x, mu_i, u).
  for (int i = 0; i < N; ++i) {
    const ExtremalPoint pt{Z.segment(x_index(i), n), mu.segment(n * i, n),
                           Z.segment(u_index(i), m)};
    const HamiltonianBlocks b = hessian_blocks(p, pt);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (b.Hxx(r, c) != 0.0)
          trip.emplace_back(x_index(i) + r, x_index(i) + c, -h * b.Hxx(r, c));
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < m; ++c)
        if (b.Hxu(r, c) != 0.0) {
          trip.emplace_back(x_index(i) + r, u_index(i) + c, -h * b.Hxu(r, c));
          trip.emplace_back(u_index(i) + c, x_index(i) + r, -h * b.Hxu(r, c));
        }
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c)
        if (b.Huu(r, c) != 0.0)
          trip.emplace_back(u_index(i) + r, u_index(i) + c, -h * b.Huu(r, c));
  }

  // Terminal rows contribute their curvature weighted by the trailing mu.
  const Eigen::VectorXd nu = mu.tail(p.k);
  if (nu.cwiseAbs().maxCoeff() > 0.0) {
    const TerminalCurvature tc =
        terminal_curvature(p, Z.segment(x_index(0), n), Z.segment(x_index(N), n), nu);
    auto add_block = [&](const Eigen::MatrixXd& blk, int r0, int c0) {
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          if (blk(r, c) != 0.0) trip.emplace_back(r0 + r, c0 + c, blk(r, c));
    };
    add_block(tc.N1, x_index(0), x_index(0));
    add_block(tc.N2, x_index(0), x_index(N));
    add_block(tc.N3, x_index(N), x_index(0));
    add_block(tc.N4, x_index(N), x_index(N));
  }

  Eigen::SparseMatrix<double> H(decision_dim(), decision_dim());
  H.setFromTriplets(trip.begin(), trip.end());
  return H;
}

Eigen::VectorXd warm_start_from_static(const Transcription& t, const StaticSolution& s) {
  const Problem& p = *t.problem;
  Eigen::VectorXd Z(t.decision_dim());
  for (int i = 0; i <= t.N; ++i) Z.segment(t.x_index(i), p.n) = s.x_bar;
  for (int i = 0; i < t.N; ++i) Z.segment(t.u_index(i), p.m) = s.u_bar;
  if (p.x0.size() == p.n) Z.segment(t.x_index(0), p.n) = p.x0;
  if (p.x1.size() == p.n) Z.segment(t.x_index(t.N), p.n) = p.x1;
  return Z;
}

namespace {

double kkt_residual_norm(const Eigen::VectorXd& grad_f, const Eigen::SparseMatrix<double>& J,
                         const Eigen::VectorXd& mu, const Eigen::VectorXd& c) {
  const Eigen::VectorXd stat = grad_f + J.transpose() * mu;
  return std::max(stat.lpNorm<Eigen::Infinity>(), c.lpNorm<Eigen::Infinity>());
}

// Convergence asks a little more of the defects than of the full KKT norm,
// so that the returned trajectory is feasible to 0.1 * tol.
bool converged(double kkt, const Eigen::VectorXd& c, double tol) {
  return kkt <= tol && c.lpNorm<Eigen::Infinity>() <= 0.1 * tol;
}

}  // namespace

DiscreteSolution solve_nlp(const Transcription& t, const Eigen::VectorXd& init,
                           const NlpOptions& opts) {
  const Problem& p = *t.problem;
  const int nd = t.decision_dim(), nc = t.constraint_dim();
  if (init.size() != nd) throw DimensionError("solve_nlp: init has the wrong size");
  if (!init.allFinite()) throw InvalidArgumentError("solve_nlp: init has non-finite entries");

  Eigen::VectorXd Z = init;
  Eigen::VectorXd grad_f = t.objective_gradient(Z);
  Eigen::VectorXd c = t.constraints(Z);
  Eigen::SparseMatrix<double> J = t.constraint_jacobian(Z);

  // Least-squares multipliers at the starting point.
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(nc);
  {
    Eigen::SparseMatrix<double> JJt = (J * Eigen::SparseMatrix<double>(J.transpose())).eval();
    for (int i = 0; i < nc; ++i) JJt.coeffRef(i, i) += 1e-12;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(JJt);
    if (ldlt.info() == Eigen::Success) mu = ldlt.solve(-(J * grad_f));
    if (!mu.allFinite()) mu.setZero();
  }

  double tau = 0.0;
  double rho = 1.0;
  int it = 0;
  for (; it <= opts.max_iter; ++it) {
    const double kkt = kkt_residual_norm(grad_f, J, mu, c);
    if (converged(kkt, c, opts.tol)) break;
    if (it == opts.max_iter)
      throw ConvergenceError("direct solve: iteration limit reached", kkt, it);

    bool stepped = false;
    while (!stepped) {
      // KKT system for (dZ, mu_plus).
      const Eigen::SparseMatrix<double> H = t.lagrangian_hessian(Z, mu);
      std::vector<Eigen::Triplet<double>> trip;
      trip.reserve(H.nonZeros() + 2 * J.nonZeros() + nd);
      for (int k = 0; k < H.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator itH(H, k); itH; ++itH)
          trip.emplace_back(static_cast<int>(itH.row()), static_cast<int>(itH.col()),
                            itH.value());
      const double reg = (tau == 0.0) ? opts.reg0 : tau;
      for (int i = 0; i < nd; ++i) trip.emplace_back(i, i, reg);
      for (int k = 0; k < J.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator itJ(J, k); itJ; ++itJ) {
          trip.emplace_back(nd + static_cast<int>(itJ.row()), static_cast<int>(itJ.col()),
                            itJ.value());
          trip.emplace_back(static_cast<int>(itJ.col()), nd + static_cast<int>(itJ.row()),
                            itJ.value());
        }
      Eigen::SparseMatrix<double> K(nd + nc, nd + nc);
      K.setFromTriplets(trip.begin(), trip.end());

      Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(K);
      if (lu.info() != Eigen::Success) {
        tau = (tau == 0.0) ? opts.reg0 * opts.reg_growth : tau * opts.reg_growth;
        if (tau > opts.reg_max)
          throw SingularError("direct solve: KKT factorization failed at maximum regularization");
        continue;
      }
      Eigen::VectorXd rhs(nd + nc);
      rhs << -grad_f, -c;
      const Eigen::VectorXd sol = lu.solve(rhs);
      const Eigen::VectorXd dZ = sol.head(nd);
      const Eigen::VectorXd mu_plus = sol.tail(nc);

      // Exact l1-penalty line search.
      rho = std::max(rho, 2.0 * mu_plus.lpNorm<Eigen::Infinity>() + 1.0);
      const double f0v = t.objective(Z);
      const double phi0 = f0v + rho * c.lpNorm<1>();
      const double slope = grad_f.dot(dZ) - rho * c.lpNorm<1>();

      double alpha = 1.0;
      bool accepted = false;
      if (slope < 0.0) {
        for (int halv = 0; halv <= opts.max_halvings; ++halv) {
          const Eigen::VectorXd Zt = Z + alpha * dZ;
          const double ft = t.objective(Zt);
          const Eigen::VectorXd ct = t.constraints(Zt);
          if (std::isfinite(ft) && ct.allFinite()) {
            const double phit = ft + rho * ct.lpNorm<1>();
            if (phit <= phi0 + opts.armijo * alpha * slope) {
              Z = Zt;
              c = ct;
              mu += alpha * (mu_plus - mu);
              accepted = true;
              break;
            }
          }
          alpha *= opts.backtrack;
        }
      }
      if (accepted) {
        grad_f = t.objective_gradient(Z);
        J = t.constraint_jacobian(Z);
        stepped = true;
        if (tau > opts.reg0) tau /= opts.reg_growth;  // relax once progress resumes
      } else {
        tau = (tau == 0.0) ? opts.reg0 * opts.reg_growth : tau * opts.reg_growth;
        if (tau > opts.reg_max)
          throw ConvergenceError("direct solve: line search stalled at maximum regularization",
                                 kkt_residual_norm(grad_f, J, mu, c), it);
      }
    }
  }

  const int n = p.n, m = p.m, N = t.N;
  DiscreteSolution out;
  out.multipliers = mu;
  out.kkt_residual = kkt_residual_norm(grad_f, J, mu, c);
  out.objective = t.objective(Z);
  out.iterations = it;

  // The dynamics multipliers track the adjoint: lambda_i = mu_i, lambda_N =
  // mu_{N-1} (the sign is pinned by the LQ reference solution).
  ExtremalPath& path = out.extremal.path;
  path.t.setLinSpaced(N + 1, 0.0, t.T);
  path.x.resize(N + 1, n);
  path.lam.resize(N + 1, n);
  path.u.resize(N + 1, m);
  for (int i = 0; i <= N; ++i) path.x.row(i) = Z.segment(t.x_index(i), n);
  for (int i = 0; i < N; ++i) path.lam.row(i) = mu.segment(n * i, n);
  path.lam.row(N) = mu.segment(n * (N - 1), n);
  for (int i = 0; i < N; ++i) path.u.row(i) = Z.segment(t.u_index(i), m);
  path.u.row(N) =
      pointwise_control(p, path.x.row(N).transpose(), path.lam.row(N).transpose(),
                        path.u.row(N - 1).transpose());

  out.extremal.Gamma = -mu.tail(p.k);
  out.extremal.iterations = it;
  Eigen::VectorXd z0(2 * n), zT(2 * n);
  z0 << path.x.row(0).transpose(), path.lam.row(0).transpose();
  zT << path.x.row(N).transpose(), path.lam.row(N).transpose();
  out.extremal.boundary_residual =
      shooting_residual(p, z0, zT, out.extremal.Gamma).lpNorm<Eigen::Infinity>();
  return out;
}

}  // namespace turnpike
