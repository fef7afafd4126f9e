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
#include "turnpike/shooting.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "turnpike/errors.hpp"
#include "turnpike/model.hpp"
#include "turnpike/numderiv.hpp"

namespace turnpike {

namespace {

// The stationarity tolerance follows the gradient's accuracy: tight for
// analytic derivatives, at the noise floor of central differences otherwise.
constexpr double kControlTolAnalytic = 1e-12;
constexpr double kControlTolFd = 1e-9;
constexpr int kControlMaxIter = 50;

Eigen::MatrixXd huu_at(const Problem& p, const Eigen::VectorXd& x,
                       const Eigen::VectorXd& lambda, const Eigen::VectorXd& u) {
  if (p.curvature) return p.curvature(x, lambda, u).Huu;
  return fd::hessian(
      [&](const Eigen::VectorXd& v) { return lambda.dot(p.f(x, v)) - p.f0(x, v); }, u);
}

}  // namespace

Eigen::VectorXd pointwise_control(const Problem& p, const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& lambda, const Eigen::VectorXd& warm) {
  if (p.control_law) return p.control_law(x, lambda);

  Eigen::VectorXd u = warm.size() == p.m ? warm : Eigen::VectorXd::Zero(p.m);
  const double tol = (p.f_u && p.f0_u) ? kControlTolAnalytic : kControlTolFd;
  for (int it = 0; it < kControlMaxIter; ++it) {
    const Eigen::VectorXd g = hamiltonian_grad_u(p, x, lambda, u);
    if (!g.allFinite()) break;
    if (g.lpNorm<Eigen::Infinity>() <= tol * (1.0 + u.lpNorm<Eigen::Infinity>())) {
      const Eigen::MatrixXd huu = huu_at(p, x, lambda, u);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (huu + huu.transpose()));
      if (es.eigenvalues().maxCoeff() >= 0.0)
        throw SingularError("pointwise_control: Huu is not negative definite at the solution");
      return u;
    }
    const Eigen::MatrixXd huu = huu_at(p, x, lambda, u);
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(huu);
    if (!lu.isInvertible()) break;
    u -= lu.solve(g);
    if (!u.allFinite()) break;
  }
  throw ConvergenceError("pointwise_control: Newton on dH/du = 0 failed at x = [" +
                             std::to_string(x.size() ? x[0] : 0.0) + ", ...], lambda = [" +
                             std::to_string(lambda.size() ? lambda[0] : 0.0) + ", ...]",
                         0.0, kControlMaxIter);
}

ExtremalPath integrate_extremal(const Problem& p, const Eigen::VectorXd& z_start,
                                double t_from, double t_to, int steps, double blowup) {
  const int n = p.n, m = p.m;
  if (steps < 1) throw InvalidArgumentError("integrate_extremal: steps must be >= 1");
  if (t_from == t_to) throw InvalidArgumentError("integrate_extremal: empty time interval");
  if (z_start.size() != 2 * n)
    throw DimensionError("integrate_extremal: z_start must have size 2n");

  const double h = (t_to - t_from) / steps;
  ExtremalPath path;
  path.t.resize(steps + 1);
  path.x.resize(steps + 1, n);
  path.lam.resize(steps + 1, n);
  path.u.resize(steps + 1, m);

  Eigen::VectorXd warm = Eigen::VectorXd::Zero(m);
  auto rhs = [&](const Eigen::VectorXd& z, Eigen::VectorXd* u_out) {
    const Eigen::VectorXd x = z.head(n);
    const Eigen::VectorXd lam = z.tail(n);
    const Eigen::VectorXd u = pointwise_control(p, x, lam, warm);
    warm = u;
    if (u_out) *u_out = u;
    Eigen::VectorXd dz(2 * n);
    dz << p.f(x, u), -hamiltonian_grad_x(p, x, lam, u);
    return dz;
  };

  Eigen::VectorXd z = z_start;
  for (int i = 0; i < steps; ++i) {
    const double t = t_from + i * h;
    Eigen::VectorXd u_node;
    const Eigen::VectorXd k1 = rhs(z, &u_node);
    path.t[i] = t;
    path.x.row(i) = z.head(n);
    path.lam.row(i) = z.tail(n);
    path.u.row(i) = u_node;

    const Eigen::VectorXd k2 = rhs(z + 0.5 * h * k1, nullptr);
    const Eigen::VectorXd k3 = rhs(z + 0.5 * h * k2, nullptr);
    const Eigen::VectorXd k4 = rhs(z + h * k3, nullptr);
    z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!z.allFinite() || z.lpNorm<Eigen::Infinity>() > blowup)
      throw BlowupError("integration blow-up at t = " + std::to_string(t + h), t + h);
  }
  path.t[steps] = t_to;
  path.x.row(steps) = z.head(n);
  path.lam.row(steps) = z.tail(n);
  path.u.row(steps) = pointwise_control(p, z.head(n), z.tail(n), warm);
  return path;
}

Eigen::VectorXd shooting_residual(const Problem& p, const Eigen::VectorXd& z0,
                                  const Eigen::VectorXd& zT, const Eigen::VectorXd& Gamma) {
  const int n = p.n;
  const Eigen::VectorXd x0 = z0.head(n), l0 = z0.tail(n);
  const Eigen::VectorXd xT = zT.head(n), lT = zT.tail(n);
  const TerminalJacobians tj = terminal_jacobians(p, x0, xT);
  Eigen::VectorXd r(p.k + 2 * n);
  r << eval_terminal(p, x0, xT), -l0 - tj.Rx.transpose() * Gamma,
      lT - tj.Ry.transpose() * Gamma;
  return r;
}

namespace {

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

struct NewtonOutcome {
  Eigen::VectorXd q;
  double residual = 0.0;
  int iterations = 0;
  std::vector<double> history;
};

// Damped Newton with a forward-difference Jacobian, shared by both shooting
// variants. Trial points whose integration blows up are rejected by the line
// search; a blow-up at the current iterate propagates.
NewtonOutcome shooting_newton(const ResidualFn& fn, Eigen::VectorXd q,
                              const ShootOptions& opts) {
  NewtonOutcome out;
  Eigen::VectorXd r = fn(q);
  out.history.push_back(r.lpNorm<Eigen::Infinity>());

  for (int it = 0; it <= opts.max_iter; ++it) {
    if (r.lpNorm<Eigen::Infinity>() <= opts.tol) {
      out.q = q;
      out.residual = r.lpNorm<Eigen::Infinity>();
      out.iterations = it;
      return out;
    }
    if (it == opts.max_iter) break;

    Eigen::MatrixXd J(r.size(), q.size());
    for (Eigen::Index j = 0; j < q.size(); ++j) {
      const double step = opts.fd_step * (1.0 + std::abs(q[j]));
      Eigen::VectorXd qp = q;
      qp[j] += step;
      J.col(j) = (fn(qp) - r) / step;
    }
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
    if (!lu.isInvertible())
      throw SingularError("shooting: Newton matrix is singular (boundary system rank-deficient)");
    const Eigen::VectorXd d = lu.solve(-r);

    const double phi0 = r.squaredNorm();
    double alpha = 1.0;
    bool accepted = false;
    for (int halv = 0; halv <= opts.max_halvings; ++halv) {
      Eigen::VectorXd rt;
      bool ok = true;
      try {
        rt = fn(q + alpha * d);
      } catch (const Error&) {
        ok = false;
      }
      if (ok && rt.allFinite() && rt.squaredNorm() < phi0) {
        q += alpha * d;
        r = rt;
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted)
      throw ConvergenceError("shooting diverged: line search stalled",
                             r.lpNorm<Eigen::Infinity>(), it, out.history);
    out.history.push_back(r.lpNorm<Eigen::Infinity>());
  }
  throw ConvergenceError("shooting diverged: iteration limit reached",
                         r.lpNorm<Eigen::Infinity>(), opts.max_iter, out.history);
}

}  // namespace

Extremal classic_shoot(const Problem& p, double T, int steps, const Eigen::VectorXd& guess_z0,
                       const Eigen::VectorXd& guess_gamma, const ShootOptions& opts) {
  const int n = p.n, k = p.k;
  if (guess_z0.size() != 2 * n || guess_gamma.size() != k)
    throw DimensionError("classic_shoot: guess dimensions do not match the problem");
  if (!guess_z0.allFinite() || !guess_gamma.allFinite())
    throw InvalidArgumentError("classic_shoot: guess has non-finite entries");

  auto residual = [&](const Eigen::VectorXd& q) {
    const Eigen::VectorXd z0 = q.head(2 * n);
    const ExtremalPath path = integrate_extremal(p, z0, 0.0, T, steps, opts.blowup);
    Eigen::VectorXd zT(2 * n);
    zT << path.x.row(steps).transpose(), path.lam.row(steps).transpose();
    return shooting_residual(p, z0, zT, q.tail(k));
  };

  Eigen::VectorXd q(2 * n + k);
  q << guess_z0, guess_gamma;
  const NewtonOutcome sol = shooting_newton(residual, q, opts);

  Extremal e;
  e.path = integrate_extremal(p, sol.q.head(2 * n), 0.0, T, steps, opts.blowup);
  e.Gamma = sol.q.tail(k);
  e.boundary_residual = sol.residual;
  e.iterations = sol.iterations;
  return e;
}

Extremal midpoint_shoot(const Problem& p, double T, int steps, const StaticSolution& s,
                        const ShootOptions& opts) {
  const int n = p.n, k = p.k;
  if (steps < 2) throw InvalidArgumentError("midpoint_shoot: steps must be >= 2");
  if (!(opts.anchor_fraction > 0.0 && opts.anchor_fraction < 1.0))
    throw InvalidArgumentError("midpoint_shoot: anchor_fraction must lie in (0, 1)");
  if (s.gamma_bar.size() != k)
    throw DimensionError("midpoint_shoot: static solution lacks gamma_bar");

  // Anchor snapped to the grid so both halves share the uniform step T/steps.
  const int ia =
      std::clamp(static_cast<int>(std::lround(opts.anchor_fraction * steps)), 1, steps - 1);
  const double h = T / steps;
  const double ta = ia * h;

  auto residual = [&](const Eigen::VectorXd& q) {
    const Eigen::VectorXd za = q.head(2 * n);
    const ExtremalPath back = integrate_extremal(p, za, ta, 0.0, ia, opts.blowup);
    const ExtremalPath fwd = integrate_extremal(p, za, ta, T, steps - ia, opts.blowup);
    Eigen::VectorXd z0(2 * n), zT(2 * n);
    z0 << back.x.row(ia).transpose(), back.lam.row(ia).transpose();
    zT << fwd.x.row(steps - ia).transpose(), fwd.lam.row(steps - ia).transpose();
    return shooting_residual(p, z0, zT, q.tail(k));
  };

  Eigen::VectorXd q(2 * n + k);
  q << s.x_bar, s.lambda_bar, s.gamma_bar;
  const NewtonOutcome sol = shooting_newton(residual, q, opts);

  const Eigen::VectorXd za = sol.q.head(2 * n);
  const ExtremalPath back = integrate_extremal(p, za, ta, 0.0, ia, opts.blowup);
  const ExtremalPath fwd = integrate_extremal(p, za, ta, T, steps - ia, opts.blowup);

  Extremal e;
  e.path.t.resize(steps + 1);
  e.path.x.resize(steps + 1, n);
  e.path.lam.resize(steps + 1, n);
  e.path.u.resize(steps + 1, p.m);
  for (int i = 0; i <= ia; ++i) {
    e.path.t[i] = back.t[ia - i];
    e.path.x.row(i) = back.x.row(ia - i);
    e.path.lam.row(i) = back.lam.row(ia - i);
    e.path.u.row(i) = back.u.row(ia - i);
  }
  for (int i = ia + 1; i <= steps; ++i) {
    e.path.t[i] = fwd.t[i - ia];
    e.path.x.row(i) = fwd.x.row(i - ia);
    e.path.lam.row(i) = fwd.lam.row(i - ia);
    e.path.u.row(i) = fwd.u.row(i - ia);
  }
  e.Gamma = sol.q.tail(k);
  e.boundary_residual = sol.residual;
  e.iterations = sol.iterations;
  return e;
}

double stationarity_residual(const Problem& p, const ExtremalPath& path) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < path.t.size(); ++i) {
    const Eigen::VectorXd g =
        hamiltonian_grad_u(p, path.x.row(i).transpose(), path.lam.row(i).transpose(),
                           path.u.row(i).transpose());
    worst = std::max(worst, g.lpNorm<Eigen::Infinity>());
  }
  return worst;
}

WellPosednessMatrix build_wellposedness_matrix(const Problem& p, const StaticSolution& s,
                                               const HyperbolicSplitting& split) {
  const int n = p.n, k = p.k;
  if (s.gamma_bar.size() != k)
    throw DimensionError("build_wellposedness_matrix: gamma_bar missing or wrong size");
  const TerminalJacobians tj = terminal_jacobians(p, s.x_bar, s.x_bar);
  const TerminalCurvature tc = terminal_curvature(p, s.x_bar, s.x_bar, s.gamma_bar);

  WellPosednessMatrix w;
  w.Q_shoot.resize(2 * n + k, 2 * n + k);
  w.Q_shoot.setZero();
  w.Q_shoot.topLeftCorner(k, n) = tj.Rx;
  w.Q_shoot.block(0, n, k, n) = tj.Ry;
  w.Q_shoot.block(k, 0, n, n) = split.E_minus + tc.N1;
  w.Q_shoot.block(k, n, n, n) = tc.N2;
  w.Q_shoot.block(k, 2 * n, n, k) = tj.Rx.transpose();
  w.Q_shoot.block(k + n, 0, n, n) = tc.N3;
  w.Q_shoot.block(k + n, n, n, n) = -split.E_plus + tc.N4;
  w.Q_shoot.block(k + n, 2 * n, n, k) = tj.Ry.transpose();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(w.Q_shoot);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  w.condition_estimate = smax > 0.0 ? smin / smax : 0.0;
  return w;
}

}  // namespace turnpike
