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
#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <string>

namespace turnpike {

/// How the endpoints of the trajectory are constrained.
///
/// Every kind is realized through a single terminal map R(x(0), x(T)) = 0
/// with k rows; the structured kinds fill in the standard closed forms.
enum class TerminalKind {
  FixedBoth,              ///< x(0) = x0 and x(T) = x1, k = 2n
  FixedInitialFreeFinal,  ///< x(0) = x0, final point free, k = n
  ConstrainedFinal,       ///< x(0) = x0 and g(x(T)) = 0, k = n + p
  Periodic,               ///< x(0) = x(T), k = n
  General                 ///< user-supplied map R(x, y), 1 <= k <= 2n
};

/// Data of a linear-quadratic problem: dynamics x' = Ax + Bu and running cost
/// (1/2)(x-xd)'Q(x-xd) + (1/2)(u-ud)'U(u-ud).
struct LqData {
  Eigen::MatrixXd A, B, Q, U;
  Eigen::VectorXd xd, ud;
};

/// A state/adjoint/control triple. The cost multiplier is fixed to -1
/// throughout (normal extremals only), so it is not stored.
struct ExtremalPoint {
  Eigen::VectorXd x;
  Eigen::VectorXd lambda;
  Eigen::VectorXd u;
};

/// Second derivatives of the Hamiltonian in (x, u) at fixed lambda.
struct HamiltonianCurvature {
  Eigen::MatrixXd Hxx;  ///< n x n
  Eigen::MatrixXd Hxu;  ///< n x m
  Eigen::MatrixXd Huu;  ///< m x m
};

/// Jacobians of the terminal map R with respect to its two arguments.
struct TerminalJacobians {
  Eigen::MatrixXd Rx;  ///< k x n
  Eigen::MatrixXd Ry;  ///< k x n
};

/// Second derivatives of gamma'R contracted over the constraint rows:
/// N1 = d2(gamma'R)/dx2, N2 = d2/dxdy, N3 = d2/dydx, N4 = d2/dy2 (n x n each).
struct TerminalCurvature {
  Eigen::MatrixXd N1, N2, N3, N4;
};

using DynamicsFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)>;
using RunningCostFn = std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)>;
using TerminalMapFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)>;
using JacobianFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&, const Eigen::VectorXd&)>;
using GradientFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)>;
using CurvatureFn = std::function<HamiltonianCurvature(
    const Eigen::VectorXd&, const Eigen::VectorXd&, const Eigen::VectorXd&)>;
using ControlLawFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)>;
using TerminalJacFn = std::function<TerminalJacobians(const Eigen::VectorXd&, const Eigen::VectorXd&)>;
using TerminalCurvFn = std::function<TerminalCurvature(
    const Eigen::VectorXd&, const Eigen::VectorXd&, const Eigen::VectorXd&)>;

/// An optimal control problem
///
///     minimize   int_0^T f0(x, u) dt
///     subject to x' = f(x, u),  R(x(0), x(T)) = 0.
///
/// Dynamics, cost and terminal map are evaluable callbacks; first and second
/// derivatives are optional and fall back to central finite differences when
/// absent. All evaluations must return finite values at finite points.
struct Problem {
  std::string name;
  int n = 0;  ///< state dimension, >= 1
  int m = 0;  ///< control dimension, >= 1
  int k = 0;  ///< number of terminal constraint rows, 1 <= k <= 2n

  TerminalKind terminal_kind = TerminalKind::General;
  Eigen::VectorXd x0;  ///< initial point (FixedBoth, FixedInitialFreeFinal, ConstrainedFinal)
  Eigen::VectorXd x1;  ///< final point (FixedBoth)

  DynamicsFn f;
  RunningCostFn f0;
  TerminalMapFn terminal;  ///< R(x, y), k rows

  // Optional analytic derivatives. When unset, finite differences are used.
  JacobianFn f_x, f_u;     ///< Jacobians of f, n x n and n x m
  GradientFn f0_x, f0_u;   ///< gradients of f0
  CurvatureFn curvature;   ///< second derivatives of H in (x, u)
  TerminalJacFn terminal_jac;
  TerminalCurvFn terminal_curv;

  /// Closed-form minimizer of H over u, when one exists (LQ and
  /// control-affine quadratic problems).
  ControlLawFn control_law;

  /// Set for LQ problems; enables the exact static solve and the LQ oracles.
  std::optional<LqData> lq;
};

/// Installs the terminal map (and its analytic derivatives) for one of the
/// structured kinds. FixedBoth needs x0 and x1; FixedInitialFreeFinal needs
/// x0; Periodic needs neither.
void set_terminal(Problem& p, TerminalKind kind,
                  Eigen::VectorXd x0 = {}, Eigen::VectorXd x1 = {});

/// Installs R(x, y) = (x - x0, g(y)) with g of dimension p.
void set_constrained_final(Problem& p, Eigen::VectorXd x0, TerminalMapFn g, int p_dim);

/// R evaluated with dimension checks.
Eigen::VectorXd eval_terminal(const Problem& p, const Eigen::VectorXd& x,
                              const Eigen::VectorXd& y);

/// Rx, Ry at (x, y); analytic when supplied, else finite differences.
TerminalJacobians terminal_jacobians(const Problem& p, const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& y);

/// Contracted terminal Hessians at (x, y) for multiplier gamma; analytic when
/// supplied (zero for the linear structured kinds), else finite differences.
TerminalCurvature terminal_curvature(const Problem& p, const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& y, const Eigen::VectorXd& gamma);

/// Builds a problem from LQ data with the requested terminal conditions,
/// including all analytic derivatives and the closed-form control law.
Problem make_lq_problem(LqData lq, TerminalKind kind,
                        Eigen::VectorXd x0 = {}, Eigen::VectorXd x1 = {});

}  // namespace turnpike
