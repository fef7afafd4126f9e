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

#include "turnpike/problem.hpp"

namespace turnpike {

/// KKT point of the static problem min f0(x, u) subject to f(x, u) = 0,
/// together with the boundary multiplier and the terminal defect.
struct StaticSolution {
  Eigen::VectorXd x_bar;
  Eigen::VectorXd u_bar;
  Eigen::VectorXd lambda_bar;
  Eigen::VectorXd gamma_bar;   ///< least-squares transversality multiplier
  double kkt_residual = 0.0;   ///< inf-norm of (f, -dH/dx, dH/du)
  double defect = 0.0;         ///< ||R(xb,xb)|| + ||(-lb; lb) - (Rx' g; Ry' g)||
  int iterations = 0;
};

struct StaticOptions {
  double tol = 1e-10;       ///< convergence threshold on the inf-norm residual
  int max_iter = 100;
  double backtrack = 0.5;   ///< line-search contraction factor
  double min_step = 1e-12;  ///< smallest accepted step fraction
};

/// Residual of the static optimality system (f; -dH/dx; dH/du) at (x, lambda, u).
Eigen::VectorXd static_residual(const Problem& p, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& lambda, const Eigen::VectorXd& u);

/// Damped Newton on the static optimality system. Throws ConvergenceError
/// when the iteration limit is hit and SingularError when the Newton matrix
/// is singular at the current iterate.
StaticSolution solve_static(const Problem& p, const ExtremalPoint& guess,
                            const StaticOptions& opts = {});

/// As above, starting from x = 0, lambda = 0, u = 0.
StaticSolution solve_static(const Problem& p, const StaticOptions& opts = {});

/// Exact static solve for LQ problems via one 2n x 2n linear system.
StaticSolution solve_static_lq(const Problem& p, const StaticOptions& opts = {});

/// Least-squares multiplier for the transversality conditions at (xb, xb):
/// gamma = (Rx Rx' + Ry Ry')^-1 (-Rx + Ry) lambda_bar.
Eigen::VectorXd compute_gamma_bar(const Problem& p, const StaticSolution& s);

/// Terminal defect ||R(xb, xb)|| + ||(-lb; lb) - (Rx' gamma; Ry' gamma)||
/// (Euclidean norms). Requires s.gamma_bar.
double compute_defect(const Problem& p, const StaticSolution& s);

}  // namespace turnpike
