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
#include "turnpike/riccati.hpp"
#include "turnpike/static_solver.hpp"

namespace turnpike {

/// Sampled extremal on a time grid; one row per node.
struct ExtremalPath {
  Eigen::VectorXd t;
  Eigen::MatrixXd x;    ///< (N+1) x n
  Eigen::MatrixXd lam;  ///< (N+1) x n
  Eigen::MatrixXd u;    ///< (N+1) x m
};

/// Solution of the two-point boundary value problem.
struct Extremal {
  ExtremalPath path;
  Eigen::VectorXd Gamma;           ///< transversality multiplier, size k
  double boundary_residual = 0.0;  ///< inf-norm of the boundary system
  int iterations = 0;
};

struct ShootOptions {
  double tol = 1e-9;             ///< inf-norm residual for convergence
  int max_iter = 200;
  int max_halvings = 40;         ///< backtracking budget per iteration
  double fd_step = 1e-7;         ///< forward-difference Jacobian step scale
  double blowup = 1e8;           ///< integration aborts beyond this state norm
  double anchor_fraction = 0.5;  ///< interior anchor of the midpoint variant
};

/// Control minimizing the Hamiltonian at (x, lambda): the problem's closed
/// form when available, otherwise Newton on dH/du = 0 from the warm start
/// (with the strong Legendre condition checked at the solution).
Eigen::VectorXd pointwise_control(const Problem& p, const Eigen::VectorXd& x,
                                  const Eigen::VectorXd& lambda, const Eigen::VectorXd& warm);

/// Fixed-step RK4 on the extremal flow z' = (dH/dlambda, -dH/dx) with the
/// control recomputed at every stage. z packs (x; lambda). Backward
/// integration (t_to < t_from) is allowed; nodes are returned in integration
/// order. Throws BlowupError when the state norm passes `blowup`.
ExtremalPath integrate_extremal(const Problem& p, const Eigen::VectorXd& z_start,
                                double t_from, double t_to, int steps, double blowup = 1e8);

/// Boundary system: rows (R(x(0), x(T)); (-lam(0); lam(T)) - dR' Gamma),
/// with dR evaluated at (x(0), x(T)).
Eigen::VectorXd shooting_residual(const Problem& p, const Eigen::VectorXd& z0,
                                  const Eigen::VectorXd& zT, const Eigen::VectorXd& Gamma);

/// Classical shooting: the unknowns are z(0) and Gamma.
Extremal classic_shoot(const Problem& p, double T, int steps, const Eigen::VectorXd& guess_z0,
                       const Eigen::VectorXd& guess_gamma, const ShootOptions& opts = {});

/// Middle-point shooting: the unknown is the extremal value at an interior
/// anchor (default T/2), initialized at the static solution; each residual
/// evaluation integrates backward to 0 and forward to T.
Extremal midpoint_shoot(const Problem& p, double T, int steps, const StaticSolution& s,
                        const ShootOptions& opts = {});

/// max over nodes of ||dH/du||_inf: stationarity defect of a sampled extremal.
double stationarity_residual(const Problem& p, const ExtremalPath& path);

/// The (2n+k) x (2n+k) matrix of the linearized boundary system in the
/// stable/antistable coordinates, built from dR, the Riccati splitting and
/// the curvature of R weighted by gamma_bar. Near-singularity is reported
/// through the condition estimate, not an error.
struct WellPosednessMatrix {
  Eigen::MatrixXd Q_shoot;
  double condition_estimate = 0.0;  ///< sigma_min / sigma_max
};
WellPosednessMatrix build_wellposedness_matrix(const Problem& p, const StaticSolution& s,
                                               const HyperbolicSplitting& split);

}  // namespace turnpike
