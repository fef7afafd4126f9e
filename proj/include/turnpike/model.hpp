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

struct StaticSolution;

/// Blocks of the Hessian of the Hamiltonian H(x, lambda, -1, u) at a point.
/// Hxl is the Jacobian df/dx and Hlu the Jacobian df/du (n x n and n x m);
/// Hxx, Hxu, Huu are the second derivatives of H in (x, u).
struct HamiltonianBlocks {
  Eigen::MatrixXd Hxx;  ///< n x n, symmetric
  Eigen::MatrixXd Hxl;  ///< n x n, equals df/dx
  Eigen::MatrixXd Hxu;  ///< n x m
  Eigen::MatrixXd Hlu;  ///< n x m, equals df/du
  Eigen::MatrixXd Huu;  ///< m x m, symmetric
};

/// Matrices of the linearized extremal flow:
///   A = Hxl - Hlu Huu^-1 Hxu',  B = Hlu,  W = -Hxx + Hxu Huu^-1 Hxu'.
struct LinearizationData {
  Eigen::MatrixXd A;  ///< n x n
  Eigen::MatrixXd B;  ///< n x m
  Eigen::MatrixXd W;  ///< n x n, symmetric
};

/// Verdicts on the standing assumptions at the static solution.
struct AssumptionReport {
  int kalman_rank = 0;
  bool kalman_ok = false;           ///< rank(B, AB, ..., A^{n-1}B) == n
  bool huu_negdef = false;          ///< -Huu positive definite
  double huu_min_eig_neg = 0.0;     ///< smallest eigenvalue of -Huu
  bool w_posdef = false;
  double w_min_eig = 0.0;           ///< smallest eigenvalue of W
  bool r_full_rank = false;         ///< dR at the static pair has rank k
  int r_rank = 0;
};

/// H(x, lambda, -1, u) = <lambda, f(x,u)> - f0(x,u).
double eval_hamiltonian(const Problem& p, const ExtremalPoint& e);

/// dH/dx and dH/du; analytic derivatives of f, f0 when supplied, otherwise
/// central finite differences on H itself.
Eigen::VectorXd hamiltonian_grad_x(const Problem& p, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& lambda, const Eigen::VectorXd& u);
Eigen::VectorXd hamiltonian_grad_u(const Problem& p, const Eigen::VectorXd& x,
                                   const Eigen::VectorXd& lambda, const Eigen::VectorXd& u);

/// All Hessian blocks of H at the given point.
HamiltonianBlocks hessian_blocks(const Problem& p, const ExtremalPoint& e);

/// A, B, W from the Hessian blocks; W is symmetrized exactly. Throws
/// SingularError when Huu violates the strong Legendre condition.
LinearizationData assemble_abw(const HamiltonianBlocks& b);

/// Controllability matrix (B, AB, ..., A^{n-1}B), n x nm.
Eigen::MatrixXd controllability_matrix(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

/// Checks the Kalman condition, the signs of Huu and W and the rank of the
/// terminal map at the static solution. Never throws; the report carries the
/// verdicts.
AssumptionReport check_assumptions(const LinearizationData& d, const Problem& p,
                                   const StaticSolution& s);

}  // namespace turnpike
