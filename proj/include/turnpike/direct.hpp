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
#include <Eigen/SparseCore>

#include "turnpike/shooting.hpp"
#include "turnpike/static_solver.hpp"

namespace turnpike {

/// Explicit-Euler transcription of the control problem on N steps.
///
/// Decision vector layout: (x_0, ..., x_N, u_0, ..., u_{N-1}).
/// Constraints: Euler defects x_{i+1} - x_i - h f(x_i, u_i) followed by the
/// terminal rows R(x_0, x_N). Objective: sum_i h f0(x_i, u_i) (left-endpoint
/// rectangle rule, same order as the scheme).
///
/// The problem must outlive the transcription.
struct Transcription {
  const Problem* problem = nullptr;
  double T = 0.0;
  int N = 0;
  double h = 0.0;

  int decision_dim() const { return problem->n * (N + 1) + problem->m * N; }
  int constraint_dim() const { return problem->n * N + problem->k; }
  int x_index(int i) const { return problem->n * i; }
  int u_index(int i) const { return problem->n * (N + 1) + problem->m * i; }

  double objective(const Eigen::VectorXd& Z) const;
  Eigen::VectorXd objective_gradient(const Eigen::VectorXd& Z) const;
  Eigen::VectorXd constraints(const Eigen::VectorXd& Z) const;
  Eigen::SparseMatrix<double> constraint_jacobian(const Eigen::VectorXd& Z) const;
  /// Hessian of f0-part + mu'c, assembled from the Hamiltonian curvature at
  /// (x_i, mu_i, u_i) and the terminal curvature weighted by the R rows of mu.
  Eigen::SparseMatrix<double> lagrangian_hessian(const Eigen::VectorXd& Z,
                                                 const Eigen::VectorXd& mu) const;
};

Transcription transcribe(const Problem& p, double T, int N);

/// Every state node at x_bar, every control node at u_bar; fixed endpoint
/// data overwrites the corresponding state nodes.
Eigen::VectorXd warm_start_from_static(const Transcription& t, const StaticSolution& s);

struct NlpOptions {
  double tol = 1e-8;        ///< inf-norm KKT threshold
  int max_iter = 300;
  double reg0 = 1e-8;       ///< initial Hessian regularization
  double reg_growth = 10.0; ///< factor on factorization failure
  double reg_max = 1e8;
  double armijo = 1e-4;
  double backtrack = 0.5;
  int max_halvings = 60;
};

/// Equality-constrained Newton-KKT solution of the transcribed problem.
struct DiscreteSolution {
  Extremal extremal;           ///< adjoints recovered from the multipliers
  Eigen::VectorXd multipliers; ///< (mu_0..mu_{N-1}, nu) as solved
  double kkt_residual = 0.0;
  double objective = 0.0;
  int iterations = 0;
};

/// Newton on the KKT system with an exact-penalty line search. Multipliers
/// are initialized by least squares at the starting point; a warm start at a
/// KKT point therefore converges in zero iterations.
DiscreteSolution solve_nlp(const Transcription& t, const Eigen::VectorXd& init,
                           const NlpOptions& opts = {});

}  // namespace turnpike
