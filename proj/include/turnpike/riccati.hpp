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

#include "turnpike/model.hpp"

namespace turnpike {

/// The 2n x 2n matrix of the linearized extremal flow,
///   M = (A, -B Huu^-1 B'; W, -A'),
/// an element of sp(n, R): JM is symmetric for J = (0, I; -I, 0).
struct HamiltonianMatrix {
  Eigen::MatrixXd M;
  int n = 0;
};

struct SpectrumReport {
  Eigen::VectorXcd eigenvalues;
  bool negation_symmetric = false;  ///< eigenvalues pair up as (mu, -mu)
  double max_pairing_error = 0.0;
  double hyperbolicity_margin = 0.0;  ///< min |Re(mu)|
  bool has_complex = false;
};

/// Stable/antistable splitting of M through the extremal Riccati solutions.
/// E_minus (negative definite) and E_plus (positive definite) solve
///   X A + A' X - X B Huu^-1 B' X - W = 0,
/// P = (I, I; E-, E+) block-diagonalizes M into the closed-loop matrices, and
/// C2 is the decay rate: minus the spectral abscissa of Acl_minus.
struct HyperbolicSplitting {
  Eigen::MatrixXd E_minus, E_plus;
  Eigen::MatrixXd P;          ///< 2n x 2n
  Eigen::MatrixXd Acl_minus;  ///< A - B Huu^-1 B' E-, Hurwitz
  Eigen::MatrixXd Acl_plus;   ///< A - B Huu^-1 B' E+, spectrum mirrored
  double C2 = 0.0;
  double are_residual_minus = 0.0;  ///< inf-norm Riccati residual of E-
  double are_residual_plus = 0.0;
  double asymmetry_minus = 0.0;  ///< pre-symmetrization asymmetry of E-
  double asymmetry_plus = 0.0;
};

struct RiccatiOptions {
  double hyperbolicity_tol = 1e-8;  ///< reject eigenvalues with |Re| below this
  double graph_tol = 1e-12;         ///< relative singularity threshold for V1
  double asymmetry_warn = 1e-6;     ///< asymmetry above this is reported
};

HamiltonianMatrix build_hamiltonian_matrix(const LinearizationData& d,
                                           const Eigen::MatrixXd& huu);

/// Eigenvalues of M, their pairing under negation and the distance of the
/// spectrum to the imaginary axis.
SpectrumReport verify_spectrum(const HamiltonianMatrix& h);

/// Riccati solutions from the ordered real Schur form of M. Throws
/// NonHyperbolicError when the spectrum touches the imaginary axis and
/// SingularError when an invariant subspace is not a graph over the states.
HyperbolicSplitting solve_splitting(const HamiltonianMatrix& h, const LinearizationData& d,
                                    const Eigen::MatrixXd& huu, const RiccatiOptions& opts = {});

/// inf-norm of X A + A' X - X B Huu^-1 B' X - W.
double are_residual(const Eigen::MatrixXd& X, const LinearizationData& d,
                    const Eigen::MatrixXd& huu);

}  // namespace turnpike
