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
#include "turnpike/riccati.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <vector>

#include "turnpike/errors.hpp"
#include "turnpike/schur.hpp"

namespace turnpike {

namespace {

// Solves Acl' D + D Acl = RHS for D by the Kronecker form; the dimensions
// here are small. Returns false when the Lyapunov operator is singular.
bool lyapunov_solve(const Eigen::MatrixXd& Acl, const Eigen::MatrixXd& RHS,
                    Eigen::MatrixXd* D) {
  const int n = static_cast<int>(Acl.rows());
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd K = Eigen::kroneckerProduct(I, Acl.transpose()).eval() +
                      Eigen::kroneckerProduct(Acl.transpose(), I).eval();
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(K);
  if (!lu.isInvertible()) return false;
  const Eigen::VectorXd d = lu.solve(RHS.reshaped());
  *D = d.reshaped(n, n);
  return true;
}

// Newton defect correction on the Riccati residual: the Schur-based graph is
// accurate to roundoff of the subspace, one or two Lyapunov sweeps push the
// residual to machine level on badly scaled instances.
void refine_riccati(Eigen::MatrixXd& E, const LinearizationData& d, const Eigen::MatrixXd& S) {
  for (int sweep = 0; sweep < 3; ++sweep) {
    const Eigen::MatrixXd R = E * d.A + d.A.transpose() * E - E * S * E - d.W;
    const double scale = 1.0 + d.W.cwiseAbs().maxCoeff();
    if (R.cwiseAbs().maxCoeff() <= 1e-14 * scale) return;
    const Eigen::MatrixXd Acl = d.A - S * E;
    Eigen::MatrixXd D;
    if (!lyapunov_solve(Acl, -R, &D)) return;
    const Eigen::MatrixXd En = 0.5 * ((E + D) + (E + D).transpose());
    const Eigen::MatrixXd Rn = En * d.A + d.A.transpose() * En - En * S * En - d.W;
    if (Rn.cwiseAbs().maxCoeff() >= R.cwiseAbs().maxCoeff()) return;
    E = En;
  }
}

// Graph of the invariant subspace spanned by the leading n Schur vectors:
// E = V2 V1^-1, symmetrized. Records the raw asymmetry.
Eigen::MatrixXd subspace_graph(const Eigen::MatrixXd& U, int n, double graph_tol,
                               double* asymmetry) {
  const Eigen::MatrixXd V1 = U.topLeftCorner(n, n);
  const Eigen::MatrixXd V2 = U.bottomLeftCorner(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(V1);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(n - 1);
  if (smin <= graph_tol * smax)
    throw SingularError("riccati splitting: invariant subspace is not a graph over the states");
  // E V1 = V2  <=>  V1' E' = V2'
  Eigen::MatrixXd E =
      V1.transpose().partialPivLu().solve(V2.transpose()).transpose();
  *asymmetry = (E - E.transpose()).cwiseAbs().maxCoeff();
  return 0.5 * (E + E.transpose()).eval();
}

}  // namespace

HamiltonianMatrix build_hamiltonian_matrix(const LinearizationData& d,
                                           const Eigen::MatrixXd& huu) {
  const int n = static_cast<int>(d.A.rows());
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(huu);
  if (!lu.isInvertible()) throw SingularError("build_hamiltonian_matrix: Huu is singular");
  const Eigen::MatrixXd S = d.B * lu.solve(Eigen::MatrixXd(d.B.transpose()));

  HamiltonianMatrix h;
  h.n = n;
  h.M.resize(2 * n, 2 * n);
  h.M << d.A, -S, d.W, -d.A.transpose();
  return h;
}

SpectrumReport verify_spectrum(const HamiltonianMatrix& h) {
  const Eigen::EigenSolver<Eigen::MatrixXd> es(h.M);
  SpectrumReport r;
  r.eigenvalues = es.eigenvalues();
  const double scale = std::max(1.0, h.M.cwiseAbs().maxCoeff());

  r.hyperbolicity_margin = r.eigenvalues.real().cwiseAbs().minCoeff();
  r.has_complex = (r.eigenvalues.imag().cwiseAbs().maxCoeff() > 1e-9 * scale);

  // Greedy pairing mu <-> -mu.
  const Eigen::Index N = r.eigenvalues.size();
  std::vector<bool> used(N, false);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < N; ++i) {
    if (used[i]) continue;
    used[i] = true;
    double best = std::numeric_limits<double>::infinity();
    Eigen::Index match = -1;
    for (Eigen::Index j = 0; j < N; ++j) {
      if (used[j]) continue;
      const double err = std::abs(r.eigenvalues[j] + r.eigenvalues[i]);
      if (err < best) {
        best = err;
        match = j;
      }
    }
    if (match < 0) {
      worst = std::numeric_limits<double>::infinity();
      break;
    }
    used[match] = true;
    worst = std::max(worst, best);
  }
  r.max_pairing_error = worst;
  r.negation_symmetric = (worst <= 1e-8 * scale);
  return r;
}

double are_residual(const Eigen::MatrixXd& X, const LinearizationData& d,
                    const Eigen::MatrixXd& huu) {
  const Eigen::MatrixXd S =
      d.B * huu.partialPivLu().solve(Eigen::MatrixXd(d.B.transpose()));
  const Eigen::MatrixXd R = X * d.A + d.A.transpose() * X - X * S * X - d.W;
  return R.cwiseAbs().maxCoeff();
}

HyperbolicSplitting solve_splitting(const HamiltonianMatrix& h, const LinearizationData& d,
                                    const Eigen::MatrixXd& huu, const RiccatiOptions& opts) {
  const int n = h.n;
  const SpectrumReport spec = verify_spectrum(h);
  if (spec.hyperbolicity_margin < opts.hyperbolicity_tol)
    throw NonHyperbolicError(
        "non-hyperbolic extremal linearization: turnpike assumptions violated (margin " +
            std::to_string(spec.hyperbolicity_margin) + ")",
        spec.hyperbolicity_margin);

  const OrderedRealSchur stable =
      ordered_real_schur(h.M, [](std::complex<double> mu) { return mu.real() < 0.0; });
  const OrderedRealSchur antistable =
      ordered_real_schur(h.M, [](std::complex<double> mu) { return mu.real() > 0.0; });
  if (stable.selected != n || antistable.selected != n)
    throw NonHyperbolicError("hyperbolic splitting is not n/n: stable dimension " +
                                 std::to_string(stable.selected),
                             spec.hyperbolicity_margin);

  HyperbolicSplitting s;
  s.E_minus = subspace_graph(stable.U, n, opts.graph_tol, &s.asymmetry_minus);
  s.E_plus = subspace_graph(antistable.U, n, opts.graph_tol, &s.asymmetry_plus);

  const Eigen::MatrixXd S =
      d.B * huu.partialPivLu().solve(Eigen::MatrixXd(d.B.transpose()));
  refine_riccati(s.E_minus, d, S);
  refine_riccati(s.E_plus, d, S);
  s.Acl_minus = d.A - S * s.E_minus;
  s.Acl_plus = d.A - S * s.E_plus;

  const Eigen::EigenSolver<Eigen::MatrixXd> es(s.Acl_minus);
  s.C2 = -es.eigenvalues().real().maxCoeff();

  s.P.resize(2 * n, 2 * n);
  s.P << Eigen::MatrixXd::Identity(n, n), Eigen::MatrixXd::Identity(n, n), s.E_minus, s.E_plus;

  s.are_residual_minus = are_residual(s.E_minus, d, huu);
  s.are_residual_plus = are_residual(s.E_plus, d, huu);
  return s;
}

}  // namespace turnpike
