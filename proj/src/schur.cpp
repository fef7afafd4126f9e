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
#include "turnpike/schur.hpp"

#include <Eigen/Dense>
#include <vector>

#include "turnpike/errors.hpp"

namespace turnpike {

namespace {

// One eigenvalue of the diagonal block starting at index i (size 1 or 2).
std::complex<double> block_eigenvalue(const Eigen::MatrixXd& T, int i, int size) {
  if (size == 1) return {T(i, i), 0.0};
  const double tr = 0.5 * (T(i, i) + T(i + 1, i + 1));
  const double det = T(i, i) * T(i + 1, i + 1) - T(i, i + 1) * T(i + 1, i);
  const double disc = tr * tr - det;
  if (disc >= 0.0) return {tr + std::sqrt(disc), 0.0};
  return {tr, std::sqrt(-disc)};
}

// Swaps the adjacent diagonal blocks T[i..i+p) and T[i+p..i+p+q) with an
// orthogonal similarity, accumulated into U. Direct method: solve the small
// Sylvester equation A11 X - X A22 = -A12, then QR of (X; I) yields the
// orthogonal transform that moves the A22 eigenvalues to the front.
void swap_blocks(Eigen::MatrixXd& T, Eigen::MatrixXd& U, int i, int p, int q) {
  const int w = p + q;
  const int N = static_cast<int>(T.rows());
  const Eigen::MatrixXd A11 = T.block(i, i, p, p);
  const Eigen::MatrixXd A12 = T.block(i, i + p, p, q);
  const Eigen::MatrixXd A22 = T.block(i + p, i + p, q, q);

  // Kronecker form of A11 X - X A22 = -A12, unknowns in column-major order.
  Eigen::MatrixXd K(p * q, p * q);
  Eigen::VectorXd rhs(p * q);
  for (int c = 0; c < q; ++c)
    for (int r = 0; r < p; ++r) {
      const int row = c * p + r;
      rhs[row] = -A12(r, c);
      for (int cc = 0; cc < q; ++cc)
        for (int rr = 0; rr < p; ++rr) {
          const int col = cc * p + rr;
          double v = 0.0;
          if (cc == c) v += A11(r, rr);
          if (rr == r) v -= A22(cc, c);
          K(row, col) = v;
        }
    }
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(K);
  if (!lu.isInvertible())
    throw SingularError("schur reordering: adjacent eigenvalues too close to swap");
  const Eigen::VectorXd xv = lu.solve(rhs);
  Eigen::MatrixXd X(p, q);
  for (int c = 0; c < q; ++c)
    for (int r = 0; r < p; ++r) X(r, c) = xv[c * p + r];

  Eigen::MatrixXd Y(w, q);
  Y.topRows(p) = X;
  Y.bottomRows(q) = Eigen::MatrixXd::Identity(q, q);
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(Y);
  const Eigen::MatrixXd Qf = qr.householderQ();

  T.block(0, i, i + w, w) = T.block(0, i, i + w, w) * Qf;
  T.block(i, i, w, N - i) = Qf.transpose() * T.block(i, i, w, N - i);
  U.middleCols(i, w) = U.middleCols(i, w) * Qf;

  // The subdiagonal block is zero in exact arithmetic; verify and clean it.
  const double resid = T.block(i + q, i, p, q).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, T.cwiseAbs().maxCoeff());
  if (resid > 1e-7 * scale)
    throw SingularError("schur reordering: block swap lost accuracy");
  T.block(i + q, i, p, q).setZero();
}

}  // namespace

OrderedRealSchur ordered_real_schur(
    const Eigen::MatrixXd& A, const std::function<bool(std::complex<double>)>& select) {
  if (A.rows() != A.cols()) throw DimensionError("ordered_real_schur: matrix must be square");
  const int N = static_cast<int>(A.rows());

  Eigen::RealSchur<Eigen::MatrixXd> schur(A);
  if (schur.info() != Eigen::Success)
    throw SingularError("ordered_real_schur: Schur iteration failed to converge");
  OrderedRealSchur out{schur.matrixT(), schur.matrixU(), 0};

  // Diagonal block partition: a nonzero subdiagonal entry marks a 2x2 block.
  std::vector<int> start, size;
  for (int i = 0; i < N;) {
    const int s = (i + 1 < N && out.T(i + 1, i) != 0.0) ? 2 : 1;
    start.push_back(i);
    size.push_back(s);
    i += s;
  }

  std::vector<bool> sel(start.size());
  for (std::size_t b = 0; b < start.size(); ++b)
    sel[b] = select(block_eigenvalue(out.T, start[b], size[b]));

  // Bubble selected blocks to the front; each pass swaps adjacent
  // (unselected, selected) pairs.
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t b = 0; b + 1 < start.size(); ++b) {
      if (!sel[b] && sel[b + 1]) {
        swap_blocks(out.T, out.U, start[b], size[b], size[b + 1]);
        std::swap(sel[b], sel[b + 1]);
        const int newsize_b = size[b + 1];
        size[b + 1] = size[b];
        size[b] = newsize_b;
        start[b + 1] = start[b] + newsize_b;
        moved = true;
      }
    }
  }

  for (std::size_t b = 0; b < start.size(); ++b)
    if (sel[b]) out.selected += size[b];
  return out;
}

}  // namespace turnpike
