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
#include <complex>
#include <functional>

namespace turnpike {

/// Real Schur form A = U T U' whose selected eigenvalues have been moved to
/// the leading diagonal blocks of T; the first `selected` columns of U then
/// span the corresponding invariant subspace.
struct OrderedRealSchur {
  Eigen::MatrixXd T;
  Eigen::MatrixXd U;
  int selected = 0;
};

/// Computes the real Schur form and reorders it by bubble-sorting adjacent
/// 1x1/2x2 diagonal blocks, swapping a non-selected block past a selected one
/// with an orthogonal transform (direct Sylvester solve + QR). The selection
/// predicate receives one eigenvalue of the block.
OrderedRealSchur ordered_real_schur(
    const Eigen::MatrixXd& A, const std::function<bool(std::complex<double>)>& select);

}  // namespace turnpike
