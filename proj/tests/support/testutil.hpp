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

namespace testutil {

/// Copy of a problem with every analytic derivative removed, forcing the
/// finite-difference paths.
inline turnpike::Problem strip_analytic(turnpike::Problem p) {
  p.f_x = nullptr;
  p.f_u = nullptr;
  p.f0_x = nullptr;
  p.f0_u = nullptr;
  p.curvature = nullptr;
  return p;
}

inline double inf_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline double rel_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff() / (1.0 + b.cwiseAbs().maxCoeff());
}

inline Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

inline Eigen::VectorXd vec1(double a) { return Eigen::VectorXd::Constant(1, a); }

}  // namespace testutil
