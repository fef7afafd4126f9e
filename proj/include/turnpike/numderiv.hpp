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

namespace turnpike::fd {

using ScalarFn = std::function<double(const Eigen::VectorXd&)>;
using VectorFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

/// Per-coordinate step for first derivatives: max(1e-6, 1e-7*|v|).
inline double step(double v) { return std::max(1e-6, 1e-7 * std::abs(v)); }

/// Step for second derivatives (nested central differences): sqrt(step(v)).
inline double step2(double v) { return std::sqrt(step(v)); }

/// Central-difference gradient of a scalar function.
Eigen::VectorXd gradient(const ScalarFn& g, const Eigen::VectorXd& v);

/// Central-difference Jacobian of a vector function, one column per coordinate.
Eigen::MatrixXd jacobian(const VectorFn& g, const Eigen::VectorXd& v);

/// Symmetric Hessian of a scalar function by nested central differences.
Eigen::MatrixXd hessian(const ScalarFn& g, const Eigen::VectorXd& v);

}  // namespace turnpike::fd
