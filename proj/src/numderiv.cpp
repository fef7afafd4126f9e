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
#include "turnpike/numderiv.hpp"

namespace turnpike::fd {

Eigen::VectorXd gradient(const ScalarFn& g, const Eigen::VectorXd& v) {
  Eigen::VectorXd out(v.size());
  Eigen::VectorXd p = v;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double h = step(v[i]);
    p[i] = v[i] + h;
    const double gp = g(p);
    p[i] = v[i] - h;
    const double gm = g(p);
    p[i] = v[i];
    out[i] = (gp - gm) / (2.0 * h);
  }
  return out;
}

Eigen::MatrixXd jacobian(const VectorFn& g, const Eigen::VectorXd& v) {
  Eigen::VectorXd p = v;
  Eigen::MatrixXd out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double h = step(v[i]);
    p[i] = v[i] + h;
    const Eigen::VectorXd gp = g(p);
    p[i] = v[i] - h;
    const Eigen::VectorXd gm = g(p);
    p[i] = v[i];
    if (out.size() == 0) out.resize(gp.size(), v.size());
    out.col(i) = (gp - gm) / (2.0 * h);
  }
  if (out.size() == 0) out.resize(0, v.size());
  return out;
}

Eigen::MatrixXd hessian(const ScalarFn& g, const Eigen::VectorXd& v) {
  const Eigen::Index d = v.size();
  Eigen::MatrixXd out(d, d);
  Eigen::VectorXd p = v;
  const double g0 = g(v);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double si = step2(v[i]);
    p[i] = v[i] + si;
    const double gp = g(p);
    p[i] = v[i] - si;
    const double gm = g(p);
    p[i] = v[i];
    out(i, i) = (gp - 2.0 * g0 + gm) / (si * si);
    for (Eigen::Index j = i + 1; j < d; ++j) {
      const double sj = step2(v[j]);
      p[i] = v[i] + si;
      p[j] = v[j] + sj;
      const double gpp = g(p);
      p[j] = v[j] - sj;
      const double gpm = g(p);
      p[i] = v[i] - si;
      const double gmm = g(p);
      p[j] = v[j] + sj;
      const double gmp = g(p);
      p[i] = v[i];
      p[j] = v[j];
      const double val = (gpp - gpm - gmp + gmm) / (4.0 * si * sj);
      out(i, j) = val;
      out(j, i) = val;
    }
  }
  return out;
}

}  // namespace turnpike::fd
