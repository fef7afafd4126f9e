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
#include "turnpike/analysis.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "turnpike/errors.hpp"

namespace turnpike {

Eigen::VectorXd deviation_profile(const ExtremalPath& e, const StaticSolution& s) {
  if (e.x.cols() != s.x_bar.size() || e.u.cols() != s.u_bar.size())
    throw DimensionError("deviation_profile: grid and static solution are incompatible");
  const Eigen::Index N = e.t.size();
  Eigen::VectorXd d(N);
  for (Eigen::Index i = 0; i < N; ++i)
    d[i] = (e.x.row(i).transpose() - s.x_bar).norm() +
           (e.lam.row(i).transpose() - s.lambda_bar).norm() +
           (e.u.row(i).transpose() - s.u_bar).norm();
  return d;
}

EnvelopeFit fit_envelope(const Eigen::VectorXd& t, const Eigen::VectorXd& d, double C2,
                         double T) {
  if (!(C2 > 0.0)) throw InvalidArgumentError("fit_envelope: C2 must be positive");
  if (t.size() != d.size()) throw DimensionError("fit_envelope: grid size mismatch");
  EnvelopeFit fit;
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    const double env = std::exp(-C2 * t[i]) + std::exp(-C2 * (T - t[i]));
    fit.C1_fit = std::max(fit.C1_fit, d[i] / env);
    if (t[i] >= T / 3.0 - 1e-12 * (1.0 + T) && t[i] <= 2.0 * T / 3.0 + 1e-12 * (1.0 + T))
      fit.mid_third_max = std::max(fit.mid_third_max, d[i]);
  }
  fit.envelope_ok = std::isfinite(fit.C1_fit);
  return fit;
}

Averages time_averages(const ExtremalPath& e, const Problem& p) {
  const Eigen::Index N = e.t.size() - 1;
  Averages a;
  a.x_avg = Eigen::VectorXd::Zero(e.x.cols());
  a.lambda_avg = Eigen::VectorXd::Zero(e.lam.cols());
  a.u_avg = Eigen::VectorXd::Zero(e.u.cols());
  if (N < 1) {
    a.x_avg = e.x.row(0);
    a.lambda_avg = e.lam.row(0);
    a.u_avg = e.u.row(0);
    a.cost_avg = p.f0(e.x.row(0).transpose(), e.u.row(0).transpose());
    return a;
  }
  double cost = 0.0;
  double span = 0.0;
  Eigen::VectorXd f0vals(N + 1);
  for (Eigen::Index i = 0; i <= N; ++i)
    f0vals[i] = p.f0(e.x.row(i).transpose(), e.u.row(i).transpose());
  for (Eigen::Index i = 0; i < N; ++i) {
    const double h = e.t[i + 1] - e.t[i];
    span += h;
    a.x_avg += 0.5 * h * (e.x.row(i) + e.x.row(i + 1)).transpose();
    a.lambda_avg += 0.5 * h * (e.lam.row(i) + e.lam.row(i + 1)).transpose();
    a.u_avg += 0.5 * h * (e.u.row(i) + e.u.row(i + 1)).transpose();
    cost += 0.5 * h * (f0vals[i] + f0vals[i + 1]);
  }
  a.x_avg /= span;
  a.lambda_avg /= span;
  a.u_avg /= span;
  a.cost_avg = cost / span;
  return a;
}

int count_crossings(const ExtremalPath& e, const StaticSolution& s) {
  if (e.x.cols() < 2) throw DimensionError("count_crossings: needs at least two states");
  const double T = e.t[e.t.size() - 1];
  const double band = 1e-12 * (1.0 + std::abs(s.x_bar[1]));
  int crossings = 0;
  int last_sign = 0;
  for (Eigen::Index i = 0; i < e.t.size(); ++i) {
    if (e.t[i] < 0.25 * T || e.t[i] > 0.75 * T) continue;
    const double v = e.x(i, 1) - s.x_bar[1];
    const int sign = (v > band) ? 1 : (v < -band ? -1 : 0);
    if (sign == 0) continue;
    if (last_sign != 0 && sign != last_sign) ++crossings;
    last_sign = sign;
  }
  return crossings;
}

TurnpikeReport turnpike_report(const ExtremalPath& e, const Problem& p,
                               const StaticSolution& s, double C2) {
  TurnpikeReport r;
  r.t = e.t;
  r.deviation = deviation_profile(e, s);
  r.C2 = C2;
  const double T = e.t[e.t.size() - 1];
  const EnvelopeFit fit = fit_envelope(e.t, r.deviation, C2, T);
  r.C1_fit = fit.C1_fit;
  r.envelope_ok = fit.envelope_ok;
  r.mid_third_max = fit.mid_third_max;
  r.averages = time_averages(e, p);
  r.crossings = p.n >= 2 ? count_crossings(e, s) : 0;
  r.defect = s.defect;
  return r;
}

LqBoundReport lq_bound_report(const ExtremalPath& e, const Problem& p, const StaticSolution& s,
                              const HyperbolicSplitting& split) {
  if (!p.lq || p.terminal_kind != TerminalKind::FixedInitialFreeFinal)
    throw InvalidArgumentError(
        "lq_bound_report: needs an LQ problem with fixed initial and free final point");
  const LqData& d = *p.lq;
  const double C2 = split.C2;
  const double T = e.t[e.t.size() - 1];

  auto opnorm = [](const Eigen::MatrixXd& M) {
    return Eigen::JacobiSVD<Eigen::MatrixXd>(M).singularValues()(0);
  };

  LqBoundReport r;
  r.x_head = (p.x0 - s.x_bar).norm();
  r.x_tail = split.E_plus.partialPivLu().solve(s.lambda_bar).norm();
  r.lam_head = opnorm(split.E_minus) * r.x_head;
  r.lam_tail = opnorm(split.E_plus) * r.x_tail;
  r.u_factor = opnorm(d.U.inverse()) * opnorm(d.B);

  const double tiny = 1e-300;
  for (Eigen::Index i = 0; i < e.t.size(); ++i) {
    const double head = std::exp(-C2 * e.t[i]);
    const double tail = std::exp(-C2 * (T - e.t[i]));
    const double bx = r.x_head * head + r.x_tail * tail + tiny;
    const double bl = r.lam_head * head + r.lam_tail * tail + tiny;
    r.x_ratio = std::max(r.x_ratio, (e.x.row(i).transpose() - s.x_bar).norm() / bx);
    r.lam_ratio =
        std::max(r.lam_ratio, (e.lam.row(i).transpose() - s.lambda_bar).norm() / bl);
    r.u_ratio = std::max(
        r.u_ratio, (e.u.row(i).transpose() - s.u_bar).norm() / (r.u_factor * bl + tiny));
  }
  return r;
}

}  // namespace turnpike
