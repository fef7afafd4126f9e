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

#include "turnpike/riccati.hpp"
#include "turnpike/shooting.hpp"
#include "turnpike/static_solver.hpp"

namespace turnpike {

struct Averages {
  Eigen::VectorXd x_avg, lambda_avg, u_avg;
  double cost_avg = 0.0;  ///< time average of f0 along the extremal
};

struct EnvelopeFit {
  double C1_fit = 0.0;  ///< smallest C1 with d(t) <= C1 (e^{-C2 t} + e^{-C2 (T-t)})
  bool envelope_ok = false;
  double mid_third_max = 0.0;  ///< max deviation over [T/3, 2T/3]
};

/// Verdict of the exponential-envelope check on one extremal.
struct TurnpikeReport {
  Eigen::VectorXd t;
  Eigen::VectorXd deviation;  ///< d(t) = |x-xb| + |lam-lb| + |u-ub| per node
  double C2 = 0.0;
  double C1_fit = 0.0;
  bool envelope_ok = false;
  double mid_third_max = 0.0;
  Averages averages;
  int crossings = 0;   ///< sign changes of x2 - xb2 over the middle half
  double defect = 0.0; ///< static terminal defect, copied from the solution
};

/// d(t_i), Euclidean norms summed per node.
Eigen::VectorXd deviation_profile(const ExtremalPath& e, const StaticSolution& s);

/// Exact max-ratio envelope constant and the mid-third deviation maximum.
EnvelopeFit fit_envelope(const Eigen::VectorXd& t, const Eigen::VectorXd& d, double C2,
                         double T);

/// Trapezoidal time averages of x, lambda, u and of the running cost.
Averages time_averages(const ExtremalPath& e, const Problem& p);

/// Sign changes of x2(t) - xb2 over [T/4, 3T/4]; requires n >= 2.
int count_crossings(const ExtremalPath& e, const StaticSolution& s);

TurnpikeReport turnpike_report(const ExtremalPath& e, const Problem& p,
                               const StaticSolution& s, double C2);

/// Per-component exponential bounds for LQ problems with a fixed initial and
/// free final point, with constants built from the Riccati solutions:
///   |x(t)-xb|   <= |x0-xb| e^{-C2 t} + |E+^-1 lb| e^{-C2 (T-t)}
///   |lam(t)-lb| <= |E-| |x0-xb| e^{-C2 t} + |E+| |E+^-1 lb| e^{-C2 (T-t)}
///   |u(t)-ub|   <= |U^-1| |B| |lam(t)-lb|.
/// The ratios report how far the sampled extremal sits from each bound
/// (values <= 1 mean the bound holds; the discretized trajectory is only
/// expected to respect them up to a moderate factor).
struct LqBoundReport {
  double x_head = 0.0, x_tail = 0.0;
  double lam_head = 0.0, lam_tail = 0.0;
  double u_factor = 0.0;
  double x_ratio = 0.0, lam_ratio = 0.0, u_ratio = 0.0;
};
LqBoundReport lq_bound_report(const ExtremalPath& e, const Problem& p, const StaticSolution& s,
                              const HyperbolicSplitting& split);

}  // namespace turnpike
