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

#include <string>
#include <vector>

#include "turnpike/analysis.hpp"
#include "turnpike/direct.hpp"
#include "turnpike/io.hpp"
#include "turnpike/registry.hpp"

namespace turnpike {

enum class Method { Direct, ShootClassic, ShootMid };

Method method_from_string(const std::string& s);
std::string method_name(Method m);

/// One solver invocation: problem, method, horizon and tolerances.
struct RunConfig {
  std::string problem = "ex1";  ///< "ex1", "ex2" or "lq:<file>"
  Method method = Method::ShootMid;
  double T = 30.0;
  int steps = 1000;
  double anchor_fraction = 0.5;  ///< interior anchor for shoot-mid
  std::string guess = "static";  ///< classic shooting init: "static" or "zero"
  std::string output_csv;        ///< trajectory destination; empty = skip
  double static_tol = 1e-10;
  double shoot_tol = 1e-9;
  double nlp_tol = 1e-8;

  void validate() const;  ///< throws InvalidArgumentError on bad fields
};

/// Everything the pipeline produced for one run.
struct RunResult {
  Problem problem;
  StaticSolution static_sol;
  AssumptionReport assumptions;
  SpectrumReport spectrum;
  HyperbolicSplitting splitting;
  WellPosednessMatrix wellposed;
  Extremal extremal;
  double objective = 0.0;      ///< direct method only
  double solver_kkt = 0.0;     ///< direct method only
  TurnpikeReport report;
  ordered_json summary;        ///< full JSON report, stable key order
};

/// static solve -> assumption checks -> Riccati splitting -> chosen solver ->
/// turnpike report. Writes the trajectory CSV when requested. Solver errors
/// propagate as exceptions.
RunResult run(const RunConfig& cfg);

/// Pairwise comparison of runs on the same problem and horizon.
struct CompareRow {
  std::string method_a, method_b;
  int steps_a = 0, steps_b = 0;
  bool converged_a = false, converged_b = false;
  int iterations_a = 0, iterations_b = 0;
  double sup_distance = 0.0;  ///< NaN when either run failed
};
std::vector<CompareRow> compare(const std::vector<RunConfig>& configs);
std::string compare_csv(const std::vector<CompareRow>& rows);

/// Sup-norm distance between two sampled extremals over all of x, lambda, u;
/// grids must match or one must subsample the other.
double extremal_distance(const ExtremalPath& a, const ExtremalPath& b);

/// One solve+verify per horizon, fanned out over worker threads.
struct SweepRow {
  double T = 0.0;
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;
  double C1_fit = 0.0;
  double C2 = 0.0;
  double mid_third_max = 0.0;
  int crossings = 0;
  double x_avg_dist = 0.0;   ///< ||x_avg - x_bar||
  double cost_avg = 0.0;
  double defect = 0.0;
  std::string error;
};
std::vector<SweepRow> sweep(const RunConfig& base, const std::vector<double>& horizons,
                            int threads = 0);
std::string sweep_csv(const std::vector<SweepRow>& rows, const RunConfig& base);

}  // namespace turnpike
