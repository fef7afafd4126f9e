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

// Acceptance suite: end-to-end checks of the full pipeline at fixed
// tolerances, one pass/fail line per criterion. Returns the number of failed
// criteria as the exit status.

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "turnpike/analysis.hpp"
#include "turnpike/direct.hpp"
#include "turnpike/registry.hpp"
#include "turnpike/riccati.hpp"
#include "turnpike/shooting.hpp"
#include "turnpike/static_solver.hpp"

using namespace turnpike;

namespace {

struct Checker {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << (detail.str().empty() ? "" : "; ") << what;
    }
  }
  void note(const std::string& what) {
    detail << (detail.str().empty() ? "" : "; ") << what;
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

Eigen::VectorXd pack(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  Eigen::VectorXd z(a.size() + b.size());
  z << a, b;
  return z;
}

double full_distance(const ExtremalPath& a, const ExtremalPath& b) {
  return std::max({(a.x - b.x).cwiseAbs().maxCoeff(), (a.lam - b.lam).cwiseAbs().maxCoeff(),
                   (a.u - b.u).cwiseAbs().maxCoeff()});
}

double state_distance(const ExtremalPath& a, const ExtremalPath& b) {
  return (a.x - b.x).cwiseAbs().maxCoeff();
}

struct Pipeline {
  StaticSolution s;
  LinearizationData lin;
  Eigen::MatrixXd huu;
  HyperbolicSplitting split;
};

Pipeline pipeline_for(const Problem& p) {
  Pipeline out;
  out.s = solve_static(p);
  const HamiltonianBlocks b = hessian_blocks(p, {out.s.x_bar, out.s.lambda_bar, out.s.u_bar});
  out.lin = assemble_abw(b);
  out.huu = b.Huu;
  out.split = solve_splitting(build_hamiltonian_matrix(out.lin, b.Huu), out.lin, b.Huu);
  return out;
}

// ---- criteria ------------------------------------------------------------

void criterion_static_ex1(Checker& c) {
  const StaticSolution s = solve_static(make_example1());
  Eigen::VectorXd xb(2), lb(2);
  xb << 1, 0;
  lb << -7, 1;
  c.expect((s.x_bar - xb).cwiseAbs().maxCoeff() <= 1e-8, "x_bar off");
  c.expect(std::abs(s.u_bar[0] - 1.0) <= 1e-8, "u_bar off");
  c.expect((s.lambda_bar - lb).cwiseAbs().maxCoeff() <= 1e-8, "lambda_bar off");
}

void criterion_static_ex2(Checker& c) {
  const StaticSolution s = solve_static(make_example2());
  Eigen::VectorXd xb(2), lb(2);
  xb << 1.25, 0;
  lb << -0.5, -0.75;
  c.expect((s.x_bar - xb).cwiseAbs().maxCoeff() <= 1e-8, "x_bar off");
  c.expect(std::abs(s.u_bar[0] - 0.25) <= 1e-8, "u_bar off");
  c.expect((s.lambda_bar - lb).cwiseAbs().maxCoeff() <= 1e-8, "lambda_bar off");
}

void check_one_splitting(Checker& c, const LinearizationData& lin, const Eigen::MatrixXd& huu,
                         const std::string& tag) {
  const HamiltonianMatrix ham = build_hamiltonian_matrix(lin, huu);
  const SpectrumReport spec = verify_spectrum(ham);
  c.expect(spec.negation_symmetric, tag + ": spectrum not negation-symmetric");
  const HyperbolicSplitting s = solve_splitting(ham, lin, huu);
  c.expect(s.are_residual_minus <= 1e-8, tag + ": ARE residual E- " + fmt(s.are_residual_minus));
  c.expect(s.are_residual_plus <= 1e-8, tag + ": ARE residual E+ " + fmt(s.are_residual_plus));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> em(s.E_minus), ep(s.E_plus);
  c.expect(em.eigenvalues().maxCoeff() < 0.0, tag + ": E- not negative definite");
  c.expect(ep.eigenvalues().minCoeff() > 0.0, tag + ": E+ not positive definite");
  const int n = ham.n;
  const Eigen::MatrixXd D = s.P.fullPivLu().solve(ham.M * s.P);
  const double scale = ham.M.cwiseAbs().maxCoeff();
  c.expect(D.topRightCorner(n, n).cwiseAbs().maxCoeff() <= 1e-8 * scale,
           tag + ": off-diagonal block (1,2)");
  c.expect(D.bottomLeftCorner(n, n).cwiseAbs().maxCoeff() <= 1e-8 * scale,
           tag + ": off-diagonal block (2,1)");
}

void criterion_riccati(Checker& c) {
  {
    const Pipeline pl = pipeline_for(make_example1());
    check_one_splitting(c, pl.lin, pl.huu, "ex1");
  }
  std::mt19937 rng(20260808);
  int scalars = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const LqData d = oracle::random_controllable_lq(rng, 6);
    LinearizationData lin{d.A, d.B, d.Q};
    check_one_splitting(c, lin, Eigen::MatrixXd(-d.U), "random#" + std::to_string(trial));
    if (d.A.rows() == 1) {
      ++scalars;
      const HamiltonianMatrix ham = build_hamiltonian_matrix(lin, -d.U);
      const HyperbolicSplitting s = solve_splitting(ham, lin, -d.U);
      const oracle::ScalarRiccati ref =
          oracle::scalar_riccati(d.A(0, 0), d.B(0, 0), d.U(0, 0), d.Q(0, 0));
      c.expect(std::abs(s.E_minus(0, 0) - ref.E_minus) <= 1e-12 * std::abs(ref.E_minus),
               "scalar E- off");
      c.expect(std::abs(s.E_plus(0, 0) - ref.E_plus) <= 1e-12 * std::abs(ref.E_plus),
               "scalar E+ off");
      c.expect(std::abs(s.C2 - ref.C2) <= 1e-12 * ref.C2, "scalar C2 off");
    }
  }
  // Deterministic scalar cases in addition to whatever the draw produced.
  for (const auto [a, b, u, w] :
       {std::array<double, 4>{0, 1, 1, 1}, {1, 1, 1, 3}, {-2, 1, 2, 5}}) {
    LinearizationData lin{Eigen::MatrixXd::Constant(1, 1, a),
                          Eigen::MatrixXd::Constant(1, 1, b),
                          Eigen::MatrixXd::Constant(1, 1, w)};
    const Eigen::MatrixXd huu = Eigen::MatrixXd::Constant(1, 1, -u);
    const HyperbolicSplitting s =
        solve_splitting(build_hamiltonian_matrix(lin, huu), lin, huu);
    const oracle::ScalarRiccati ref = oracle::scalar_riccati(a, b, u, w);
    c.expect(std::abs(s.E_minus(0, 0) - ref.E_minus) <= 1e-12 * std::abs(ref.E_minus),
             "scalar E- off");
    c.expect(std::abs(s.C2 - ref.C2) <= 1e-12 * ref.C2, "scalar C2 off");
    ++scalars;
  }
  c.note(std::to_string(scalars) + " scalar instances vs quadratic formula");
}

void criterion_lq_oracle_equivalence(Checker& c) {
  const Problem p = make_example1();
  const StaticSolution s = solve_static(p);
  const int steps = 10000;
  for (const double T : {5.0, 10.0}) {
    const ExtremalPath ref = oracle::lq_extremal(p, T, steps);
    const Extremal mid = midpoint_shoot(p, T, steps, s);
    const Extremal classic =
        classic_shoot(p, T, steps, pack(p.x0, s.lambda_bar), s.gamma_bar);
    const double d1 = full_distance(mid.path, ref);
    const double d2 = full_distance(classic.path, ref);
    const double d3 = full_distance(classic.path, mid.path);
    c.expect(d1 <= 1e-6, "T=" + fmt(T) + " midpoint vs oracle " + fmt(d1));
    c.expect(d2 <= 1e-6, "T=" + fmt(T) + " classic vs oracle " + fmt(d2));
    c.expect(d3 <= 1e-6, "T=" + fmt(T) + " classic vs midpoint " + fmt(d3));
  }
}

void criterion_envelope(Checker& c) {
  const Problem p = make_example1();
  const Pipeline pl = pipeline_for(p);
  double c1_min = std::numeric_limits<double>::infinity(), c1_max = 0.0;
  double mid3 = 0.0;
  for (const double T : {10.0, 20.0, 30.0}) {
    const Extremal e = midpoint_shoot(p, T, static_cast<int>(100 * T), pl.s);
    const TurnpikeReport r = turnpike_report(e.path, p, pl.s, pl.split.C2);
    for (Eigen::Index i = 0; i < r.t.size(); ++i) {
      const double env =
          std::exp(-r.C2 * r.t[i]) + std::exp(-r.C2 * (T - r.t[i]));
      c.expect(r.deviation[i] <= r.C1_fit * env * (1.0 + 1e-12),
               "T=" + fmt(T) + " envelope violated");
    }
    c1_min = std::min(c1_min, r.C1_fit);
    c1_max = std::max(c1_max, r.C1_fit);
    if (T == 30.0) mid3 = r.mid_third_max;
  }
  c.expect(mid3 <= 1e-3, "mid-third max at T=30 is " + fmt(mid3) + " (> 1e-3)");
  c.expect(c1_max < 3.0 * c1_min,
           "C1_fit spread " + fmt(c1_min) + ".." + fmt(c1_max) + " exceeds x3");
  c.note("C1_fit in [" + fmt(c1_min) + ", " + fmt(c1_max) + "], mid-third max " + fmt(mid3));
}

void criterion_time_averages(Checker& c) {
  const Problem p = make_example1();
  const Pipeline pl = pipeline_for(p);
  const double stat_cost = p.f0(pl.s.x_bar, pl.s.u_bar);
  double x20 = 0, x40 = 0, c20 = 0, c40 = 0;
  for (const double T : {20.0, 40.0}) {
    const Extremal e = midpoint_shoot(p, T, static_cast<int>(100 * T), pl.s);
    const Averages a = time_averages(e.path, p);
    const double xe = (a.x_avg - pl.s.x_bar).norm();
    const double ce = std::abs(a.cost_avg - stat_cost);
    (T == 20.0 ? x20 : x40) = xe;
    (T == 20.0 ? c20 : c40) = ce;
  }
  c.expect(x40 <= 0.75 * x20, "state average: " + fmt(x40) + " !<= 0.75*" + fmt(x20));
  c.expect(c40 <= 0.75 * c20, "cost average: " + fmt(c40) + " !<= 0.75*" + fmt(c20));
}

void criterion_midpoint_robustness(Checker& c) {
  const Problem p = make_example2();
  const StaticSolution s = solve_static(p);
  const Extremal mid = midpoint_shoot(p, 20.0, 1000, s);
  c.expect(mid.boundary_residual <= 1e-9, "residual " + fmt(mid.boundary_residual));
  c.expect(mid.iterations <= 50, "iterations " + std::to_string(mid.iterations));

  const Transcription t = transcribe(p, 20.0, 1000);
  const DiscreteSolution direct = solve_nlp(t, warm_start_from_static(t, s));
  const double dist = state_distance(mid.path, direct.extremal.path);
  c.expect(dist <= 5e-2, "state distance to direct " + fmt(dist));
  c.note("iterations=" + std::to_string(mid.iterations) + ", state distance " + fmt(dist) +
         ", full-extremal distance " + fmt(full_distance(mid.path, direct.extremal.path)));
}

void criterion_direct_order(Checker& c) {
  const Problem p = make_example1();
  const StaticSolution s = solve_static(p);
  const double T = 10.0;
  double prev = 0.0;
  for (const int N : {500, 1000, 2000}) {
    const Transcription t = transcribe(p, T, N);
    const DiscreteSolution sol = solve_nlp(t, warm_start_from_static(t, s));
    const double err = (sol.extremal.path.x - oracle::lq_extremal(p, T, N).x)
                           .cwiseAbs()
                           .maxCoeff();
    if (prev > 0.0) {
      const double ratio = prev / err;
      c.expect(ratio >= 1.5 && ratio <= 2.5,
               "halving ratio at N=" + std::to_string(N) + " is " + fmt(ratio));
    }
    prev = err;
  }
}

void criterion_degenerate_fixed_points(Checker& c) {
  const Problem p = with_terminal(make_example1(), TerminalKind::Periodic);
  const StaticSolution s = solve_static(p);
  c.expect(s.defect <= 1e-12, "defect " + fmt(s.defect));

  const Extremal mid = midpoint_shoot(p, 10.0, 500, s);
  c.expect(mid.iterations == 0,
           "midpoint iterations " + std::to_string(mid.iterations));

  const Transcription t = transcribe(p, 10.0, 500);
  const DiscreteSolution direct = solve_nlp(t, warm_start_from_static(t, s));
  c.expect(direct.iterations == 0, "direct iterations " + std::to_string(direct.iterations));
}

void criterion_wellposedness(Checker& c) {
  for (const Problem& p : {make_example1(), make_example2()}) {
    const Pipeline pl = pipeline_for(p);
    const WellPosednessMatrix w = build_wellposedness_matrix(p, pl.s, pl.split);
    c.expect(w.condition_estimate >= 1e-8,
             p.name + ": reciprocal condition " + fmt(w.condition_estimate));
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Checker&)> fn;
  };
  const std::vector<Criterion> criteria = {
      {1, "static reproduction (example 1)", criterion_static_ex1},
      {2, "static reproduction (example 2)", criterion_static_ex2},
      {3, "riccati correctness on LQ and random instances", criterion_riccati},
      {4, "LQ oracle equivalence of both shooting variants", criterion_lq_oracle_equivalence},
      {5, "turnpike envelope and uniform C1", criterion_envelope},
      {6, "time-average limits", criterion_time_averages},
      {7, "middle-point shooting robustness on the cubic oscillator",
       criterion_midpoint_robustness},
      {8, "direct-method first-order convergence", criterion_direct_order},
      {9, "degenerate fixed points converge in zero iterations",
       criterion_degenerate_fixed_points},
      {10, "well-posedness of the boundary system", criterion_wellposedness},
  };

  int failed = 0;
  for (const Criterion& cr : criteria) {
    Checker c;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.fn(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %2d: %s (%.1fs)%s%s\n", c.ok ? "PASS" : "FAIL", cr.id, cr.name, secs,
                c.detail.str().empty() ? "" : " -- ", c.detail.str().c_str());
    std::fflush(stdout);
    if (!c.ok) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed;
}
