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
#include <doctest.h>

#include <cmath>

#include "support/testutil.hpp"
#include "turnpike/analysis.hpp"
#include "turnpike/errors.hpp"
#include "turnpike/registry.hpp"

using namespace turnpike;

namespace {

ExtremalPath constant_path(const StaticSolution& s, double T, int N) {
  ExtremalPath p;
  p.t.setLinSpaced(N + 1, 0.0, T);
  p.x = s.x_bar.transpose().replicate(N + 1, 1);
  p.lam = s.lambda_bar.transpose().replicate(N + 1, 1);
  p.u = s.u_bar.transpose().replicate(N + 1, 1);
  return p;
}

HyperbolicSplitting splitting_for(const Problem& p, const StaticSolution& s) {
  const HamiltonianBlocks b = hessian_blocks(p, {s.x_bar, s.lambda_bar, s.u_bar});
  const LinearizationData lin = assemble_abw(b);
  return solve_splitting(build_hamiltonian_matrix(lin, b.Huu), lin, b.Huu);
}

}  // namespace

TEST_SUITE("analysis") {

  TEST_CASE("deviation of the constant extremal vanishes; d(0) recomputes directly") {
    const Problem p = make_example1();
    const StaticSolution s = solve_static(p);
    const ExtremalPath cp = constant_path(s, 10.0, 100);
    CHECK(deviation_profile(cp, s).cwiseAbs().maxCoeff() == 0.0);

    ExtremalPath shifted = cp;
    shifted.x.row(0) << 0.0, 0.0;
    shifted.u.row(0) << 0.5;
    const Eigen::VectorXd d = deviation_profile(shifted, s);
    CHECK(d[0] == doctest::Approx((s.x_bar - testutil::vec2(0, 0)).norm() + 0.5));
    CHECK(d[1] == 0.0);
  }

  TEST_CASE("envelope fit on synthetic profiles") {
    const double T = 12.0, C2 = 0.7;
    Eigen::VectorXd t = Eigen::VectorXd::LinSpaced(241, 0.0, T);
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(t.size());
    EnvelopeFit f0 = fit_envelope(t, zero, C2, T);
    CHECK(f0.C1_fit == 0.0);
    CHECK(f0.envelope_ok);
    CHECK(f0.mid_third_max == 0.0);

    Eigen::VectorXd env(t.size());
    for (Eigen::Index i = 0; i < t.size(); ++i)
      env[i] = std::exp(-C2 * t[i]) + std::exp(-C2 * (T - t[i]));
    EnvelopeFit f1 = fit_envelope(t, env, C2, T);
    CHECK(f1.C1_fit == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(fit_envelope(t, env, 0.0, T), InvalidArgumentError);
  }

  TEST_CASE("averages of a constant extremal are exact") {
    const Problem p = make_example1();
    const StaticSolution s = solve_static(p);
    const Averages a = time_averages(constant_path(s, 7.0, 70), p);
    CHECK((a.x_avg - s.x_bar).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((a.lambda_avg - s.lambda_bar).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((a.u_avg - s.u_bar).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(a.cost_avg == doctest::Approx(p.f0(s.x_bar, s.u_bar)).epsilon(1e-13));
  }

  TEST_CASE("crossing counting") {
    const Problem p = make_example1();
    const StaticSolution s = solve_static(p);
    CHECK(count_crossings(constant_path(s, 10.0, 100), s) == 0);

    // A decaying oscillation in x2 crosses its steady value repeatedly.
    ExtremalPath osc = constant_path(s, 20.0, 2000);
    for (Eigen::Index i = 0; i < osc.t.size(); ++i)
      osc.x(i, 1) = s.x_bar[1] + std::exp(-0.3 * osc.t[i]) * std::sin(1.5 * osc.t[i]);
    const int mid_crossings = count_crossings(osc, s);
    // On [5, 15] the sine completes ~2.4 periods: expect 4 or 5 sign changes.
    CHECK(mid_crossings >= 4);
    CHECK(mid_crossings <= 5);
  }

  TEST_CASE("crossing count needs a second state") {
    LqData d;
    d.A = Eigen::MatrixXd::Constant(1, 1, 1.0);
    d.B = Eigen::MatrixXd::Constant(1, 1, 1.0);
    d.Q = Eigen::MatrixXd::Identity(1, 1);
    d.U = Eigen::MatrixXd::Identity(1, 1);
    d.xd = Eigen::VectorXd::Ones(1);
    d.ud = Eigen::VectorXd::Zero(1);
    const Problem p = make_lq_problem(d, TerminalKind::Periodic);
    const StaticSolution s = solve_static(p);
    CHECK_THROWS_AS(count_crossings(constant_path(s, 5.0, 10), s), DimensionError);
  }

  TEST_CASE("turnpike report on the real solver output") {
    const Problem p = make_example1();
    const StaticSolution s = solve_static(p);
    const HyperbolicSplitting split = splitting_for(p, s);

    const Extremal e30 = midpoint_shoot(p, 30.0, 3000, s);
    const TurnpikeReport r30 = turnpike_report(e30.path, p, s, split.C2);
    CHECK(r30.envelope_ok);
    CHECK(r30.crossings >= 2);

    // Envelope dominance holds by construction of the fit.
    for (Eigen::Index i = 0; i < r30.t.size(); ++i) {
      const double env = std::exp(-split.C2 * r30.t[i]) +
                         std::exp(-split.C2 * (30.0 - r30.t[i]));
      CHECK(r30.deviation[i] <= r30.C1_fit * env * (1.0 + 1e-12));
    }
    CHECK(r30.mid_third_max <= 2.0 * r30.C1_fit * std::exp(-split.C2 * 10.0));

    // Deviation at the midpoint is already tiny at this horizon.
    Eigen::Index imid;
    (r30.t.array() - 15.0).abs().minCoeff(&imid);
    CHECK(r30.deviation[imid] <= 1e-3);

    const Extremal e15 = midpoint_shoot(p, 15.0, 1500, s);
    const TurnpikeReport r15 = turnpike_report(e15.path, p, s, split.C2);
    CHECK(r30.crossings >= r15.crossings);

    // The averages drift toward the static values at rate 1/T.
    const Extremal e40 = midpoint_shoot(p, 40.0, 4000, s);
    const TurnpikeReport r40 = turnpike_report(e40.path, p, s, split.C2);
    const double err20 =
        (turnpike_report(midpoint_shoot(p, 20.0, 2000, s).path, p, s, split.C2)
             .averages.x_avg -
         s.x_bar)
            .norm();
    const double err40 = (r40.averages.x_avg - s.x_bar).norm();
    CHECK(err40 <= 0.75 * err20);
  }

  TEST_CASE("LQ per-component bounds hold up to a factor 10") {
    const Problem p = make_example1();
    const StaticSolution s = solve_static(p);
    const HyperbolicSplitting split = splitting_for(p, s);
    const Extremal e = midpoint_shoot(p, 20.0, 2000, s);
    const LqBoundReport b = lq_bound_report(e.path, p, s, split);
    CHECK(b.x_head == doctest::Approx(1.0));
    CHECK(b.x_ratio < 10.0);
    CHECK(b.lam_ratio < 10.0);
    CHECK(b.u_ratio < 10.0);
    CHECK_THROWS_AS(lq_bound_report(e.path, make_example2(), s, split),
                    InvalidArgumentError);
  }
}
