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
#include "turnpike/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "turnpike/errors.hpp"

namespace turnpike {

Method method_from_string(const std::string& s) {
  if (s == "direct") return Method::Direct;
  if (s == "shoot-classic") return Method::ShootClassic;
  if (s == "shoot-mid") return Method::ShootMid;
  throw InvalidArgumentError("unknown method '" + s +
                             "' (expected direct, shoot-classic or shoot-mid)");
}

std::string method_name(Method m) {
  switch (m) {
    case Method::Direct: return "direct";
    case Method::ShootClassic: return "shoot-classic";
    case Method::ShootMid: return "shoot-mid";
  }
  return "?";
}

void RunConfig::validate() const {
  if (!(T > 0.0)) throw InvalidArgumentError("T must be positive");
  if (steps < 2) throw InvalidArgumentError("steps must be >= 2");
  if (!(anchor_fraction > 0.0 && anchor_fraction < 1.0))
    throw InvalidArgumentError("anchor_fraction must lie in (0, 1)");
  if (guess != "static" && guess != "zero")
    throw InvalidArgumentError("guess must be 'static' or 'zero'");
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

RunResult run(const RunConfig& cfg) {
  cfg.validate();
  RunResult res;
  res.problem = problem_from_spec(cfg.problem);
  const Problem& p = res.problem;

  StaticOptions sopts;
  sopts.tol = cfg.static_tol;
  res.static_sol = solve_static(p, sopts);

  const HamiltonianBlocks blocks =
      hessian_blocks(p, {res.static_sol.x_bar, res.static_sol.lambda_bar, res.static_sol.u_bar});
  const LinearizationData lin = assemble_abw(blocks);
  res.assumptions = check_assumptions(lin, p, res.static_sol);

  const HamiltonianMatrix ham = build_hamiltonian_matrix(lin, blocks.Huu);
  res.spectrum = verify_spectrum(ham);
  res.splitting = solve_splitting(ham, lin, blocks.Huu);
  res.wellposed = build_wellposedness_matrix(p, res.static_sol, res.splitting);

  ordered_json solver_json;
  switch (cfg.method) {
    case Method::ShootMid: {
      ShootOptions opts;
      opts.tol = cfg.shoot_tol;
      opts.anchor_fraction = cfg.anchor_fraction;
      res.extremal = midpoint_shoot(p, cfg.T, cfg.steps, res.static_sol, opts);
      solver_json = ordered_json{{"converged", true},
                                 {"iterations", res.extremal.iterations},
                                 {"boundary_residual", res.extremal.boundary_residual}};
      break;
    }
    case Method::ShootClassic: {
      ShootOptions opts;
      opts.tol = cfg.shoot_tol;
      Eigen::VectorXd z0 = Eigen::VectorXd::Zero(2 * p.n);
      Eigen::VectorXd gamma = Eigen::VectorXd::Zero(p.k);
      if (cfg.guess == "static") {
        z0.head(p.n) = p.x0.size() == p.n ? p.x0 : res.static_sol.x_bar;
        z0.tail(p.n) = res.static_sol.lambda_bar;
        gamma = res.static_sol.gamma_bar;
      }
      res.extremal = classic_shoot(p, cfg.T, cfg.steps, z0, gamma, opts);
      solver_json = ordered_json{{"converged", true},
                                 {"iterations", res.extremal.iterations},
                                 {"boundary_residual", res.extremal.boundary_residual}};
      break;
    }
    case Method::Direct: {
      const Transcription tr = transcribe(p, cfg.T, cfg.steps);
      NlpOptions opts;
      opts.tol = cfg.nlp_tol;
      const DiscreteSolution ds = solve_nlp(tr, warm_start_from_static(tr, res.static_sol), opts);
      res.extremal = ds.extremal;
      res.objective = ds.objective;
      res.solver_kkt = ds.kkt_residual;
      solver_json = ordered_json{{"converged", true},
                                 {"iterations", ds.iterations},
                                 {"kkt_residual", ds.kkt_residual},
                                 {"objective", ds.objective}};
      break;
    }
  }

  res.report = turnpike_report(res.extremal.path, p, res.static_sol, res.splitting.C2);
  if (!cfg.output_csv.empty()) write_trajectory_csv(cfg.output_csv, res.extremal.path);

  ordered_json turnpike_json = to_json(res.report);
  if (p.lq && p.terminal_kind == TerminalKind::FixedInitialFreeFinal) {
    const LqBoundReport b = lq_bound_report(res.extremal.path, p, res.static_sol, res.splitting);
    turnpike_json["lq_bounds"] =
        ordered_json{{"x_head", b.x_head},     {"x_tail", b.x_tail},
                     {"lam_head", b.lam_head}, {"lam_tail", b.lam_tail},
                     {"u_factor", b.u_factor}, {"x_ratio", b.x_ratio},
                     {"lam_ratio", b.lam_ratio}, {"u_ratio", b.u_ratio}};
  }

  res.summary = ordered_json{{"problem", p.name},
                             {"method", method_name(cfg.method)},
                             {"T", cfg.T},
                             {"steps", cfg.steps},
                             {"static", to_json(res.static_sol)},
                             {"assumptions", to_json(res.assumptions)},
                             {"riccati", riccati_json(res.splitting, res.spectrum)},
                             {"wellposedness",
                              ordered_json{{"condition_estimate", res.wellposed.condition_estimate}}},
                             {"solver", solver_json},
                             {"turnpike", std::move(turnpike_json)}};
  return res;
}

double extremal_distance(const ExtremalPath& a, const ExtremalPath& b) {
  const ExtremalPath& coarse = a.t.size() <= b.t.size() ? a : b;
  const ExtremalPath& fine = a.t.size() <= b.t.size() ? b : a;
  const Eigen::Index Nc = coarse.t.size() - 1, Nf = fine.t.size() - 1;
  if (Nf % Nc != 0)
    throw InvalidArgumentError("extremal_distance: grids are not nested; node counts " +
                               std::to_string(Nc) + " and " + std::to_string(Nf));
  const Eigen::Index stride = Nf / Nc;
  double worst = 0.0;
  for (Eigen::Index i = 0; i <= Nc; ++i) {
    const Eigen::Index j = i * stride;
    worst = std::max(worst, (coarse.x.row(i) - fine.x.row(j)).cwiseAbs().maxCoeff());
    worst = std::max(worst, (coarse.lam.row(i) - fine.lam.row(j)).cwiseAbs().maxCoeff());
    worst = std::max(worst, (coarse.u.row(i) - fine.u.row(j)).cwiseAbs().maxCoeff());
  }
  return worst;
}

std::vector<CompareRow> compare(const std::vector<RunConfig>& configs) {
  if (configs.size() < 2)
    throw InvalidArgumentError("compare: needs at least two configurations");
  for (const RunConfig& c : configs)
    if (c.problem != configs[0].problem || c.T != configs[0].T)
      throw InvalidArgumentError("compare: all configurations must share problem and T");

  struct Outcome {
    bool converged = false;
    Extremal extremal;
  };
  std::vector<Outcome> outcomes(configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i) {
    try {
      RunConfig c = configs[i];
      c.output_csv.clear();
      RunResult r = run(c);
      outcomes[i] = {true, std::move(r.extremal)};
    } catch (const Error&) {
      outcomes[i].converged = false;
    }
  }

  std::vector<CompareRow> rows;
  for (std::size_t i = 0; i < configs.size(); ++i)
    for (std::size_t j = i + 1; j < configs.size(); ++j) {
      CompareRow row;
      row.method_a = method_name(configs[i].method);
      row.method_b = method_name(configs[j].method);
      row.steps_a = configs[i].steps;
      row.steps_b = configs[j].steps;
      row.converged_a = outcomes[i].converged;
      row.converged_b = outcomes[j].converged;
      row.iterations_a = outcomes[i].converged ? outcomes[i].extremal.iterations : 0;
      row.iterations_b = outcomes[j].converged ? outcomes[j].extremal.iterations : 0;
      row.sup_distance =
          (outcomes[i].converged && outcomes[j].converged)
              ? extremal_distance(outcomes[i].extremal.path, outcomes[j].extremal.path)
              : std::numeric_limits<double>::quiet_NaN();
      rows.push_back(std::move(row));
    }
  return rows;
}

std::string compare_csv(const std::vector<CompareRow>& rows) {
  std::ostringstream out;
  out << "method_a,method_b,steps_a,steps_b,converged_a,converged_b,"
         "iterations_a,iterations_b,sup_distance\n";
  for (const CompareRow& r : rows)
    out << r.method_a << ',' << r.method_b << ',' << r.steps_a << ',' << r.steps_b << ','
        << (r.converged_a ? 1 : 0) << ',' << (r.converged_b ? 1 : 0) << ',' << r.iterations_a
        << ',' << r.iterations_b << ',' << fmt17(r.sup_distance) << "\n";
  return out.str();
}

std::vector<SweepRow> sweep(const RunConfig& base, const std::vector<double>& horizons,
                            int threads) {
  if (horizons.empty()) throw InvalidArgumentError("sweep: no horizons given");
  const int hw = static_cast<int>(std::thread::hardware_concurrency());
  const int workers =
      std::max(1, std::min<int>(threads > 0 ? threads : std::max(hw, 1),
                                static_cast<int>(horizons.size())));

  auto solve_one = [&base](double T) {
    SweepRow row;
    row.T = T;
    try {
      RunConfig c = base;
      c.T = T;
      c.output_csv.clear();
      const RunResult r = run(c);
      row.converged = true;
      row.iterations = r.extremal.iterations;
      row.residual = base.method == Method::Direct ? r.solver_kkt : r.extremal.boundary_residual;
      row.C1_fit = r.report.C1_fit;
      row.C2 = r.report.C2;
      row.mid_third_max = r.report.mid_third_max;
      row.crossings = r.report.crossings;
      row.x_avg_dist = (r.report.averages.x_avg - r.static_sol.x_bar).norm();
      row.cost_avg = r.report.averages.cost_avg;
      row.defect = r.static_sol.defect;
    } catch (const Error& e) {
      row.error = e.what();
    }
    return row;
  };

  std::vector<SweepRow> rows(horizons.size());
  std::size_t next = 0;
  std::mutex mtx;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&]() {
      for (;;) {
        std::size_t mine;
        {
          std::lock_guard<std::mutex> lock(mtx);
          if (next >= horizons.size()) return;
          mine = next++;
        }
        rows[mine] = solve_one(horizons[mine]);
      }
    });
  for (std::thread& t : pool) t.join();
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows, const RunConfig& base) {
  std::ostringstream out;
  out << "T,method,steps,converged,iterations,residual,C1_fit,C2,mid_third_max,"
         "crossings,x_avg_dist,cost_avg,defect,error\n";
  for (const SweepRow& r : rows) {
    out << fmt17(r.T) << ',' << method_name(base.method) << ',' << base.steps << ','
        << (r.converged ? 1 : 0) << ',' << r.iterations << ',' << fmt17(r.residual) << ','
        << fmt17(r.C1_fit) << ',' << fmt17(r.C2) << ',' << fmt17(r.mid_third_max) << ','
        << r.crossings << ',' << fmt17(r.x_avg_dist) << ',' << fmt17(r.cost_avg) << ','
        << fmt17(r.defect) << ',' << r.error << "\n";
  }
  return out.str();
}

}  // namespace turnpike
