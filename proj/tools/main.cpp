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
#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "turnpike/errors.hpp"
#include "turnpike/pipeline.hpp"

namespace {

using turnpike::ordered_json;

void emit(const ordered_json& j, const std::string& file) {
  if (file.empty()) {
    std::cout << j.dump(2) << std::endl;
    return;
  }
  std::ofstream out(file);
  if (!out) throw turnpike::IoError("cannot open for writing: " + file);
  out << j.dump(2) << "\n";
}

void emit_text(const std::string& text, const std::string& file) {
  if (file.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(file);
  if (!out) throw turnpike::IoError("cannot open for writing: " + file);
  out << text;
}

std::vector<double> parse_horizons(const std::string& list) {
  std::vector<double> out;
  std::stringstream ss(list);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw turnpike::InvalidArgumentError("bad horizon value '" + tok + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Long-horizon optimal control: static/Riccati/shooting/direct pipeline "
               "with turnpike verification"};
  app.require_subcommand(1);

  std::string problem = "ex1";
  std::string method = "shoot-mid";
  std::string guess = "static";
  std::string input, output, report_file;
  std::string horizons = "30";
  std::string methods = "direct,shoot-mid";
  double T = 30.0;
  int steps = 1000;
  double anchor = 0.5;
  int threads = 0;
  double static_tol = 1e-10, shoot_tol = 1e-9, nlp_tol = 1e-8;

  auto add_problem = [&](CLI::App* cmd) {
    cmd->add_option("--problem", problem, "Problem id: ex1, ex2 or lq:<file>")
        ->capture_default_str();
  };
  auto add_tols = [&](CLI::App* cmd) {
    cmd->add_option("--static-tol", static_tol, "Static solver tolerance")
        ->capture_default_str();
    cmd->add_option("--shoot-tol", shoot_tol, "Shooting residual tolerance")
        ->capture_default_str();
    cmd->add_option("--nlp-tol", nlp_tol, "Direct-method KKT tolerance")->capture_default_str();
  };

  CLI::App* c_static = app.add_subcommand("static", "Solve the static problem, print JSON");
  add_problem(c_static);
  add_tols(c_static);

  CLI::App* c_riccati =
      app.add_subcommand("riccati", "Riccati splitting of the extremal linearization");
  add_problem(c_riccati);
  add_tols(c_riccati);

  CLI::App* c_solve = app.add_subcommand("solve", "Solve the horizon problem and verify");
  add_problem(c_solve);
  add_tols(c_solve);
  c_solve->add_option("--method", method, "direct | shoot-classic | shoot-mid")
      ->capture_default_str();
  c_solve->add_option("--T", T, "Horizon")->capture_default_str();
  c_solve->add_option("--steps", steps, "Grid steps")->capture_default_str();
  c_solve->add_option("--anchor-fraction", anchor, "Interior anchor for shoot-mid")
      ->capture_default_str();
  c_solve->add_option("--guess", guess, "Classic shooting init: static | zero")
      ->capture_default_str();
  c_solve->add_option("--output", output, "Trajectory CSV path");
  c_solve->add_option("--report", report_file, "Report JSON path (default stdout)");

  CLI::App* c_verify =
      app.add_subcommand("verify-turnpike", "Turnpike report for a stored trajectory");
  add_problem(c_verify);
  add_tols(c_verify);
  c_verify->add_option("--input", input, "Trajectory CSV")->required();

  CLI::App* c_compare = app.add_subcommand("compare", "Cross-method comparison table");
  add_problem(c_compare);
  add_tols(c_compare);
  c_compare->add_option("--methods", methods, "Comma-separated method list")
      ->capture_default_str();
  c_compare->add_option("--T", T, "Horizon")->capture_default_str();
  c_compare->add_option("--steps", steps, "Grid steps")->capture_default_str();
  c_compare->add_option("--guess", guess, "Classic shooting init")->capture_default_str();
  c_compare->add_option("--output", output, "Comparison CSV path (default stdout)");

  CLI::App* c_sweep = app.add_subcommand("sweep", "Solve + verify over several horizons");
  add_problem(c_sweep);
  add_tols(c_sweep);
  c_sweep->add_option("--method", method, "direct | shoot-classic | shoot-mid")
      ->capture_default_str();
  c_sweep->add_option("--T", horizons, "Comma-separated horizons")->capture_default_str();
  c_sweep->add_option("--steps", steps, "Grid steps")->capture_default_str();
  c_sweep->add_option("--anchor-fraction", anchor, "Interior anchor for shoot-mid")
      ->capture_default_str();
  c_sweep->add_option("--threads", threads, "Worker threads (0 = auto)")->capture_default_str();
  c_sweep->add_option("--output", output, "Summary CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    turnpike::RunConfig cfg;
    cfg.problem = problem;
    cfg.T = T;
    cfg.steps = steps;
    cfg.anchor_fraction = anchor;
    cfg.guess = guess;
    cfg.static_tol = static_tol;
    cfg.shoot_tol = shoot_tol;
    cfg.nlp_tol = nlp_tol;

    if (app.got_subcommand(c_static)) {
      const turnpike::Problem p = turnpike::problem_from_spec(problem);
      turnpike::StaticOptions opts;
      opts.tol = static_tol;
      emit(turnpike::to_json(turnpike::solve_static(p, opts)), "");
    } else if (app.got_subcommand(c_riccati)) {
      const turnpike::Problem p = turnpike::problem_from_spec(problem);
      turnpike::StaticOptions opts;
      opts.tol = static_tol;
      const turnpike::StaticSolution s = turnpike::solve_static(p, opts);
      const turnpike::HamiltonianBlocks b =
          turnpike::hessian_blocks(p, {s.x_bar, s.lambda_bar, s.u_bar});
      const turnpike::LinearizationData lin = turnpike::assemble_abw(b);
      const turnpike::HamiltonianMatrix ham = turnpike::build_hamiltonian_matrix(lin, b.Huu);
      const turnpike::HyperbolicSplitting split = turnpike::solve_splitting(ham, lin, b.Huu);
      if (split.asymmetry_minus > 1e-6 || split.asymmetry_plus > 1e-6)
        std::cerr << "warning: Riccati solutions symmetrized from asymmetry "
                  << std::max(split.asymmetry_minus, split.asymmetry_plus) << "\n";
      emit(turnpike::riccati_json(split, turnpike::verify_spectrum(ham)), "");
    } else if (app.got_subcommand(c_solve)) {
      cfg.method = turnpike::method_from_string(method);
      cfg.output_csv = output;
      const turnpike::RunResult r = turnpike::run(cfg);
      emit(r.summary, report_file);
    } else if (app.got_subcommand(c_verify)) {
      const turnpike::Problem p = turnpike::problem_from_spec(problem);
      const turnpike::ExtremalPath path = turnpike::read_trajectory_csv(input);
      if (path.x.cols() != p.n || path.u.cols() != p.m)
        throw turnpike::DimensionError("trajectory dimensions do not match the problem");
      turnpike::StaticOptions opts;
      opts.tol = static_tol;
      const turnpike::StaticSolution s = turnpike::solve_static(p, opts);
      const turnpike::HamiltonianBlocks b =
          turnpike::hessian_blocks(p, {s.x_bar, s.lambda_bar, s.u_bar});
      const turnpike::LinearizationData lin = turnpike::assemble_abw(b);
      const turnpike::HamiltonianMatrix ham = turnpike::build_hamiltonian_matrix(lin, b.Huu);
      const turnpike::HyperbolicSplitting split = turnpike::solve_splitting(ham, lin, b.Huu);
      emit(turnpike::to_json(turnpike::turnpike_report(path, p, s, split.C2)), "");
    } else if (app.got_subcommand(c_compare)) {
      std::vector<turnpike::RunConfig> configs;
      std::stringstream ss(methods);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        turnpike::RunConfig c = cfg;
        c.method = turnpike::method_from_string(tok);
        configs.push_back(std::move(c));
      }
      emit_text(turnpike::compare_csv(turnpike::compare(configs)), output);
    } else if (app.got_subcommand(c_sweep)) {
      cfg.method = turnpike::method_from_string(method);
      emit_text(turnpike::sweep_csv(turnpike::sweep(cfg, parse_horizons(horizons), threads), cfg),
                output);
    }
  } catch (const turnpike::Error& e) {
    std::cout << ordered_json{{"error", {{"type", e.kind()}, {"message", e.what()}}}}.dump(2)
              << std::endl;
    return 1;
  } catch (const std::exception& e) {
    std::cout << ordered_json{{"error", {{"type", "internal"}, {"message", e.what()}}}}.dump(2)
              << std::endl;
    return 1;
  }
  return 0;
}
