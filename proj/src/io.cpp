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
#include "turnpike/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "turnpike/errors.hpp"

namespace turnpike {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  return out;
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const ExtremalPath& path) {
  const Eigen::Index n = path.x.cols(), m = path.u.cols();
  out << "t";
  for (Eigen::Index j = 0; j < n; ++j) out << ",x" << (j + 1);
  for (Eigen::Index j = 0; j < n; ++j) out << ",lam" << (j + 1);
  for (Eigen::Index j = 0; j < m; ++j) out << ",u" << (j + 1);
  out << "\n";
  for (Eigen::Index i = 0; i < path.t.size(); ++i) {
    out << fmt17(path.t[i]);
    for (Eigen::Index j = 0; j < n; ++j) out << ',' << fmt17(path.x(i, j));
    for (Eigen::Index j = 0; j < n; ++j) out << ',' << fmt17(path.lam(i, j));
    for (Eigen::Index j = 0; j < m; ++j) out << ',' << fmt17(path.u(i, j));
    out << "\n";
  }
}

void write_trajectory_csv(const std::string& file, const ExtremalPath& path) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot open for writing: " + file);
  write_trajectory_csv(out, path);
  if (!out) throw IoError("write failed: " + file);
}

ExtremalPath read_trajectory_csv(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open trajectory file: " + file);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty trajectory file: " + file);
  const std::vector<std::string> header = split_csv(line);
  if (header.empty() || header[0] != "t")
    throw IoError("trajectory file has an unexpected header: " + file);
  int n = 0, m = 0, nl = 0;
  for (const std::string& h : header) {
    if (h.rfind("lam", 0) == 0)
      ++nl;
    else if (h.rfind("x", 0) == 0)
      ++n;
    else if (h.rfind("u", 0) == 0)
      ++m;
  }
  if (n < 1 || nl != n || m < 1 || static_cast<int>(header.size()) != 1 + 2 * n + m)
    throw IoError("trajectory header does not match the t,x*,lam*,u* schema: " + file);

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> toks = split_csv(line);
    if (static_cast<int>(toks.size()) != 1 + 2 * n + m)
      throw IoError("trajectory row with wrong number of columns: " + file);
    std::vector<double> row(toks.size());
    for (std::size_t i = 0; i < toks.size(); ++i) {
      try {
        row[i] = std::stod(toks[i]);
      } catch (const std::exception&) {
        throw IoError("trajectory file has a non-numeric entry: " + toks[i]);
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.size() < 2) throw IoError("trajectory file has fewer than two nodes: " + file);

  ExtremalPath path;
  const Eigen::Index N = static_cast<Eigen::Index>(rows.size());
  path.t.resize(N);
  path.x.resize(N, n);
  path.lam.resize(N, n);
  path.u.resize(N, m);
  for (Eigen::Index i = 0; i < N; ++i) {
    path.t[i] = rows[i][0];
    for (int j = 0; j < n; ++j) path.x(i, j) = rows[i][1 + j];
    for (int j = 0; j < n; ++j) path.lam(i, j) = rows[i][1 + n + j];
    for (int j = 0; j < m; ++j) path.u(i, j) = rows[i][1 + 2 * n + j];
  }
  return path;
}

ordered_json to_json(const Eigen::VectorXd& v) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

ordered_json to_json(const Eigen::MatrixXd& m) {
  ordered_json a = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    a.push_back(row);
  }
  return a;
}

ordered_json to_json(const StaticSolution& s) {
  return ordered_json{{"x_bar", to_json(s.x_bar)},
                      {"u_bar", to_json(s.u_bar)},
                      {"lambda_bar", to_json(s.lambda_bar)},
                      {"gamma_bar", to_json(s.gamma_bar)},
                      {"kkt_residual", s.kkt_residual},
                      {"defect", s.defect}};
}

ordered_json to_json(const AssumptionReport& r) {
  return ordered_json{{"kalman_rank", r.kalman_rank},
                      {"kalman_ok", r.kalman_ok},
                      {"huu_negdef", r.huu_negdef},
                      {"huu_min_eig_neg", r.huu_min_eig_neg},
                      {"w_posdef", r.w_posdef},
                      {"w_min_eig", r.w_min_eig},
                      {"r_full_rank", r.r_full_rank},
                      {"r_rank", r.r_rank}};
}

ordered_json riccati_json(const HyperbolicSplitting& split, const SpectrumReport& spec) {
  ordered_json eigs = ordered_json::array();
  for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i)
    eigs.push_back({spec.eigenvalues[i].real(), spec.eigenvalues[i].imag()});
  return ordered_json{{"E_minus", to_json(split.E_minus)},
                      {"E_plus", to_json(split.E_plus)},
                      {"C2", split.C2},
                      {"C2_conservative", 0.5 * split.C2},
                      {"spectrum", eigs},
                      {"hyperbolicity_margin", spec.hyperbolicity_margin},
                      {"negation_symmetric", spec.negation_symmetric},
                      {"has_complex_eigenvalues", spec.has_complex},
                      {"are_residuals",
                       ordered_json{{"E_minus", split.are_residual_minus},
                                    {"E_plus", split.are_residual_plus}}},
                      {"symmetrized_asymmetry",
                       ordered_json{{"E_minus", split.asymmetry_minus},
                                    {"E_plus", split.asymmetry_plus}}}};
}

ordered_json to_json(const TurnpikeReport& r) {
  return ordered_json{{"C2", r.C2},
                      {"C1_fit", r.C1_fit},
                      {"envelope_ok", r.envelope_ok},
                      {"mid_third_max", r.mid_third_max},
                      {"averages",
                       ordered_json{{"x_avg", to_json(r.averages.x_avg)},
                                    {"lambda_avg", to_json(r.averages.lambda_avg)},
                                    {"u_avg", to_json(r.averages.u_avg)},
                                    {"cost_avg", r.averages.cost_avg}}},
                      {"crossings", r.crossings},
                      {"defect", r.defect},
                      {"deviation", to_json(r.deviation)}};
}

}  // namespace turnpike
