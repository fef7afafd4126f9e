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

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "turnpike/analysis.hpp"
#include "turnpike/model.hpp"
#include "turnpike/riccati.hpp"
#include "turnpike/shooting.hpp"
#include "turnpike/static_solver.hpp"

namespace turnpike {

using ordered_json = nlohmann::ordered_json;

/// Trajectory CSV: header "t,x1..xn,lam1..lamn,u1..um", one row per node,
/// every value printed with 17 significant digits.
void write_trajectory_csv(std::ostream& out, const ExtremalPath& path);
void write_trajectory_csv(const std::string& file, const ExtremalPath& path);

/// Reads a trajectory CSV back; dimensions are recovered from the header.
ExtremalPath read_trajectory_csv(const std::string& file);

ordered_json to_json(const Eigen::VectorXd& v);
ordered_json to_json(const Eigen::MatrixXd& m);
ordered_json to_json(const StaticSolution& s);
ordered_json to_json(const AssumptionReport& r);
ordered_json riccati_json(const HyperbolicSplitting& split, const SpectrumReport& spec);
ordered_json to_json(const TurnpikeReport& r);

}  // namespace turnpike
