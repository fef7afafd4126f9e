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

#include "turnpike/problem.hpp"

namespace turnpike {

/// Two-state LQ oscillator with free final point:
///   x1' = x2, x2' = -x1 + u,  cost (1/2)((x1-2)^2 + (x2-7)^2 + u^2),
///   x(0) = (0, 0). Static solution (1, 0), u = 1, lambda = (-7, 1).
Problem make_example1();

/// Control-affine oscillator with an explosive cubic term, fixed endpoints
/// (1,1) -> (3,0):
///   x1' = x2, x2' = 1 - x1 + x2^3 + u,
///   cost (1/2)((x1-1/2)^2 + (x2-1/2)^2 + (u-1)^2).
/// Static solution (5/4, 0), u = 1/4, lambda = (-1/2, -3/4).
Problem make_example2();

/// Loads an LQ problem from a JSON file:
///   {n, m, A, B, Q, U, xd, ud, terminal: {kind, x0?, x1?}}
/// with matrices as row-major nested arrays and kind one of "fixed-both",
/// "fixed-initial-free-final", "periodic". Q and U are validated for
/// symmetry and positive definiteness.
Problem load_lq_problem(const std::string& path);

/// Resolves a problem spec: "ex1", "ex2" or "lq:<path>".
Problem problem_from_spec(const std::string& spec);

/// Copy of a problem with different terminal conditions.
Problem with_terminal(const Problem& p, TerminalKind kind,
                      Eigen::VectorXd x0 = {}, Eigen::VectorXd x1 = {});

}  // namespace turnpike
