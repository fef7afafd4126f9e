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

#include <stdexcept>
#include <string>
#include <vector>

namespace turnpike {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual const char* kind() const noexcept { return "error"; }
};

class DimensionError : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "dimension"; }
};

class InvalidArgumentError : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid-argument"; }
};

/// A matrix that must be invertible (or definite) is not.
class SingularError : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "singular"; }
};

/// An iterative solver failed to reach its tolerance.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, double residual, int iterations,
                   std::vector<double> history = {})
      : Error(what), residual(residual), iterations(iterations),
        history(std::move(history)) {}
  const char* kind() const noexcept override { return "convergence"; }

  double residual;
  int iterations;
  std::vector<double> history;  // residual norm per iteration
};

/// Trajectory integration left the admissible region.
class BlowupError : public Error {
public:
  BlowupError(const std::string& what, double time) : Error(what), time(time) {}
  const char* kind() const noexcept override { return "blowup"; }

  double time;
};

/// The linearized extremal flow has spectrum too close to the imaginary axis.
class NonHyperbolicError : public Error {
public:
  NonHyperbolicError(const std::string& what, double margin)
      : Error(what), margin(margin) {}
  const char* kind() const noexcept override { return "non-hyperbolic"; }

  double margin;
};

class IoError : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "io"; }
};

}  // namespace turnpike
