// Copyright 2026 The gatedist developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gatedist {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kDefaultUnitaryTol = 1e-10;
inline constexpr double kDefaultSingularTol = 1e-12;

// Wrong matrix/vector dimensions for the requested operation.
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Mathematically out-of-domain argument (non-unitary block, alpha outside
// [0,1], non-CHM matrix, invalid density matrix, ...).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A file or descriptor failed validation on read.
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what, double deficit = 0.0)
      : std::runtime_error(what), deficit(deficit) {}
  double deficit;
};

// An iterative procedure exhausted its budget.
struct ConvergenceError : std::runtime_error {
  explicit ConvergenceError(const std::string& what, double residual = 0.0)
      : std::runtime_error(what), residual(residual) {}
  double residual;
};

// Every seed of the alternating maximization hit a degenerate polar factor.
struct DegenerateLandscapeError : ConvergenceError {
  using ConvergenceError::ConvergenceError;
};

}  // namespace gatedist
