// Copyright 2026 the sfqsim authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace sfq {

using Cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealMat = Eigen::MatrixXd;

namespace consts {
inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double hbar = 1.054571817e-34;  // J s
inline constexpr double kb = 1.380649e-23;       // J / K
}  // namespace consts

/// Fock truncation too small for the requested squeezed state. Carries the
/// dimension estimated to be sufficient.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, int required)
      : std::runtime_error(what), required_dim(required) {}
  int required_dim;
};

/// |drive_amp / delta_a| >= 1: the quadratic part of the driven Hamiltonian
/// is unbounded below and no squeezed frame exists.
class UnstableDriveError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Step halving failed to converge within the refinement budget.
class ConvergenceError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sfq
