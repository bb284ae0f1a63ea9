// Copyright 2026 the sfqsim authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "sfq/types.hpp"

#include <array>

namespace sfq {

/// Physical inputs for the driven Kerr resonator. Angular frequencies in
/// rad/s ("X/2pi = f" quotes enter as 2*pi*f), mass in kg. Internally hbar=1;
/// SI constants are reinstated only where meters and newtons are reported.
struct ModelParams {
  double omega_a = 0.0;    // resonator frequency
  double kerr = 0.0;       // Kerr strength K
  double gamma0 = 0.0;     // bare decoherence rate
  double omega_p = 0.0;    // half the pump frequency (pump at 2 omega_p)
  double drive_amp = 0.0;  // two-phonon amplitude Omega_p
  double theta = consts::pi;
  double mass = 1e-21;  // kg
  int dim = 64;

  double delta_a() const { return omega_a - omega_p; }
  void validate() const;
};

/// Quantities derived from the squeezed frame. gamma0, kerr and theta are
/// carried through so downstream consumers need only this record.
struct EffectiveParams {
  double r = 0.0;          // squeezing parameter
  double delta_a = 0.0;    // omega_a - omega_p
  double omega_b = 0.0;    // squeezed-mode frequency
  double u_b = 0.0;        // enhanced Kerr
  double alpha = 0.0;      // anharmonicity, 2 u_b
  double big_gamma = 0.0;  // cosh(2r) gamma0
  double n_sq = 0.0;       // sinh^2 r
  Cplx m_sq{0.0, 0.0};     // e^{-i theta} cosh r sinh r
  double x_zpf = 0.0;      // zero-point fluctuation, meters
  double gamma0 = 0.0;
  double kerr = 0.0;
  double theta = consts::pi;
};

/// The three neglected-term/rotation-rate ratios behind the rotating-wave
/// approximation, each compared against a configurable threshold.
struct RwaReport {
  std::array<double, 3> ratios{0.0, 0.0, 0.0};
  double threshold = 0.05;
  double max_ratio() const;
  bool pass() const { return max_ratio() < threshold; }
};

/// tanh(2r) = drive_amp / delta_a. Throws UnstableDriveError when the ratio
/// reaches 1 in magnitude.
double squeezing_from_drive(double delta_a, double drive_amp);

double zero_point_motion(double mass, double omega_a);

EffectiveParams effective_params(const ModelParams& p);

/// Desk-scale construction from the squeezing parameter directly; delta_b is
/// the bare squeezed-frame detuning sqrt(delta_a^2 - Omega_p^2).
EffectiveParams effective_params_from_r(double r, double kerr, double gamma0, double delta_b,
                                        double theta = consts::pi, double x_zpf = 0.0);

RwaReport rwa_report(const ModelParams& p, double threshold = 0.05);
RwaReport rwa_report(const EffectiveParams& eff, double threshold = 0.05);

/// Lab-frame Hamiltonian at time t:
///   omega_a a†a + K a†a†aa + Omega_p cos(2 omega_p t) (e^{-i theta} a^2 + e^{i theta} a†^2 + 2 a†a + 1).
/// The drive phase convention matches the rotated-frame form below: averaging
/// over the pump period reproduces hamiltonian_rot with the same theta.
Mat hamiltonian_lab(const ModelParams& p, double t);

/// Frame rotating at omega_p:
///   delta_a a†a + K a†a†aa + (Omega_p/2)(e^{-i theta} a^2 + e^{i theta} a†^2).
Mat hamiltonian_rot(const ModelParams& p);

enum class EffFrame { ModeB, ModeA };

/// Effective Hamiltonian omega_b b†b + U_b b†b†bb. ModeB returns the diagonal
/// Fock-basis matrix; ModeA conjugates by the squeeze operator so squeezed
/// Fock states are its eigenvectors.
Mat hamiltonian_eff(const ModelParams& p, EffFrame frame);
Mat hamiltonian_eff(const EffectiveParams& eff, int dim, EffFrame frame);

/// delta_a reproducing a target omega_b at fixed (K, r).
double back_solve_delta_a(double omega_b_target, double kerr, double r);

/// Bose-Einstein occupation at temperature T (kelvin).
double thermal_occupation(double omega, double temperature);

/// r at which alpha/Gamma crosses 1 for gamma0 = c*K, by bisection.
double alpha_gamma_crossing(double gamma0_over_k);

}  // namespace sfq
