// Copyright 2026 the sfqsim authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "sfq/lindblad.hpp"
#include "sfq/model.hpp"
#include "sfq/types.hpp"

#include <vector>

namespace sfq {

using Mat2 = Eigen::Matrix2cd;

/// Two-level reduction of the squeezed-mode master equation. Basis order is
/// (|0>, |1>) with sigma_z = diag(-1, +1).
struct QubitParams {
  double omega_q = 0.0;    // qubit splitting
  double gamma0 = 0.0;     // bare rate
  double big_gamma = 0.0;  // cosh(2r) gamma0
  double n_sq = 0.0;
  Cplx m_sq{0.0, 0.0};
  double kappa = 1.0;  // 1/cosh(2r)

  static QubitParams from_effective(const EffectiveParams& eff, double omega_q);
  void validate() const;
};

enum class SignalKind { SpringConstant, StaticForce };

/// External signal and the derived couplings:
///   spring k:  omega_v = k x0^2 e^{2r} / hbar  (sigma_z shift)
///   force  F:  omega_f = 2 x0 e^{r} F / hbar   (sigma_x coupling)
struct SignalSpec {
  SignalKind kind = SignalKind::SpringConstant;
  double magnitude = 0.0;  // k [N/m] or F [N]
  double omega_v = 0.0;
  double omega_f = 0.0;
  double omega_r = 0.0;  // sqrt(omega_b^2 + omega_f^2)

  static SignalSpec spring(double k, const EffectiveParams& eff);
  static SignalSpec force(double f, const EffectiveParams& eff);
  /// Spring signal back-solved from a requested qubit shift.
  static SignalSpec spring_from_shift(double omega_v, const EffectiveParams& eff);
};

struct ReadoutSpec {
  double c_readout = 1.0;  // efficiency C in (0, 1]
  double t_m = 0.0;        // per-shot overhead [s]
  double total_time = 1.0; // T [s]

  double n_shots(double t) const;
  double sigma_p(double t) const;  // 1 / (2 C sqrt(N))
  void validate() const;
};

/// Qubit-subspace projection of the signal Hamiltonian. For the spring signal
/// (b+b†)^2 projects to diag(1,3) = 2 I + sigma_z; the identity part is a
/// global offset and is discarded, leaving (omega/2) sigma_z. The force signal
/// projects to (omega/2) sigma_x.
struct ProjectedSignal {
  Mat2 op;          // (omega/2) * sigma_z or (omega/2) * sigma_x
  double omega = 0; // omega_v or omega_f
};
ProjectedSignal project_signal(SignalKind kind, const EffectiveParams& eff, double magnitude);

/// Closed-form post-sequence state: pi/2 pulse, free evolution for t under the
/// squeezed reservoir, inverse pulse. rho carries the kappa(1-|c|^2)
/// coherence; p1 = 1/2 - 1/2 e^{-Gamma t/2} cos((omega_q + omega_v) t).
struct RamseyState {
  Mat2 rho;
  double p1 = 0.0;
};
RamseyState ramsey_analytic(const QubitParams& q, double omega_v, double t);

/// Same sequence by numerical integration of the two-level master equation
/// (instantaneous pulses). The two-quantum cross terms couple only the
/// coherence pair during free evolution, which the closing pulse rotates into
/// the measured population: with them the fringe picks up a correction of
/// order gamma0 |M| / omega. The closed form drops them, so the default here
/// does too; the flag restores the full phase-sensitive bath.
struct QubitRamseyResult {
  std::vector<double> times;
  std::vector<double> p1;
  std::vector<Mat2> states;
};
QubitRamseyResult ramsey_numeric_qubit(const QubitParams& q, double omega_v,
                                       const std::vector<double>& t_grid,
                                       bool include_cross_terms = false);

/// Full Fock-space Ramsey in the frame rotating at the qubit splitting:
/// finite-duration pi/2 pulses of amplitude pulse_amp (duration
/// pi/(2 pulse_amp)), free evolution under the signal-shifted Kerr
/// Hamiltonian, inverse pulse, readout of level 1. Coherent leakage study:
/// stages propagate exactly through eigendecomposition. Reported leakage is
/// the population outside levels {0, 1} at readout.
struct RamseyFullResult {
  std::vector<double> times;
  std::vector<double> p1;
  std::vector<double> leakage;
};
RamseyFullResult ramsey_numeric_full(const EffectiveParams& eff, const SignalSpec& signal,
                                     const std::vector<double>& t_grid, double pulse_amp,
                                     int dim = 24);
RamseyFullResult ramsey_numeric_full(const ModelParams& p, const SignalSpec& signal,
                                     const std::vector<double>& t_grid, double pulse_amp);

/// Probability shift at the maximum-slope bias point (positive branch):
/// delta_p = 1/2 e^{-Gamma t/2} x0^2 e^{2r} delta_k t / hbar.
double delta_p(const EffectiveParams& eff, double delta_k, double t);

/// SNR = delta_p / sigma_p with N = T/(t + t_m) repetitions.
double snr(const EffectiveParams& eff, double delta_k, double t, const ReadoutSpec& readout);

/// Largest odd-m bias time t = m pi/(2 omega) not exceeding t_max.
double bias_time(double omega, double t_max);

struct SpringSensitivity {
  double delta_k_min = 0.0;  // exact optimum, N/m / sqrt(Hz)
  double t_opt = 0.0;        // 1/(gamma0 cosh 2r)
  double approx = 0.0;       // hbar sqrt(gamma0 e) / (x0^2 e^r)
  double baseline = 0.0;     // undriven qubit, hbar sqrt(gamma0 e)/x0^2
  double ratio = 0.0;        // delta_k_min / baseline = sqrt(cosh 2r) e^{-2r}
  double ratio_approx = 0.0; // e^{-r}
};
SpringSensitivity sensitivity_spring(const EffectiveParams& eff);

/// Two-outcome statistics route: Cramer-Rao error of the level-1 projector,
/// error propagation through the fringe slope at the bias point, then a
/// numerical minimum over the encoding time. Equals the slope route at T=1 s.
double sensitivity_spring_cramer_rao(const EffectiveParams& eff, double total_time);

/// P1 under the static-force Rabi protocol,
/// (omega_f^2/omega_r^2) sin^2(omega_r t / 2).
double rabi_force_probability(const EffectiveParams& eff, double force, double t);

enum class ForceDecoherenceMode { DrivenBath, DissipativeSqueezing };

struct ForceSensitivity {
  double delta_f_min = 0.0;  // N / sqrt(Hz)
  double t_opt = 0.0;
  double approx = 0.0;
};
ForceSensitivity sensitivity_force(const EffectiveParams& eff, const SignalSpec& signal,
                                   ForceDecoherenceMode mode);

}  // namespace sfq
