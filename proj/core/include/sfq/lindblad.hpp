// Copyright 2026 the sfqsim authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "sfq/model.hpp"
#include "sfq/types.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace sfq {

/// One term rate/2 * (2 A rho B - B A rho - rho B A). Rates may be complex;
/// Hermiticity preservation comes from summing conjugate partners.
struct DissipatorTerm {
  Cplx rate;
  Mat op_left;   // A
  Mat op_right;  // B
};

Mat dissipator_apply(const DissipatorTerm& term, const Mat& rho);

struct ModeOps {
  Mat lower;  // b
  Mat raise;  // b†
};

ModeOps fock_mode_ops(int dim);

/// The four bath terms of the squeezed-frame master equation, with rates
/// gamma0(N+1), gamma0 N, -gamma0 M, -gamma0 M* acting through
/// (b, b†), (b†, b), (b, b), (b†, b†).
std::vector<DissipatorTerm> squeezed_bath_terms(const EffectiveParams& eff, const ModeOps& mode);

/// Hermitian drive operator with a real time-dependent envelope.
struct DriveTerm {
  Mat op;
  std::function<double(double)> envelope;
};

/// H(t) = h0 + sum_i envelope_i(t) op_i, plus a list of dissipator terms.
struct Generator {
  Mat h0;
  std::vector<DriveTerm> drives;
  std::vector<DissipatorTerm> terms;

  int dim() const { return int(h0.rows()); }
  void validate() const;
};

/// Evaluate d rho/dt once. Convenience entry for tests and benchmarks; the
/// integrator uses a compiled form that exploits operator bandedness.
Mat lindblad_rhs(const Generator& g, const Mat& rho, double t);

struct StepControl {
  double dt_init = 0.0;  // 0: derived from the sample grid
  double tol = 1e-6;     // convergence between successive halvings
  int max_refinements = 24;
  // optional observable of record; default metric is the Frobenius norm of
  // the state difference, which bounds any projected population change
  std::function<double(const Mat&)> observable;
};

struct SampleDiagnostics {
  double trace_err = 0.0;
  double herm_err = 0.0;
  double min_eig = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Mat> states;
  std::vector<SampleDiagnostics> diagnostics;
  int refinements = 0;
  double dt = 0.0;

  double max_trace_err() const;
  double max_herm_err() const;
  double min_eigenvalue() const;
};

/// Fixed-step RK4 with global step halving until the observable of record
/// changes by less than ctl.tol between refinements. States are Hermitized
/// after every step; trace is conserved structurally (the RHS is trace-free)
/// and monitored, not renormalized. Small negative eigenvalues are tolerated
/// down to -1e-8 and reported in the diagnostics either way.
Trajectory evolve(const Generator& g, const Mat& rho0, const std::vector<double>& t_grid,
                  const StepControl& ctl = {});

/// Integrates the full time-dependent pump dynamics (no rotating-wave drop),
/// expressed in the frame rotating at omega_p so the inert omega_a n phases
/// do not limit the step. States come out in that frame.
Trajectory evolve_lab_frame(const ModelParams& p, const Mat& rho0,
                            const std::vector<double>& t_grid, const StepControl& ctl = {});

// --------------------------- prefab generators ------------------------------

/// Frame rotating at omega_p: hamiltonian_rot plus bare decay gamma0/2 D[a].
Generator rot_frame_generator(const ModelParams& p);

/// Full pump dynamics in the omega_p frame: the rotating-wave terms of
/// hamiltonian_rot plus every counter-rotating pump term with explicit
/// 2 omega_p envelopes, plus bare decay.
Generator lab_frame_generator(const ModelParams& p);

/// Squeezed-mode frame: omega_b b†b + U_b b†b†bb plus the squeezed bath.
Generator effective_generator(const EffectiveParams& eff, int dim);

}  // namespace sfq
