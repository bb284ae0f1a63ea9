// Copyright 2026 the sfqsim authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "sfq/types.hpp"

#include <vector>

namespace sfq {

// --------------------------- ladder operators -------------------------------

// a |n> = sqrt(n) |n-1>  ->  a_{n-1,n} = sqrt(n)
Mat annihilation(int dim);

// a† = adjoint of the truncated a
Mat creation(int dim);

// n = a†a, diagonal (0, 1, ..., dim-1)
Mat number_op(int dim);

Mat identity(int dim);

// Bogoliubov pair for squeezing parameter (r, theta):
//   b  = cosh(r) a + e^{i theta} sinh(r) a†
Mat bogoliubov_lower(int dim, double r, double theta);

// --------------------------- quantum states ---------------------------------

/// Either a normalized ket or a Hermitian unit-trace density matrix on a
/// truncated Fock space. Construction validates the invariants:
/// ket norm within 1e-10 of 1; density Hermitian within 1e-10, trace within
/// 1e-10 of 1, smallest eigenvalue >= -1e-8.
class QuantumState {
 public:
  enum class Kind { Ket, Density };

  static QuantumState ket(Vec amplitudes);
  static QuantumState density(Mat rho);
  static QuantumState fock(int dim, int n);

  Kind kind() const { return kind_; }
  bool is_ket() const { return kind_ == Kind::Ket; }
  int dim() const;

  const Vec& amplitudes() const;  // ket only
  Mat density_matrix() const;     // either kind

  double population(int n) const;
  Cplx expectation(const Mat& op) const;

 private:
  QuantumState(Kind kind, Vec ket, Mat rho)
      : kind_(kind), ket_(std::move(ket)), rho_(std::move(rho)) {}
  Kind kind_;
  Vec ket_;
  Mat rho_;
};

// --------------------------- squeezing --------------------------------------

/// Truncation heuristic for squeezed Fock states S|n>, n <= n_max.
/// Tails of S|n> grow like e^{2r}; the base factor has empirical headroom so
/// the Bogoliubov identity holds to ~1e-6 on the first few levels.
int recommended_dim(double r, int n_max = 0);

/// Total population of the state in the top five Fock levels. The truncation
/// guard requires this to stay below 1e-8.
double tail_population(const Vec& psi, int levels = 5);

/// S = exp(zeta* a^2/2 - zeta a†^2/2) with zeta = r e^{i theta}, built from
/// the eigendecomposition of the anti-Hermitian generator. Exactly unitary on
/// the truncated space; satisfies S a S† ~= cosh(r) a + e^{i theta} sinh(r) a†
/// on the subspace whose squeezed images pass the truncation guard.
Mat squeeze_operator(int dim, double r, double theta);

/// Normalized squeezed Fock state S|n>. Requires n < dim/4 and the truncation
/// guard tail_population(S|n>) < 1e-8, otherwise throws TruncationError with
/// a sufficient dimension estimate.
QuantumState squeezed_fock(int dim, int n, double r, double theta);

/// Truncated coherent state by the amplitude recurrence c_n = c_{n-1} alpha/sqrt(n),
/// renormalized to unit norm. Stable for |alpha| up to the grid ranges used here.
Vec coherent_amplitudes(int dim, Cplx alpha);

// --------------------------- phase space ------------------------------------

/// Rectangular, uniformly sampled phase-space window.
/// For wigner() the coordinates are the canonical quadratures (x, p) with
/// alpha = (x + i p)/sqrt(2); for qfunc() they are (Re alpha, Im alpha).
struct PhaseSpaceGrid {
  double re_min, re_max, im_min, im_max;
  int n_re, n_im;

  double re(int i) const;
  double im(int j) const;
  double cell_area() const;
  void validate() const;
};

/// Wigner function sampled on the grid, result(i, j) = W(re_i, im_j).
/// Normalization: integral over the grid measure is 1 (vacuum peaks at 1/pi,
/// Fock |1> dips to -1/pi at the origin). Evaluated per grid point with a
/// Clenshaw recurrence over the Fock-basis Laguerre series.
RealMat wigner(const QuantumState& state, const PhaseSpaceGrid& grid);

/// Husimi function Q(alpha) = <alpha|rho|alpha>/pi, nonnegative, <= 1/pi.
RealMat qfunc(const QuantumState& state, const PhaseSpaceGrid& grid);

/// Riemann sum of a sampled field times the cell area.
double field_integral(const RealMat& field, const PhaseSpaceGrid& grid);

}  // namespace sfq
