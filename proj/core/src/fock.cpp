// Copyright 2026 the sfqsim authors
// SPDX-License-Identifier: Apache-2.0

#include "sfq/fock.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

namespace sfq {

Mat annihilation(int dim) {
  if (dim < 2) throw std::invalid_argument("annihilation: dim must be >= 2");
  Mat m = Mat::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) m(n - 1, n) = std::sqrt(double(n));
  return m;
}

Mat creation(int dim) { return annihilation(dim).adjoint(); }

Mat number_op(int dim) {
  if (dim < 2) throw std::invalid_argument("number_op: dim must be >= 2");
  Mat m = Mat::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) m(n, n) = double(n);
  return m;
}

Mat identity(int dim) {
  if (dim < 2) throw std::invalid_argument("identity: dim must be >= 2");
  return Mat::Identity(dim, dim);
}

Mat bogoliubov_lower(int dim, double r, double theta) {
  const Mat a = annihilation(dim);
  return std::cosh(r) * a + std::exp(Cplx(0.0, theta)) * std::sinh(r) * a.adjoint();
}

// --------------------------- QuantumState -----------------------------------

QuantumState QuantumState::ket(Vec amplitudes) {
  if (amplitudes.size() < 2) throw std::invalid_argument("QuantumState: dim must be >= 2");
  if (!amplitudes.allFinite()) throw std::invalid_argument("QuantumState: non-finite amplitudes");
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > 1e-10)
    throw std::invalid_argument("QuantumState: ket norm deviates from 1 by " +
                                std::to_string(std::abs(norm - 1.0)));
  return QuantumState(Kind::Ket, std::move(amplitudes), Mat());
}

QuantumState QuantumState::density(Mat rho) {
  if (rho.rows() != rho.cols() || rho.rows() < 2)
    throw std::invalid_argument("QuantumState: density matrix must be square with dim >= 2");
  if (!rho.allFinite()) throw std::invalid_argument("QuantumState: non-finite density entries");
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-10)
    throw std::invalid_argument("QuantumState: density not Hermitian, error " + std::to_string(herm));
  const double tr_err = std::abs(rho.trace() - Cplx(1.0, 0.0));
  if (tr_err > 1e-10)
    throw std::invalid_argument("QuantumState: trace deviates from 1 by " + std::to_string(tr_err));
  Eigen::SelfAdjointEigenSolver<Mat> es(rho, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -1e-8)
    throw std::invalid_argument("QuantumState: negative eigenvalue " + std::to_string(min_eig));
  return QuantumState(Kind::Density, Vec(), std::move(rho));
}

QuantumState QuantumState::fock(int dim, int n) {
  if (n < 0 || n >= dim) throw std::invalid_argument("QuantumState::fock: level out of range");
  Vec v = Vec::Zero(dim);
  v(n) = 1.0;
  return ket(std::move(v));
}

int QuantumState::dim() const {
  return kind_ == Kind::Ket ? int(ket_.size()) : int(rho_.rows());
}

const Vec& QuantumState::amplitudes() const {
  if (kind_ != Kind::Ket) throw std::logic_error("QuantumState: not a ket");
  return ket_;
}

Mat QuantumState::density_matrix() const {
  if (kind_ == Kind::Ket) return ket_ * ket_.adjoint();
  return rho_;
}

double QuantumState::population(int n) const {
  if (n < 0 || n >= dim()) throw std::invalid_argument("QuantumState::population: out of range");
  if (kind_ == Kind::Ket) return std::norm(ket_(n));
  return rho_(n, n).real();
}

Cplx QuantumState::expectation(const Mat& op) const {
  if (op.rows() != dim() || op.cols() != dim())
    throw std::invalid_argument("QuantumState::expectation: dimension mismatch");
  if (kind_ == Kind::Ket) return ket_.dot(op * ket_);
  return (rho_ * op).trace();
}

// --------------------------- squeezing --------------------------------------

int recommended_dim(double r, int n_max) {
  const double base = 20.0 * std::exp(2.0 * std::abs(r)) * (1.0 + 0.5 * n_max);
  return std::max(64, int(std::ceil(base)));
}

double tail_population(const Vec& psi, int levels) {
  const int d = int(psi.size());
  const int k = std::min(levels, d);
  double p = 0.0;
  for (int i = d - k; i < d; ++i) p += std::norm(psi(i));
  return p;
}

Mat squeeze_operator(int dim, double r, double theta) {
  if (dim < 2) throw std::invalid_argument("squeeze_operator: dim must be >= 2");
  if (r < 0.0) throw std::invalid_argument("squeeze_operator: r must be >= 0");
  if (r == 0.0) return Mat::Identity(dim, dim);
  const Mat a = annihilation(dim);
  const Cplx zeta = r * std::exp(Cplx(0.0, theta));
  // generator A = (zeta* a^2 - zeta a†^2)/2 is anti-Hermitian; exponentiate
  // through the Hermitian matrix iA so the result is unitary by construction
  const Mat a2 = a * a;
  const Mat gen_i = Cplx(0.0, 1.0) * (std::conj(zeta) * a2 - zeta * a2.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Mat> es(gen_i);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("squeeze_operator: eigendecomposition failed");
  const auto& w = es.eigenvalues();
  Vec phases(dim);
  for (int k = 0; k < dim; ++k) phases(k) = std::exp(Cplx(0.0, -w(k)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

QuantumState squeezed_fock(int dim, int n, double r, double theta) {
  if (n < 0) throw std::invalid_argument("squeezed_fock: n must be >= 0");
  if (n >= dim / 4)
    throw std::invalid_argument("squeezed_fock: occupancy margin requires n < dim/4");
  const Mat s = squeeze_operator(dim, r, theta);
  Vec psi = s.col(n);
  const double tail = tail_population(psi);
  if (tail >= 1e-8) {
    const int suggest = std::max(recommended_dim(r, n), (dim * 3) / 2);
    throw TruncationError("squeezed_fock: top-level population " + std::to_string(tail) +
                              " exceeds guard, need dim ~ " + std::to_string(suggest),
                          suggest);
  }
  psi /= psi.norm();
  return QuantumState::ket(std::move(psi));
}

Vec coherent_amplitudes(int dim, Cplx alpha) {
  if (dim < 2) throw std::invalid_argument("coherent_amplitudes: dim must be >= 2");
  Vec c(dim);
  c(0) = 1.0;
  for (int n = 1; n < dim; ++n) c(n) = c(n - 1) * alpha / std::sqrt(double(n));
  c /= c.norm();
  return c;
}

// --------------------------- phase space ------------------------------------

void PhaseSpaceGrid::validate() const {
  if (!(re_min < re_max) || !(im_min < im_max))
    throw std::invalid_argument("PhaseSpaceGrid: bounds must be ordered");
  if (n_re < 2 || n_im < 2) throw std::invalid_argument("PhaseSpaceGrid: counts must be >= 2");
}

double PhaseSpaceGrid::re(int i) const {
  return re_min + (re_max - re_min) * double(i) / double(n_re - 1);
}

double PhaseSpaceGrid::im(int j) const {
  return im_min + (im_max - im_min) * double(j) / double(n_im - 1);
}

double PhaseSpaceGrid::cell_area() const {
  return (re_max - re_min) / double(n_re - 1) * (im_max - im_min) / double(n_im - 1);
}

namespace {

// Clenshaw evaluation of sum_k c_k L_k^{(L)}(x) / sqrt(binom(k+L, k)) over one
// Fock-basis diagonal, the stable route to the Laguerre series of the Wigner
// function at a single phase-space point.
Cplx wig_laguerre_val(int L, double x, const Cplx* c, int len) {
  if (len == 1) return c[0];
  if (len == 2) return c[0] - c[1] * (L + 1.0 - x) / std::sqrt(L + 1.0);
  Cplx y0 = c[len - 2];
  Cplx y1 = c[len - 1];
  int k = len;
  for (int i = 3; i <= len; ++i) {
    k -= 1;
    const Cplx y0n =
        c[len - i] - y1 * std::sqrt(double(k - 1) * double(L + k - 1) / (double(L + k) * k));
    const Cplx y1n = y0 - y1 * (L + 2.0 * k - 1.0 - x) / std::sqrt(double(L + k) * k);
    y0 = y0n;
    y1 = y1n;
  }
  return y0 - y1 * (L + 1.0 - x) / std::sqrt(L + 1.0);
}

double wigner_point(const std::vector<std::vector<Cplx>>& diags, double x, double y) {
  const int m = int(diags.size());
  const Cplx a2 = std::sqrt(2.0) * Cplx(x, y);  // 2 alpha
  const double b = std::norm(a2);
  Cplx w0 = diags[m - 1][0];
  for (int l = m - 2; l >= 0; --l) {
    w0 = wig_laguerre_val(l, b, diags[l].data(), int(diags[l].size())) +
         w0 * a2 / std::sqrt(l + 1.0);
  }
  return w0.real() * std::exp(-0.5 * b) / consts::pi;
}

}  // namespace

RealMat wigner(const QuantumState& state, const PhaseSpaceGrid& grid) {
  grid.validate();
  const Mat rho = state.density_matrix();
  const int d = state.dim();
  // upper diagonals of rho with off-diagonals doubled (Hermitian fold)
  std::vector<std::vector<Cplx>> diags(d);
  for (int l = 0; l < d; ++l) {
    diags[l].resize(d - l);
    const double f = (l == 0) ? 1.0 : 2.0;
    for (int i = 0; i + l < d; ++i) diags[l][i] = f * rho(i, i + l);
  }
  RealMat out(grid.n_re, grid.n_im);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < grid.n_re; ++i) {
    const double x = grid.re(i);
    for (int j = 0; j < grid.n_im; ++j) out(i, j) = wigner_point(diags, x, grid.im(j));
  }
  return out;
}

RealMat qfunc(const QuantumState& state, const PhaseSpaceGrid& grid) {
  grid.validate();
  const int d = state.dim();
  const bool pure = state.is_ket();
  const Mat rho = pure ? Mat() : state.density_matrix();
  const Vec psi = pure ? state.amplitudes() : Vec();
  RealMat out(grid.n_re, grid.n_im);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < grid.n_re; ++i) {
    for (int j = 0; j < grid.n_im; ++j) {
      const Vec coh = coherent_amplitudes(d, Cplx(grid.re(i), grid.im(j)));
      double q;
      if (pure) {
        q = std::norm(coh.dot(psi));
      } else {
        q = (coh.dot(rho * coh)).real();
      }
      out(i, j) = q / consts::pi;
    }
  }
  return out;
}

double field_integral(const RealMat& field, const PhaseSpaceGrid& grid) {
  return field.sum() * grid.cell_area();
}

}  // namespace sfq
