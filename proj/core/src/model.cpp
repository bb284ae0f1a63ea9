// Copyright 2026 the sfqsim authors
// SPDX-License-Identifier: Apache-2.0

#include "sfq/model.hpp"

#include "sfq/fock.hpp"

#include <algorithm>
#include <cmath>

namespace sfq {

void ModelParams::validate() const {
  if (omega_a <= 0.0) throw std::invalid_argument("ModelParams: omega_a must be > 0");
  if (gamma0 < 0.0) throw std::invalid_argument("ModelParams: gamma0 must be >= 0");
  if (mass <= 0.0) throw std::invalid_argument("ModelParams: mass must be > 0");
  if (dim < 2) throw std::invalid_argument("ModelParams: dim must be >= 2");
}

double RwaReport::max_ratio() const {
  return std::max({ratios[0], ratios[1], ratios[2]});
}

double squeezing_from_drive(double delta_a, double drive_amp) {
  if (drive_amp == 0.0) return 0.0;
  if (delta_a == 0.0 || std::abs(drive_amp / delta_a) >= 1.0)
    throw UnstableDriveError("squeezing_from_drive: |drive_amp/delta_a| >= 1, no squeezed frame");
  return 0.5 * std::atanh(drive_amp / delta_a);
}

double zero_point_motion(double mass, double omega_a) {
  if (mass <= 0.0 || omega_a <= 0.0)
    throw std::invalid_argument("zero_point_motion: mass and omega_a must be > 0");
  return std::sqrt(consts::hbar / (2.0 * mass * omega_a));
}

EffectiveParams effective_params_from_r(double r, double kerr, double gamma0, double delta_b,
                                        double theta, double x_zpf) {
  const double c = std::cosh(r), s = std::sinh(r);
  EffectiveParams e;
  e.r = r;
  e.delta_a = delta_b * std::cosh(2.0 * r);
  e.omega_b = delta_b + kerr * (8.0 * c * c * s * s + 4.0 * s * s * s * s);
  e.u_b = (3.0 * std::cosh(4.0 * r) + 1.0) * kerr / 4.0;
  e.alpha = 2.0 * e.u_b;
  e.big_gamma = std::cosh(2.0 * r) * gamma0;
  e.n_sq = s * s;
  e.m_sq = std::exp(Cplx(0.0, -theta)) * c * s;
  e.x_zpf = x_zpf;
  e.gamma0 = gamma0;
  e.kerr = kerr;
  e.theta = theta;
  return e;
}

EffectiveParams effective_params(const ModelParams& p) {
  p.validate();
  const double r = squeezing_from_drive(p.delta_a(), p.drive_amp);
  const double delta_b =
      std::sqrt(std::max(0.0, p.delta_a() * p.delta_a() - p.drive_amp * p.drive_amp));
  EffectiveParams e = effective_params_from_r(r, p.kerr, p.gamma0, delta_b, p.theta,
                                              zero_point_motion(p.mass, p.omega_a));
  e.delta_a = p.delta_a();
  return e;
}

RwaReport rwa_report(const EffectiveParams& eff, double threshold) {
  const double r2 = 2.0 * eff.r;
  const double k = eff.kerr;
  const double wb = eff.omega_b;
  RwaReport rep;
  rep.threshold = threshold;
  if (wb == 0.0) throw std::invalid_argument("rwa_report: omega_b must be nonzero");
  // neglected term magnitudes over their rotation rates
  rep.ratios[0] = std::abs(k) * std::pow(std::sinh(r2), 2) / 4.0 / (4.0 * std::abs(wb));
  rep.ratios[1] = std::abs(k) * std::sinh(2.0 * r2) / 2.0 / (2.0 * std::abs(wb));
  rep.ratios[2] = std::abs(k) * std::sinh(r2) * (3.0 * std::cosh(r2) - 2.0) / 2.0 /
                  (2.0 * std::abs(wb));
  return rep;
}

RwaReport rwa_report(const ModelParams& p, double threshold) {
  return rwa_report(effective_params(p), threshold);
}

Mat hamiltonian_lab(const ModelParams& p, double t) {
  p.validate();
  const int d = p.dim;
  const Mat a = annihilation(d);
  const Mat a2 = a * a;
  const Mat n = number_op(d);
  const Cplx eth = std::exp(Cplx(0.0, p.theta));
  Mat h = p.omega_a * n + p.kerr * (n * n - n);
  const double env = p.drive_amp * std::cos(2.0 * p.omega_p * t);
  h += env * (std::conj(eth) * a2 + eth * a2.adjoint() + 2.0 * n + Mat::Identity(d, d));
  return h;
}

Mat hamiltonian_rot(const ModelParams& p) {
  p.validate();
  const int d = p.dim;
  const Mat a = annihilation(d);
  const Mat a2 = a * a;
  const Mat n = number_op(d);
  const Cplx eth = std::exp(Cplx(0.0, p.theta));
  return p.delta_a() * n + p.kerr * (n * n - n) +
         0.5 * p.drive_amp * (std::conj(eth) * a2 + eth * a2.adjoint());
}

Mat hamiltonian_eff(const EffectiveParams& eff, int dim, EffFrame frame) {
  Mat h = Mat::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) h(n, n) = eff.omega_b * n + eff.u_b * double(n) * (n - 1);
  if (frame == EffFrame::ModeB) return h;
  const Mat s = squeeze_operator(dim, eff.r, eff.theta);
  return s * h * s.adjoint();
}

Mat hamiltonian_eff(const ModelParams& p, EffFrame frame) {
  return hamiltonian_eff(effective_params(p), p.dim, frame);
}

double back_solve_delta_a(double omega_b_target, double kerr, double r) {
  const double c = std::cosh(r), s = std::sinh(r);
  const double delta_b = omega_b_target - kerr * (8.0 * c * c * s * s + 4.0 * s * s * s * s);
  if (delta_b <= 0.0)
    throw std::invalid_argument("back_solve_delta_a: target omega_b below the Kerr shift");
  return delta_b * std::cosh(2.0 * r);
}

double thermal_occupation(double omega, double temperature) {
  if (omega <= 0.0 || temperature <= 0.0)
    throw std::invalid_argument("thermal_occupation: omega and T must be > 0");
  return 1.0 / std::expm1(consts::hbar * omega / (consts::kb * temperature));
}

double alpha_gamma_crossing(double gamma0_over_k) {
  // alpha/Gamma = [3 cosh(4r)+1] / (2 c cosh(2r)), monotone through 1
  auto ratio = [gamma0_over_k](double r) {
    return (3.0 * std::cosh(4.0 * r) + 1.0) / (2.0 * gamma0_over_k * std::cosh(2.0 * r));
  };
  double lo = 0.0, hi = 10.0;
  if (ratio(lo) >= 1.0) return lo;
  if (ratio(hi) <= 1.0) throw std::invalid_argument("alpha_gamma_crossing: no crossing below r=10");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ratio(mid) < 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace sfq
