// Copyright 2026 the sfqsim authors
// SPDX-License-Identifier: Apache-2.0

#include "sfq/sensing.hpp"

#include "sfq/fock.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace sfq {

namespace {

const Mat2 kSigmaZ = (Mat2() << -1.0, 0.0, 0.0, 1.0).finished();
const Mat2 kSigmaX = (Mat2() << 0.0, 1.0, 1.0, 0.0).finished();

// R_y(-pi/2) prepares (|0> - |1>)/sqrt(2); R_y(+pi/2) closes the sequence.
const Mat2 kPulseOpen = (Mat2() << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0),
                         -1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0))
                            .finished();
const Mat2 kPulseClose = (Mat2() << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0),
                          1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0))
                             .finished();

}  // namespace

QubitParams QubitParams::from_effective(const EffectiveParams& eff, double omega_q) {
  QubitParams q;
  q.omega_q = omega_q;
  q.gamma0 = eff.gamma0;
  q.big_gamma = eff.big_gamma;
  q.n_sq = eff.n_sq;
  q.m_sq = eff.m_sq;
  q.kappa = 1.0 / std::cosh(2.0 * eff.r);
  q.validate();
  return q;
}

void QubitParams::validate() const {
  if (!(kappa > 0.0) || kappa > 1.0)
    throw std::invalid_argument("QubitParams: kappa must lie in (0, 1]");
  if (gamma0 > 0.0) {
    const double consistency = std::abs(big_gamma * kappa / gamma0 - 1.0);
    if (consistency > 1e-9)
      throw std::invalid_argument("QubitParams: kappa inconsistent with big_gamma/gamma0");
  }
}

SignalSpec SignalSpec::spring(double k, const EffectiveParams& eff) {
  if (eff.x_zpf <= 0.0) throw std::invalid_argument("SignalSpec: x_zpf must be set");
  SignalSpec s;
  s.kind = SignalKind::SpringConstant;
  s.magnitude = k;
  s.omega_v = k * eff.x_zpf * eff.x_zpf * std::exp(2.0 * eff.r) / consts::hbar;
  s.omega_f = 0.0;
  s.omega_r = eff.omega_b;
  return s;
}

SignalSpec SignalSpec::spring_from_shift(double omega_v, const EffectiveParams& eff) {
  if (eff.x_zpf <= 0.0) throw std::invalid_argument("SignalSpec: x_zpf must be set");
  const double k = omega_v * consts::hbar / (eff.x_zpf * eff.x_zpf * std::exp(2.0 * eff.r));
  return spring(k, eff);
}

SignalSpec SignalSpec::force(double f, const EffectiveParams& eff) {
  if (eff.x_zpf <= 0.0) throw std::invalid_argument("SignalSpec: x_zpf must be set");
  SignalSpec s;
  s.kind = SignalKind::StaticForce;
  s.magnitude = f;
  s.omega_v = 0.0;
  s.omega_f = 2.0 * eff.x_zpf * std::exp(eff.r) * f / consts::hbar;
  s.omega_r = std::hypot(eff.omega_b, s.omega_f);
  return s;
}

double ReadoutSpec::n_shots(double t) const {
  const double n = total_time / (t + t_m);
  if (n < 1.0) throw std::invalid_argument("ReadoutSpec: fewer than one shot fits in T");
  return n;
}

double ReadoutSpec::sigma_p(double t) const {
  return 1.0 / (2.0 * c_readout * std::sqrt(n_shots(t)));
}

void ReadoutSpec::validate() const {
  if (!(c_readout > 0.0) || c_readout > 1.0)
    throw std::invalid_argument("ReadoutSpec: C must lie in (0, 1]");
  if (t_m < 0.0 || total_time <= 0.0)
    throw std::invalid_argument("ReadoutSpec: times must be nonnegative, T positive");
}

ProjectedSignal project_signal(SignalKind kind, const EffectiveParams& eff, double magnitude) {
  ProjectedSignal out;
  if (kind == SignalKind::SpringConstant) {
    out.omega = SignalSpec::spring(magnitude, eff).omega_v;
    out.op = 0.5 * out.omega * kSigmaZ;
  } else if (kind == SignalKind::StaticForce) {
    out.omega = SignalSpec::force(magnitude, eff).omega_f;
    out.op = 0.5 * out.omega * kSigmaX;
  } else {
    throw std::invalid_argument("project_signal: unknown signal kind");
  }
  return out;
}

RamseyState ramsey_analytic(const QubitParams& q, double omega_v, double t) {
  if (t < 0.0) throw std::invalid_argument("ramsey_analytic: t must be >= 0");
  const double omega = q.omega_q + omega_v;
  const Cplx c = std::exp(Cplx(-0.5 * q.big_gamma * t, -omega * t));
  RamseyState out;
  out.rho(0, 0) = 0.5 * (1.0 + c.real());
  out.rho(1, 1) = 0.5 * (1.0 - c.real());
  out.rho(0, 1) = 0.5 * (q.kappa * (1.0 - std::norm(c)) - Cplx(0.0, 1.0) * c.imag());
  out.rho(1, 0) = std::conj(out.rho(0, 1));
  out.p1 = out.rho(1, 1).real();
  return out;
}

QubitRamseyResult ramsey_numeric_qubit(const QubitParams& q, double omega_v,
                                       const std::vector<double>& t_grid,
                                       bool include_cross_terms) {
  const double omega = q.omega_q + omega_v;
  Generator g;
  // phase convention of the closed form: coherences rotate as e^{-i omega t},
  // so the free generator carries diag(+omega/2, -omega/2)
  g.h0 = -0.5 * omega * kSigmaZ;
  Mat sm = Mat::Zero(2, 2);
  sm(0, 1) = 1.0;  // sigma_- = |0><1|
  const Mat sp = sm.adjoint();
  g.terms.push_back({Cplx(q.gamma0 * (q.n_sq + 1.0), 0.0), sm, sp});
  g.terms.push_back({Cplx(q.gamma0 * q.n_sq, 0.0), sp, sm});
  if (include_cross_terms) {
    g.terms.push_back({-q.gamma0 * q.m_sq, sm, sm});
    g.terms.push_back({-q.gamma0 * std::conj(q.m_sq), sp, sp});
  }

  // first pulse applied to |0><0|, one free trajectory, second pulse applied
  // per sample (pulses are instantaneous unitaries)
  Vec psi0 = Vec::Zero(2);
  psi0(0) = 1.0;
  const Vec psi = kPulseOpen.cast<Cplx>() * psi0;
  const Mat rho0 = psi * psi.adjoint();

  StepControl ctl;
  ctl.tol = 1e-9;
  std::vector<double> grid = t_grid;
  const bool from_zero = !grid.empty() && grid.front() == 0.0;
  if (!from_zero) grid.insert(grid.begin(), 0.0);
  Trajectory traj = evolve(g, rho0, grid, ctl);

  QubitRamseyResult out;
  const size_t skip = from_zero ? 0 : 1;
  for (size_t i = skip; i < traj.states.size(); ++i) {
    const Mat2 rho_t = traj.states[i];
    const Mat2 rho_f = kPulseClose * rho_t * kPulseClose.adjoint();
    out.times.push_back(traj.times[i]);
    out.p1.push_back(rho_f(1, 1).real());
    out.states.push_back(rho_f);
  }
  return out;
}

namespace {

// exp(-i H t) |psi> through the eigendecomposition of Hermitian H
struct Propagator {
  Eigen::SelfAdjointEigenSolver<Mat> es;
  explicit Propagator(const Mat& h) : es(h) {
    if (es.info() != Eigen::Success)
      throw std::runtime_error("ramsey_numeric_full: eigendecomposition failed");
  }
  Vec apply(const Vec& psi, double t) const {
    Vec c = es.eigenvectors().adjoint() * psi;
    for (int k = 0; k < c.size(); ++k) c(k) *= std::exp(Cplx(0.0, -es.eigenvalues()(k) * t));
    return es.eigenvectors() * c;
  }
};

}  // namespace

RamseyFullResult ramsey_numeric_full(const EffectiveParams& eff, const SignalSpec& signal,
                                     const std::vector<double>& t_grid, double pulse_amp,
                                     int dim) {
  if (pulse_amp <= 0.0) throw std::invalid_argument("ramsey_numeric_full: pulse_amp must be > 0");
  if (signal.kind != SignalKind::SpringConstant)
    throw std::invalid_argument("ramsey_numeric_full: expects a spring-constant signal");
  // frame rotating at the qubit splitting; the signal keeps its secular part
  // (omega_v/2)(2n+1) and the Kerr ladder provides the leakage detuning
  Mat hfree = Mat::Zero(dim, dim);
  for (int n = 0; n < dim; ++n)
    hfree(n, n) = eff.u_b * double(n) * (n - 1) + 0.5 * signal.omega_v * (2.0 * n + 1.0);
  const Mat a = annihilation(dim);
  const Mat y_quad = Cplx(0.0, 1.0) * (a.adjoint() - a);  // generates R_y rotations
  const double t_pulse = 0.5 * consts::pi / pulse_amp;

  const Propagator open_pulse(hfree - 0.5 * pulse_amp * y_quad);
  const Propagator close_pulse(hfree + 0.5 * pulse_amp * y_quad);

  Vec psi0 = Vec::Zero(dim);
  psi0(0) = 1.0;
  const Vec after_first = open_pulse.apply(psi0, t_pulse);

  RamseyFullResult out;
  out.times = t_grid;
  out.p1.reserve(t_grid.size());
  out.leakage.reserve(t_grid.size());
  for (const double t : t_grid) {
    if (t < 0.0) throw std::invalid_argument("ramsey_numeric_full: t must be >= 0");
    Vec psi = after_first;
    // free stage under the diagonal Hamiltonian
    for (int n = 0; n < dim; ++n) psi(n) *= std::exp(Cplx(0.0, -hfree(n, n).real() * t));
    psi = close_pulse.apply(psi, t_pulse);
    const double p0 = std::norm(psi(0));
    const double p1 = std::norm(psi(1));
    out.p1.push_back(p1);
    out.leakage.push_back(std::max(0.0, 1.0 - p0 - p1));
  }
  return out;
}

RamseyFullResult ramsey_numeric_full(const ModelParams& p, const SignalSpec& signal,
                                     const std::vector<double>& t_grid, double pulse_amp) {
  return ramsey_numeric_full(effective_params(p), signal, t_grid, pulse_amp, p.dim);
}

double delta_p(const EffectiveParams& eff, double delta_k, double t) {
  if (t < 0.0) throw std::invalid_argument("delta_p: t must be >= 0");
  if (eff.x_zpf <= 0.0) throw std::invalid_argument("delta_p: x_zpf must be set");
  return 0.5 * std::exp(-0.5 * eff.big_gamma * t) * eff.x_zpf * eff.x_zpf *
         std::exp(2.0 * eff.r) * delta_k * t / consts::hbar;
}

double snr(const EffectiveParams& eff, double delta_k, double t, const ReadoutSpec& readout) {
  readout.validate();
  return delta_p(eff, delta_k, t) / readout.sigma_p(t);
}

double bias_time(double omega, double t_max) {
  if (omega <= 0.0 || t_max <= 0.0)
    throw std::invalid_argument("bias_time: omega and t_max must be > 0");
  const double half_period = consts::pi / (2.0 * omega);
  long m = long(std::floor(t_max / half_period));
  if (m < 1) return half_period;  // no odd multiple fits; use the first
  if (m % 2 == 0) m -= 1;
  return double(m) * half_period;
}

SpringSensitivity sensitivity_spring(const EffectiveParams& eff) {
  if (eff.x_zpf <= 0.0) throw std::invalid_argument("sensitivity_spring: x_zpf must be set");
  if (eff.gamma0 <= 0.0) throw std::invalid_argument("sensitivity_spring: gamma0 must be > 0");
  const double x2 = eff.x_zpf * eff.x_zpf;
  const double c2r = std::cosh(2.0 * eff.r);
  SpringSensitivity s;
  s.t_opt = 1.0 / (eff.gamma0 * c2r);
  s.delta_k_min =
      consts::hbar * std::sqrt(eff.gamma0 * c2r * std::exp(1.0)) / (x2 * std::exp(2.0 * eff.r));
  s.approx = consts::hbar * std::sqrt(eff.gamma0 * std::exp(1.0)) / (x2 * std::exp(eff.r));
  s.baseline = consts::hbar * std::sqrt(eff.gamma0 * std::exp(1.0)) / x2;
  s.ratio = s.delta_k_min / s.baseline;
  s.ratio_approx = std::exp(-eff.r);
  return s;
}

double sensitivity_spring_cramer_rao(const EffectiveParams& eff, double total_time) {
  if (total_time <= 0.0)
    throw std::invalid_argument("sensitivity_spring_cramer_rao: T must be > 0");
  if (eff.x_zpf <= 0.0 || eff.gamma0 <= 0.0)
    throw std::invalid_argument("sensitivity_spring_cramer_rao: need x_zpf and gamma0");
  const double x2e = eff.x_zpf * eff.x_zpf * std::exp(2.0 * eff.r);
  const double gamma = eff.big_gamma;

  // Measuring the level-1 projector yields outcomes {0, 1} with
  // P1 = (1 - Re c)/2; at the bias point Re c = 0, so the per-shot variance is
  // 1/4 and the Cramer-Rao error over N = T/t shots divided by the slope
  // |d<O>/dk| = t x0^2 e^{2r} e^{-Gamma t/2} / (2 hbar) gives delta_k(t).
  auto delta_k_of_t = [&](double t) {
    const double err = 0.5 / std::sqrt(total_time / t);
    const double slope = 0.5 * t * x2e * std::exp(-0.5 * gamma * t) / consts::hbar;
    return err / slope;
  };

  // golden-section minimum over the encoding time
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = 1e-3 / gamma, hi = 20.0 / gamma;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = delta_k_of_t(x1), f2 = delta_k_of_t(x2);
  for (int it = 0; it < 400; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = delta_k_of_t(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = delta_k_of_t(x2);
    }
  }
  return delta_k_of_t(0.5 * (lo + hi));
}

double rabi_force_probability(const EffectiveParams& eff, double force, double t) {
  if (t < 0.0) throw std::invalid_argument("rabi_force_probability: t must be >= 0");
  const SignalSpec s = SignalSpec::force(force, eff);
  if (s.omega_r == 0.0) return 0.0;
  const double ratio = s.omega_f / s.omega_r;
  const double sn = std::sin(0.5 * s.omega_r * t);
  return ratio * ratio * sn * sn;
}

ForceSensitivity sensitivity_force(const EffectiveParams& eff, const SignalSpec& signal,
                                   ForceDecoherenceMode mode) {
  if (signal.kind != SignalKind::StaticForce)
    throw std::invalid_argument("sensitivity_force: expects a static-force signal");
  if (signal.omega_f <= 0.0)
    throw std::invalid_argument("sensitivity_force: omega_f must be > 0");
  if (eff.x_zpf <= 0.0 || eff.gamma0 <= 0.0)
    throw std::invalid_argument("sensitivity_force: need x_zpf and gamma0");
  const double pref = std::pow(signal.omega_r / signal.omega_f, 3);
  const double er = std::exp(eff.r);
  ForceSensitivity out;
  if (mode == ForceDecoherenceMode::DrivenBath) {
    out.t_opt = 1.0 / (eff.gamma0 * std::cosh(2.0 * eff.r));
    out.delta_f_min = pref * consts::hbar *
                      std::sqrt(std::exp(1.0) * eff.gamma0 * std::cosh(2.0 * eff.r)) /
                      (2.0 * eff.x_zpf * er);
    out.approx = pref * consts::hbar * std::sqrt(std::exp(1.0) * eff.gamma0) / (2.0 * eff.x_zpf);
  } else {
    out.t_opt = 1.0 / eff.gamma0;
    out.delta_f_min =
        pref * consts::hbar * std::sqrt(std::exp(1.0) * eff.gamma0) / (2.0 * eff.x_zpf * er);
    out.approx = out.delta_f_min;
  }
  return out;
}

}  // namespace sfq
