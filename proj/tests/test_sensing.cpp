// Copyright 2026 the sfqsim authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sfq/sensing.hpp"

#include <cmath>
#include <random>

using namespace sfq;

namespace {
constexpr double kPi = consts::pi;

EffectiveParams desk_eff(double r, double kerr, double gamma0, double x_zpf = 3.74e-12) {
  return effective_params_from_r(r, kerr, gamma0, 1.0, kPi, x_zpf);
}

// independent 2x2 Schrodinger integration of H = omega_b sz/2 + omega_f sx/2
double rabi_oracle(double omega_b, double omega_f, double t) {
  Eigen::Matrix2cd h;
  h << -0.5 * omega_b, 0.5 * omega_f, 0.5 * omega_f, 0.5 * omega_b;
  Eigen::Vector2cd psi(1.0, 0.0);
  const long steps = 40000;
  const double dt = t / double(steps);
  const Cplx mi(0.0, -1.0);
  for (long s = 0; s < steps; ++s) {
    const Eigen::Vector2cd k1 = mi * (h * psi);
    const Eigen::Vector2cd k2 = mi * (h * (psi + 0.5 * dt * k1));
    const Eigen::Vector2cd k3 = mi * (h * (psi + 0.5 * dt * k2));
    const Eigen::Vector2cd k4 = mi * (h * (psi + dt * k3));
    psi += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return std::norm(psi(1));
}
}  // namespace

TEST_CASE("signal projection factors") {
  SUBCASE("spring at r = 0 is the bare dispersive shift") {
    const EffectiveParams e = desk_eff(0.0, 1.0, 1.0);
    const double k = 2e-10;
    const ProjectedSignal p = project_signal(SignalKind::SpringConstant, e, k);
    CHECK(p.omega == doctest::Approx(k * e.x_zpf * e.x_zpf / consts::hbar).epsilon(1e-14));
    // diag(1, 3) structure once the discarded identity 2I is restored
    CHECK((p.op(0, 0) + p.omega).real() == doctest::Approx(0.5 * p.omega).epsilon(1e-12));
    CHECK((p.op(1, 1) + p.omega).real() == doctest::Approx(1.5 * p.omega).epsilon(1e-12));
    CHECK(std::abs(p.op(0, 1)) == 0.0);
  }
  SUBCASE("spring at r = 1.5 gains e^{2r} = 20.0855") {
    const EffectiveParams e0 = desk_eff(0.0, 1.0, 1.0);
    const EffectiveParams e = desk_eff(1.5, 1.0, 1.0);
    const double k = 2e-10;
    const double gain = project_signal(SignalKind::SpringConstant, e, k).omega /
                        project_signal(SignalKind::SpringConstant, e0, k).omega;
    CHECK(gain == doctest::Approx(20.085536923187668).epsilon(1e-12));
  }
  SUBCASE("force projects onto sigma_x with e^{r}") {
    const EffectiveParams e = desk_eff(1.0, 1.0, 1.0);
    const double f = 1e-18;
    const ProjectedSignal p = project_signal(SignalKind::StaticForce, e, f);
    CHECK(p.omega ==
          doctest::Approx(2.0 * e.x_zpf * std::exp(1.0) * f / consts::hbar).epsilon(1e-14));
    CHECK(p.op(0, 1).real() == doctest::Approx(0.5 * p.omega).epsilon(1e-12));
    CHECK(std::abs(p.op(0, 0)) == 0.0);
  }
}

TEST_CASE("ramsey closed form: endpoints and baseline reduction") {
  const EffectiveParams e = desk_eff(1.0, 1.0, 0.4);
  const QubitParams q = QubitParams::from_effective(e, 30.0);
  SUBCASE("t = 0 returns the ground state, pure") {
    const RamseyState s = ramsey_analytic(q, 2.0, 0.0);
    CHECK(s.p1 == doctest::Approx(0.0).epsilon(1e-15));
    CHECK((s.rho * s.rho).trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(s.rho.trace() - Cplx(1.0, 0.0)) < 1e-14);
  }
  SUBCASE("full fringe at (omega) t = pi without decay") {
    QubitParams q0 = q;
    q0.gamma0 = 0.0;
    q0.big_gamma = 0.0;
    const double omega = q0.omega_q + 2.0;
    const RamseyState s = ramsey_analytic(q0, 2.0, kPi / omega);
    CHECK(s.p1 == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("r = 0 reduces to the bare-qubit fringe with gamma0") {
    const EffectiveParams e0 = desk_eff(0.0, 1.0, 0.4);
    const QubitParams q0 = QubitParams::from_effective(e0, 30.0);
    const double t = 1.3;
    const RamseyState s = ramsey_analytic(q0, 2.0, t);
    const double expect = 0.5 - 0.5 * std::exp(-0.5 * 0.4 * t) * std::cos(32.0 * t);
    CHECK(s.p1 == doctest::Approx(expect).epsilon(1e-12));
    // kappa = 1: the off-diagonal keeps the full (1 - |c|^2) term
    CHECK(q0.kappa == 1.0);
  }
}

TEST_CASE("qubit master equation integration matches the closed form") {
  std::vector<double> t_grid;
  for (double r : {0.0, 0.5, 1.0, 1.5}) {
    const EffectiveParams e = desk_eff(r, 1.0, 1.0);
    const QubitParams q = QubitParams::from_effective(e, 40.0);
    const double omega_v = 2.5;
    t_grid.clear();
    const double t_max = 5.0 / q.big_gamma;
    for (int i = 1; i <= 20; ++i) t_grid.push_back(t_max * i / 20.0);
    const QubitRamseyResult num = ramsey_numeric_qubit(q, omega_v, t_grid);
    for (size_t i = 0; i < t_grid.size(); ++i) {
      const RamseyState ana = ramsey_analytic(q, omega_v, t_grid[i]);
      CAPTURE(r);
      CAPTURE(t_grid[i]);
      CHECK(std::abs(num.p1[i] - ana.p1) < 1e-6);
    }
  }
}

TEST_CASE("cross terms perturb the readout at order gamma0 |M| / omega") {
  const EffectiveParams e = desk_eff(1.2, 1.0, 1.0);
  const QubitParams q = QubitParams::from_effective(e, 25.0);
  const std::vector<double> t_grid{0.4, 0.8, 1.6};
  const QubitRamseyResult with = ramsey_numeric_qubit(q, 1.5, t_grid, true);
  const QubitRamseyResult without = ramsey_numeric_qubit(q, 1.5, t_grid, false);
  const double scale = q.gamma0 * std::abs(q.m_sq) / (q.omega_q + 1.5);
  bool any_difference = false;
  for (size_t i = 0; i < t_grid.size(); ++i) {
    const double diff = std::abs(with.p1[i] - without.p1[i]);
    CHECK(diff < 3.0 * scale);
    any_difference = any_difference || diff > 1e-8;
    // the cross-free route carries the kappa (1 - |c|^2) coherence verbatim
    const RamseyState ana = ramsey_analytic(q, 1.5, t_grid[i]);
    CHECK(std::abs(without.states[i](0, 1) - ana.rho(0, 1)) < 1e-6);
  }
  CHECK(any_difference);
}

TEST_CASE("full-space Ramsey tracks the ideal fringe with suppressed leakage") {
  // coherent leakage study at r = 1.5: alpha = 303 K shields the qubit
  const double r = 1.5;
  const EffectiveParams e = desk_eff(r, 1.0, 0.0);
  const double pulse_amp = e.alpha / 20.0;
  const double omega_v = 0.02 * pulse_amp;
  const SignalSpec sig = SignalSpec::spring_from_shift(omega_v, e);
  std::vector<double> t_grid;
  const double t_max = 1.2 * 2.0 * kPi / omega_v;
  for (int i = 0; i <= 24; ++i) t_grid.push_back(t_max * i / 24.0);
  const RamseyFullResult full = ramsey_numeric_full(e, sig, t_grid, pulse_amp, 16);
  QubitParams q = QubitParams::from_effective(e, 0.0);
  q.gamma0 = 0.0;
  q.big_gamma = 0.0;
  for (size_t i = 0; i < t_grid.size(); ++i) {
    const double ideal = ramsey_analytic(q, omega_v, t_grid[i]).p1;
    CAPTURE(t_grid[i]);
    CHECK(std::abs(full.p1[i] - ideal) < 0.02);
    CHECK(full.leakage[i] < 1e-2);
  }
}

TEST_CASE("weak-pulse limit approaches the instantaneous-pulse protocol") {
  // omega_v = 0: the sequence should return the qubit to |0>; residual p1
  // comes from pulse leakage and shrinks with the drive
  const EffectiveParams e = desk_eff(1.5, 1.0, 0.0);
  const SignalSpec sig = SignalSpec::spring_from_shift(0.0, e);
  const std::vector<double> t_grid{0.5, 1.5};
  double prev = 1.0;
  for (double amp : {e.alpha / 10.0, e.alpha / 50.0, e.alpha / 250.0}) {
    const RamseyFullResult res = ramsey_numeric_full(e, sig, t_grid, amp, 16);
    const double worst = std::max(res.p1[0], res.p1[1]);
    CHECK(worst < prev + 1e-12);
    prev = worst;
  }
  CHECK(prev < 1e-4);
}

TEST_CASE("fock-limit full-space Ramsey leaks when the pulse outruns the Kerr gap") {
  const EffectiveParams e = desk_eff(0.0, 0.3, 0.0);  // alpha_0 = 0.6
  const double pulse_amp = 1.0;
  const SignalSpec sig = SignalSpec::spring_from_shift(0.5, e);
  std::vector<double> t_grid;
  for (int i = 0; i <= 40; ++i) t_grid.push_back(8.0 * i / 40.0);
  const RamseyFullResult res = ramsey_numeric_full(e, sig, t_grid, pulse_amp, 16);
  double mean = 0.0, lo = 1.0, hi = 0.0;
  for (size_t i = t_grid.size() / 2; i < t_grid.size(); ++i) {
    mean += res.p1[i];
    lo = std::min(lo, res.p1[i]);
    hi = std::max(hi, res.p1[i]);
  }
  mean /= double(t_grid.size() - t_grid.size() / 2);
  CHECK(mean < 0.5);         // plateau below the ideal bias level
  CHECK(hi - lo > 0.02);     // visible interference oscillations
  double max_leak = 0.0;
  for (double l : res.leakage) max_leak = std::max(max_leak, l);
  CHECK(max_leak > 0.05);
}

TEST_CASE("probability shift at the bias point") {
  const EffectiveParams e = desk_eff(1.0, 1.0, 0.7);
  CHECK(delta_p(e, 3e-10, 0.0) == 0.0);
  // linear in delta_k and t at fixed envelope
  const double base = delta_p(e, 1e-10, 0.4);
  CHECK(delta_p(e, 3e-10, 0.4) == doctest::Approx(3.0 * base).epsilon(1e-12));

  // finite-difference oracle through the closed-form fringe
  const QubitParams q = QubitParams::from_effective(e, 0.0);
  const double omega_v0 = 800.0;
  const double t = bias_time(omega_v0, 1.1 / e.big_gamma);
  const double delta_k = 1e-13;
  const double d_omega = SignalSpec::spring(delta_k, e).omega_v;
  REQUIRE(d_omega * t < 0.05);
  const double fd =
      std::abs(ramsey_analytic(q, omega_v0 + d_omega, t).p1 - ramsey_analytic(q, omega_v0, t).p1);
  CHECK(delta_p(e, delta_k, t) == doctest::Approx(fd).epsilon(0.01));
}

TEST_CASE("snr composition and scaling") {
  const EffectiveParams e = desk_eff(0.8, 1.0, 0.5);
  const double t = 0.9, delta_k = 4e-11;
  SUBCASE("single-shot reduction at C = 1, t_m = 0, T = t") {
    ReadoutSpec ro{1.0, 0.0, t};
    CHECK(snr(e, delta_k, t, ro) == doctest::Approx(2.0 * delta_p(e, delta_k, t)).epsilon(1e-12));
  }
  SUBCASE("doubling the total time gains sqrt(2)") {
    ReadoutSpec r1{1.0, 0.0, 10.0};
    ReadoutSpec r2{1.0, 0.0, 20.0};
    CHECK(snr(e, delta_k, t, r2) / snr(e, delta_k, t, r1) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  }
  SUBCASE("full composition against independently assembled pieces") {
    ReadoutSpec ro{0.7, 0.3, 40.0};
    const double shots = 40.0 / (t + 0.3);
    const double sigma = 1.0 / (2.0 * 0.7 * std::sqrt(shots));
    CHECK(snr(e, delta_k, t, ro) ==
          doctest::Approx(delta_p(e, delta_k, t) / sigma).epsilon(1e-12));
  }
  SUBCASE("readout validation") {
    const ReadoutSpec bad{1.2, 0.0, 1.0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    const ReadoutSpec tight{1.0, 0.0, 0.5};
    CHECK_THROWS_AS((void)snr(e, delta_k, 0.9, tight), std::invalid_argument);  // < 1 shot
  }
}

TEST_CASE("bias time picks the largest odd fringe under t_opt") {
  const double omega = 100.0;
  const double half = kPi / (2.0 * omega);
  CHECK(bias_time(omega, 1.0) == doctest::Approx(63.0 * half).epsilon(1e-12));
  CHECK(bias_time(omega, half * 0.5) == doctest::Approx(half).epsilon(1e-12));
}

TEST_CASE("spring sensitivity: baseline, frozen ratio, optimum") {
  SUBCASE("r = 0 equals the baseline") {
    const SpringSensitivity s = sensitivity_spring(desk_eff(0.0, 1.0, 0.5));
    CHECK(s.delta_k_min == doctest::Approx(s.baseline).epsilon(1e-14));
    CHECK(s.ratio == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.t_opt == doctest::Approx(2.0).epsilon(1e-14));
  }
  SUBCASE("r = 1.5 frozen values") {
    const SpringSensitivity s = sensitivity_spring(desk_eff(1.5, 1.0, 0.5));
    // oracle: sqrt(cosh 3) e^{-3} = 0.15797227; approx branch e^{-1.5}
    CHECK(s.ratio == doctest::Approx(0.15797227315568802).epsilon(1e-12));
    CHECK(std::abs(s.ratio - 0.15797) < 5e-6);
    CHECK(s.ratio_approx == doctest::Approx(0.22313016014842982).epsilon(1e-12));
    CHECK(s.approx / s.baseline == doctest::Approx(s.ratio_approx).epsilon(1e-12));
    // quoted quotient 4.71e-10 / 2.11e-9 sits within 1% of e^{-1.5}
    CHECK(std::abs(s.ratio_approx / (4.71e-10 / 2.11e-9) - 1.0) < 0.01);
  }
  SUBCASE("ratio is strictly decreasing in r") {
    double prev = 2.0;
    for (int i = 0; i <= 60; ++i) {
      const double r = 2.5 * i / 60.0;
      const double ratio = sensitivity_spring(desk_eff(r, 1.0, 0.5)).ratio;
      CHECK(ratio < prev);
      prev = ratio;
    }
  }
}

TEST_CASE("error-propagation route equals the slope route") {
  for (double r : {0.0, 0.7, 1.5}) {
    const EffectiveParams e = desk_eff(r, 1.0, 0.8);
    const SpringSensitivity slope = sensitivity_spring(e);
    const double cr = sensitivity_spring_cramer_rao(e, 1.0);
    CHECK(std::abs(cr / slope.delta_k_min - 1.0) < 1e-12);
    // sqrt(T) scaling: T = 4 halves the minimum detectable signal
    CHECK(sensitivity_spring_cramer_rao(e, 4.0) == doctest::Approx(0.5 * cr).epsilon(1e-10));
  }
}

TEST_CASE("argmin invariance: the symbolic optimum minimizes the delta_k curve") {
  const EffectiveParams e = desk_eff(1.0, 1.0, 0.6);
  const SpringSensitivity s = sensitivity_spring(e);
  auto curve = [&](double t) {
    return consts::hbar * std::exp(0.5 * e.big_gamma * t) /
           (std::sqrt(t) * e.x_zpf * e.x_zpf * std::exp(2.0 * e.r));
  };
  const int n = 4001;
  double best_t = 0.0, best = 1e300;
  for (int i = 1; i <= n; ++i) {
    const double t = 3.0 * s.t_opt * i / n;
    if (curve(t) < best) {
      best = curve(t);
      best_t = t;
    }
  }
  CHECK(std::abs(best_t - s.t_opt) <= 3.0 * s.t_opt / n + 1e-15);
  CHECK(best == doctest::Approx(s.delta_k_min).epsilon(1e-6));
}

TEST_CASE("rabi force probability against unitary integration") {
  const EffectiveParams e = desk_eff(1.2, 0.3, 0.0, 3.74e-12);
  const double f = 2.0e-19 * consts::hbar / (2.0 * e.x_zpf * std::exp(e.r)) * 1e19;
  const SignalSpec sig = SignalSpec::force(f, e);
  for (double t : {0.3, 1.1, 2.7}) {
    const double p = rabi_force_probability(e, f, t);
    const double oracle = rabi_oracle(e.omega_b, sig.omega_f, t);
    CHECK(std::abs(p - oracle) < 1e-8);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
  }
  CHECK(rabi_force_probability(e, 0.0, 1.0) == 0.0);
  // omega_b -> 0 gives full-contrast Rabi
  EffectiveParams e0 = e;
  e0.omega_b = 0.0;
  const SignalSpec s0 = SignalSpec::force(f, e0);
  CHECK(rabi_force_probability(e0, f, kPi / s0.omega_f) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("force sensitivity branches") {
  SUBCASE("r = 0: both decoherence modes coincide") {
    const EffectiveParams e = desk_eff(0.0, 1.0, 0.5);
    const SignalSpec sig = SignalSpec::force(1e-18, e);
    const ForceSensitivity a = sensitivity_force(e, sig, ForceDecoherenceMode::DrivenBath);
    const ForceSensitivity b =
        sensitivity_force(e, sig, ForceDecoherenceMode::DissipativeSqueezing);
    CHECK(a.delta_f_min == doctest::Approx(b.delta_f_min).epsilon(1e-14));
    CHECK(a.t_opt == doctest::Approx(b.t_opt).epsilon(1e-14));
  }
  SUBCASE("r = 1.5: mode ratio is sqrt(cosh 2r)") {
    const EffectiveParams e = desk_eff(1.5, 1.0, 0.5);
    const SignalSpec sig = SignalSpec::force(1e-18, e);
    const double a = sensitivity_force(e, sig, ForceDecoherenceMode::DrivenBath).delta_f_min;
    const double b =
        sensitivity_force(e, sig, ForceDecoherenceMode::DissipativeSqueezing).delta_f_min;
    // oracle: sqrt(cosh 3) = 3.1729579253
    CHECK(a / b == doctest::Approx(3.1729579253084598).epsilon(1e-12));
  }
  SUBCASE("omega_f >> omega_b sends the geometric prefactor to 1") {
    // omega_b = 1 in desk units; pick forces giving omega_f ~ 0.3 and ~100
    const EffectiveParams e = desk_eff(0.5, 1.0, 0.5);
    const double unit_force = consts::hbar / (2.0 * e.x_zpf * std::exp(e.r));
    const double f_small = 0.3 * unit_force, f_large = 100.0 * unit_force;
    const ForceSensitivity small =
        sensitivity_force(e, SignalSpec::force(f_small, e), ForceDecoherenceMode::DrivenBath);
    const ForceSensitivity large =
        sensitivity_force(e, SignalSpec::force(f_large, e), ForceDecoherenceMode::DrivenBath);
    const double bare = consts::hbar *
                        std::sqrt(std::exp(1.0) * e.gamma0 * std::cosh(2.0 * e.r)) /
                        (2.0 * e.x_zpf * std::exp(e.r));
    CHECK(large.delta_f_min == doctest::Approx(bare).epsilon(1e-6));
    CHECK(small.delta_f_min > 10.0 * large.delta_f_min);
  }
}

TEST_CASE("analytic fringe stays inside [0, 1] for random parameters") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> rdist(0.0, 2.0), gdist(0.0, 3.0), wdist(0.0, 300.0),
      tdist(0.0, 10.0);
  for (int i = 0; i < 300; ++i) {
    const EffectiveParams e = desk_eff(rdist(rng), 1.0, gdist(rng));
    const QubitParams q = QubitParams::from_effective(e, wdist(rng));
    const double p1 = ramsey_analytic(q, wdist(rng), tdist(rng)).p1;
    CHECK(p1 >= -1e-9);
    CHECK(p1 <= 1.0 + 1e-9);
  }
}

TEST_CASE("qubit parameter consistency validation") {
  QubitParams q;
  q.omega_q = 10.0;
  q.gamma0 = 1.0;
  q.big_gamma = 3.0;
  q.kappa = 0.9;  // inconsistent with big_gamma/gamma0
  CHECK_THROWS_AS(q.validate(), std::invalid_argument);
}
