// Copyright 2026 the sfqsim authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sfq/fock.hpp"
#include "sfq/lindblad.hpp"

#include <cmath>
#include <random>

using namespace sfq;

namespace {
constexpr double kPi = consts::pi;

Mat random_hermitian_density(int dim, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  Mat raw(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) raw(i, j) = Cplx(g(rng), g(rng));
  Mat rho = raw * raw.adjoint();
  rho /= rho.trace().real();
  return rho;
}

EffectiveParams desk_eff(double r, double kerr, double gamma0) {
  return effective_params_from_r(r, kerr, gamma0, 1.0, kPi, 1e-12);
}
}  // namespace

TEST_CASE("dissipator on |1><1| with decay pair (a, a†)") {
  const int dim = 4;
  const auto mode = fock_mode_ops(dim);
  Mat rho = Mat::Zero(dim, dim);
  rho(1, 1) = 1.0;
  const double gamma = 0.8;
  const Mat out = dissipator_apply({Cplx(gamma, 0.0), mode.lower, mode.raise}, rho);
  CHECK(out(0, 0).real() == doctest::Approx(gamma).epsilon(1e-14));
  CHECK(out(1, 1).real() == doctest::Approx(-gamma).epsilon(1e-14));
  CHECK(std::abs(out.trace()) < 1e-15);
}

TEST_CASE("dissipator with A = B = a on the vacuum") {
  // the sandwich term vanishes (a|0> = 0); what survives is the
  // anticommutator tail -rho aa/2 = -sqrt(2)/2 |0><2|, which is trace-free
  const int dim = 4;
  const auto mode = fock_mode_ops(dim);
  Mat rho = Mat::Zero(dim, dim);
  rho(0, 0) = 1.0;
  const Mat out = dissipator_apply({Cplx(1.0, 0.0), mode.lower, mode.lower}, rho);
  CHECK(std::abs(out(0, 2) + std::sqrt(2.0) / 2.0) < 1e-14);
  CHECK(std::abs(out.trace()) < 1e-15);
  Mat rest = out;
  rest(0, 2) = 0.0;
  CHECK(rest.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("dissipator rejects dimension mismatch") {
  const auto m3 = fock_mode_ops(3);
  const auto m4 = fock_mode_ops(4);
  Mat rho = Mat::Zero(3, 3);
  rho(0, 0) = 1.0;
  CHECK_THROWS_AS(dissipator_apply({Cplx(1.0, 0.0), m4.lower, m3.raise}, rho),
                  std::invalid_argument);
}

TEST_CASE("squeezed bath rates") {
  const auto mode = fock_mode_ops(8);
  SUBCASE("r = 0 leaves a single decay channel") {
    const auto terms = squeezed_bath_terms(desk_eff(0.0, 0.0, 0.7), mode);
    REQUIRE(terms.size() == 4);
    CHECK(terms[0].rate.real() == doctest::Approx(0.7).epsilon(1e-15));
    for (int k = 1; k < 4; ++k) CHECK(std::abs(terms[k].rate) == 0.0);
  }
  SUBCASE("r = 1.5, theta = pi: cross rates from cosh sinh") {
    const auto terms = squeezed_bath_terms(desk_eff(1.5, 0.0, 1.0), mode);
    // oracle: cosh(1.5) sinh(1.5) = 5.0089374637
    CHECK(terms[2].rate.real() == doctest::Approx(5.0089374637049509).epsilon(1e-12));
    CHECK(terms[3].rate.real() == doctest::Approx(5.0089374637049509).epsilon(1e-12));
    CHECK(terms[0].rate.real() == doctest::Approx(5.5338309978888829).epsilon(1e-12));
    CHECK(terms[1].rate.real() == doctest::Approx(4.5338309978888829).epsilon(1e-12));
  }
}

TEST_CASE("assembled generator is trace-free and Hermiticity-preserving") {
  const int dim = 12;
  const EffectiveParams eff = desk_eff(1.2, 0.05, 0.9);
  const Generator g = effective_generator(eff, dim);
  for (unsigned seed : {1u, 2u, 3u}) {
    const Mat rho = random_hermitian_density(dim, seed);
    const Mat rhs = lindblad_rhs(g, rho, 0.0);
    CHECK(std::abs(rhs.trace()) < 1e-12 * rho.cwiseAbs().maxCoeff() * dim);
    CHECK((rhs - rhs.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("compiled banded right-hand side agrees with the dense definition") {
  const int dim = 10;
  const EffectiveParams eff = desk_eff(0.8, 0.2, 0.5);
  Generator g = effective_generator(eff, dim);
  const Mat rho = random_hermitian_density(dim, 42);
  const Mat fast = lindblad_rhs(g, rho, 0.0);
  // dense reference assembled term by term
  Mat slow = Cplx(0.0, -1.0) * (g.h0 * rho - rho * g.h0);
  for (const auto& term : g.terms) slow += dissipator_apply(term, rho);
  CHECK((fast - slow).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("free decay of |1><1| follows exp(-gamma t)") {
  const int dim = 6;
  Generator g;
  g.h0 = Mat::Zero(dim, dim);
  const auto mode = fock_mode_ops(dim);
  const double gamma = 0.63;
  g.terms.push_back({Cplx(gamma, 0.0), mode.lower, mode.raise});
  Mat rho0 = Mat::Zero(dim, dim);
  rho0(1, 1) = 1.0;
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(0.3 * i);
  const Trajectory traj = evolve(g, rho0, grid, {});
  for (size_t i = 0; i < grid.size(); ++i)
    CHECK(traj.states[i](1, 1).real() ==
          doctest::Approx(std::exp(-gamma * grid[i])).epsilon(1e-6));
  CHECK(traj.max_trace_err() < 1e-10);
}

TEST_CASE("squeezed bath drives the vacuum to the squeezed thermal point") {
  // no Kerr confinement: <b†b> relaxes to N and <bb> to the two-quantum
  // correlation of the squeezed vacuum; the state stays pure
  const double r = 1.0;
  const int dim = 56;
  EffectiveParams eff = desk_eff(r, 0.0, 1.0);
  eff.omega_b = 0.0;
  const Generator g = effective_generator(eff, dim);
  Mat rho0 = Mat::Zero(dim, dim);
  rho0(0, 0) = 1.0;
  const std::vector<double> grid{0.0, 4.0, 8.0, 12.0};
  StepControl ctl;
  ctl.tol = 1e-7;
  const Trajectory traj = evolve(g, rho0, grid, ctl);
  const Mat& rho = traj.states.back();
  const auto mode = fock_mode_ops(dim);
  const double nb = (rho * mode.raise * mode.lower).trace().real();
  const Cplx bb = (rho * mode.lower * mode.lower).trace();
  CHECK(nb == doctest::Approx(eff.n_sq).epsilon(1e-4));
  // the a-frame vacuum seen from the squeezed mode carries <bb> = M*
  CHECK(bb.real() == doctest::Approx(std::conj(eff.m_sq).real()).epsilon(1e-4));
  CHECK((rho * rho).trace().real() == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(traj.max_trace_err() < 1e-8);
  CHECK(traj.min_eigenvalue() > -1e-8);
}

TEST_CASE("r = 0 reduction: squeezed-frame generator equals bare decay") {
  const int dim = 10;
  EffectiveParams eff = desk_eff(0.0, 0.4, 0.8);
  const Generator gs = effective_generator(eff, dim);

  Generator gd;
  gd.h0 = gs.h0;
  const auto mode = fock_mode_ops(dim);
  gd.terms.push_back({Cplx(0.8, 0.0), mode.lower, mode.raise});

  const Mat rho0 = random_hermitian_density(dim, 5);
  const std::vector<double> grid{0.0, 0.5, 1.0, 2.0};
  const Trajectory a = evolve(gs, rho0, grid, {});
  const Trajectory b = evolve(gd, rho0, grid, {});
  for (size_t i = 0; i < grid.size(); ++i)
    CHECK((a.states[i] - b.states[i]).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("resonant Rabi drive flops the squeezed qubit with little leakage") {
  // strong anharmonicity: P1(t) ~ sin^2(Omega_d t/2), population above level 1
  // stays small
  const double r = 1.5;
  const int dim = 12;
  EffectiveParams eff = desk_eff(r, 1.0, 0.0);  // alpha = 303 in Kerr units
  const double omega_d = eff.alpha / 20.0;
  Generator g = effective_generator(eff, dim);
  const auto mode = fock_mode_ops(dim);
  Mat drive = mode.lower + mode.raise;
  const double wb = eff.omega_b;
  g.drives.push_back(
      {std::move(drive), [omega_d, wb](double t) { return omega_d * std::cos(wb * t); }});

  Mat rho0 = Mat::Zero(dim, dim);
  rho0(0, 0) = 1.0;
  std::vector<double> grid;
  const double t_pi = kPi / omega_d;
  for (int i = 0; i <= 8; ++i) grid.push_back(t_pi * i / 8.0);
  StepControl ctl;
  ctl.tol = 1e-7;
  const Trajectory traj = evolve(g, rho0, grid, ctl);
  for (size_t i = 0; i < grid.size(); ++i) {
    const double expect = std::pow(std::sin(0.5 * omega_d * grid[i]), 2);
    CHECK(traj.states[i](1, 1).real() == doctest::Approx(expect).epsilon(0.02));
    double leak = 0.0;
    for (int n = 2; n < dim; ++n) leak += traj.states[i](n, n).real();
    CHECK(leak < 1e-2);
  }
}

TEST_CASE("step halving: converged trajectories are insensitive to the start") {
  const int dim = 8;
  const EffectiveParams eff = desk_eff(0.7, 0.3, 0.5);
  const Generator g = effective_generator(eff, dim);
  Mat rho0 = Mat::Zero(dim, dim);
  rho0(1, 1) = 1.0;
  const std::vector<double> grid{0.0, 1.0, 2.0};
  StepControl coarse;
  coarse.dt_init = 0.2;
  coarse.tol = 1e-8;
  StepControl fine;
  fine.dt_init = 0.05;
  fine.tol = 1e-8;
  const Trajectory a = evolve(g, rho0, grid, coarse);
  const Trajectory b = evolve(g, rho0, grid, fine);
  for (size_t i = 0; i < grid.size(); ++i)
    CHECK((a.states[i] - b.states[i]).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("evolve rejects bad inputs and reports nonconvergence") {
  const int dim = 4;
  Generator g;
  g.h0 = Mat::Zero(dim, dim);
  Mat rho0 = Mat::Zero(dim, dim);
  rho0(0, 0) = 1.0;
  CHECK_THROWS_AS(evolve(g, rho0, {0.0}, {}), std::invalid_argument);
  CHECK_THROWS_AS(evolve(g, rho0, {0.0, 0.0}, {}), std::invalid_argument);

  // an aggressively stiff generator with no refinement budget cannot converge
  Generator stiff;
  stiff.h0 = Mat::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) stiff.h0(n, n) = 1e6 * n * n;
  const auto mode = fock_mode_ops(dim);
  stiff.terms.push_back({Cplx(1.0, 0.0), mode.lower, mode.raise});
  Mat sup = Mat::Zero(dim, dim);
  sup(0, 0) = sup(3, 3) = 0.5;
  sup(0, 3) = sup(3, 0) = 0.5;
  StepControl ctl;
  ctl.dt_init = 1.0;
  ctl.max_refinements = 2;
  CHECK_THROWS_AS(evolve(stiff, sup, {0.0, 1.0}, ctl), ConvergenceError);
}

TEST_CASE("lab-frame evolution without the pump matches the rotating frame") {
  ModelParams m;
  m.omega_a = 9.0;
  m.omega_p = 8.0;
  m.kerr = 0.05;
  m.gamma0 = 0.2;
  m.drive_amp = 0.0;
  m.dim = 12;
  Mat rho0 = Mat::Zero(m.dim, m.dim);
  rho0(0, 0) = rho0(1, 1) = 0.5;
  rho0(0, 1) = rho0(1, 0) = 0.5;
  const std::vector<double> grid{0.0, 0.7, 1.4};
  const Trajectory lab = evolve_lab_frame(m, rho0, grid, {});
  const Trajectory rot = evolve(rot_frame_generator(m), rho0, grid, {});
  for (size_t i = 0; i < grid.size(); ++i)
    CHECK((lab.states[i] - rot.states[i]).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("custom observable controls the refinement metric") {
  const int dim = 6;
  const EffectiveParams eff = desk_eff(0.5, 0.2, 0.4);
  const Generator g = effective_generator(eff, dim);
  Mat rho0 = Mat::Zero(dim, dim);
  rho0(1, 1) = 1.0;
  StepControl ctl;
  ctl.tol = 1e-8;
  ctl.observable = [](const Mat& rho) { return rho(1, 1).real(); };
  const Trajectory traj = evolve(g, rho0, {0.0, 1.0, 2.0}, ctl);
  CHECK(traj.states.back()(1, 1).real() > 0.0);
  CHECK(traj.max_herm_err() < 1e-12);
}
