// Copyright 2026 the sfqsim authors
// SPDX-License-Identifier: Apache-2.0

#include "sfq/fock.hpp"
#include "sfq/lindblad.hpp"
#include "sfq/model.hpp"

#include <benchmark/benchmark.h>

namespace {

sfq::Generator make_generator(int dim) {
  sfq::EffectiveParams eff =
      sfq::effective_params_from_r(1.5, 1.0, 0.1, 100.0, sfq::consts::pi, 1e-12);
  return sfq::effective_generator(eff, dim);
}

void BM_lindblad_rhs(benchmark::State& state) {
  const int dim = int(state.range(0));
  const sfq::Generator g = make_generator(dim);
  sfq::Mat rho = sfq::Mat::Zero(dim, dim);
  rho(0, 0) = 0.6;
  rho(1, 1) = 0.4;
  rho(0, 1) = rho(1, 0) = 0.2;
  for (auto _ : state) {
    sfq::Mat out = sfq::lindblad_rhs(g, rho, 0.0);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_lindblad_rhs)->Arg(16)->Arg(32)->Arg(64)->Arg(128);

void BM_evolve_decay(benchmark::State& state) {
  const int dim = int(state.range(0));
  const sfq::Generator g = make_generator(dim);
  sfq::Mat rho = sfq::Mat::Zero(dim, dim);
  rho(1, 1) = 1.0;
  const std::vector<double> grid{0.0, 0.5, 1.0};
  sfq::StepControl ctl;
  ctl.tol = 1e-6;
  for (auto _ : state) {
    sfq::Trajectory t = sfq::evolve(g, rho, grid, ctl);
    benchmark::DoNotOptimize(t.states.back().data());
  }
}
BENCHMARK(BM_evolve_decay)->Arg(16)->Arg(32)->Arg(64);

void BM_squeeze_operator(benchmark::State& state) {
  const int dim = int(state.range(0));
  for (auto _ : state) {
    sfq::Mat s = sfq::squeeze_operator(dim, 1.0, sfq::consts::pi);
    benchmark::DoNotOptimize(s.data());
  }
}
BENCHMARK(BM_squeeze_operator)->Arg(128)->Arg(256)->Arg(512);

}  // namespace
