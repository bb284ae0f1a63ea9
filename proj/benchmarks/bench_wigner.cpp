// Copyright 2026 the sfqsim authors
// SPDX-License-Identifier: Apache-2.0

#include "sfq/fock.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_wigner_field(benchmark::State& state) {
  const int dim = int(state.range(0));
  const double r = 1.0;
  const sfq::QuantumState st = sfq::squeezed_fock(std::max(dim, sfq::recommended_dim(r)), 0, r,
                                                  sfq::consts::pi);
  const sfq::PhaseSpaceGrid grid{-6.0, 6.0, -3.0, 3.0, 61, 41};
  for (auto _ : state) {
    sfq::RealMat w = sfq::wigner(st, grid);
    benchmark::DoNotOptimize(w.data());
  }
}
BENCHMARK(BM_wigner_field)->Arg(64)->Arg(160)->Arg(320);

void BM_qfunc_field(benchmark::State& state) {
  const int dim = int(state.range(0));
  const sfq::QuantumState st = sfq::QuantumState::fock(dim, 1);
  const sfq::PhaseSpaceGrid grid{-5.0, 5.0, -5.0, 5.0, 61, 61};
  for (auto _ : state) {
    sfq::RealMat q = sfq::qfunc(st, grid);
    benchmark::DoNotOptimize(q.data());
  }
}
BENCHMARK(BM_qfunc_field)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
