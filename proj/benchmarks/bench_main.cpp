// Copyright 2026 The glant Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "glant/farfield.hpp"
#include "glant/fdtd.hpp"
#include "glant/materials.hpp"
#include "glant/ports.hpp"

namespace {

using namespace glant;

// Leapfrog throughput on an n^3 vacuum box with a 10-cell CPML.
void BM_Step(benchmark::State &state) {
  const int n = static_cast<int>(state.range(0));
  const VoxelGrid g({n, n, n}, 1e-3, 10, {n / 2, n / 2, n / 2});
  SimConfig cfg = SimConfig::make(1e-3);
  cfg.threads = static_cast<int>(state.range(1));
  const UpdateCoeffs c = init_coeffs(g, cfg);
  FieldState f(g, c);
  f.e[2][g.index(n / 2, n / 2, n / 2)] = 1.0;
  for (auto _ : state) {
    step(f, c, {});
    benchmark::DoNotOptimize(f.e[2].data());
  }
  state.counters["cells/s"] = benchmark::Counter(static_cast<double>(g.dims().cells()) * state.iterations(),
                                                 benchmark::Counter::kIsRate);
}
BENCHMARK(BM_Step)->Args({64, 1})->Args({96, 1})->Args({96, 4})->Unit(benchmark::kMillisecond);

void BM_Kubo(benchmark::State &state) {
  GrapheneSpec g;
  double f = 1e9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kubo_intraband(g, f));
    f += 1e6;
  }
}
BENCHMARK(BM_Kubo);

// Far-field transform of a box recorded for a few hundred steps.
void BM_NtffTransform(benchmark::State &state) {
  const VoxelGrid g({40, 40, 40}, 2e-3, 8, {20, 20, 20});
  SimConfig cfg = SimConfig::make(2e-3);
  const SourceWaveform w = SourceWaveform::with_min_delay(3e9, 2e9);
  Sources src;
  src.currents.push_back({Axis::kZ, 20, 20, 20, [w](double t) { return gaussian_modulated_pulse(t, w); }});
  Simulation sim(g, cfg, src);
  NtffSurface box = NtffSurface::inside_pml(g, 2, {3e9}, cfg.dt_s);
  for (int n = 0; n < 300; ++n) {
    sim.step();
    box.record(sim.fields(), sim.coeffs());
  }
  const double step = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ntff_transform(box, 3e9, step, step));
}
BENCHMARK(BM_NtffTransform)->Arg(5)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
