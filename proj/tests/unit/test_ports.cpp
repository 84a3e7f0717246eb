// Copyright 2026 The glant Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <complex>
#include <vector>

#include <gtest/gtest.h>

#include "glant/errors.hpp"
#include "glant/ports.hpp"

namespace glant {
namespace {

using cd = std::complex<double>;

TEST(Pulse, TurnOnAndSpectrum) {
  const SourceWaveform w = SourceWaveform::with_min_delay(5.5e9, 3.5e9);
  EXPECT_LE(std::abs(gaussian_modulated_pulse(0.0, w)), 1e-8);
  EXPECT_NO_THROW(w.validate());
  SourceWaveform early = w;
  early.delay_s *= 0.9;
  EXPECT_THROW(early.validate(), DomainError);

  const double dt = 1e-12;
  std::vector<double> x;
  for (double t = 0.0; t <= w.end_time(); t += dt) x.push_back(gaussian_modulated_pulse(t, w));
  const std::vector<double> f{0.0, 5.5e9, 2.0e9, 9.0e9};
  const auto X = direct_dft(x, dt, 0.0, f);
  const double peak = std::abs(X[1]);
  EXPECT_LE(std::abs(X[0]) / peak, 1e-6);  // zero-mean, nothing at DC
  EXPECT_NEAR(20.0 * std::log10(std::abs(X[2]) / peak), -20.0, 0.1);
  EXPECT_NEAR(20.0 * std::log10(std::abs(X[3]) / peak), -20.0, 0.1);
}

TEST(DirectDft, SingleToneAndShift) {
  const double dt = 1e-11, f = 1e9;
  std::vector<double> x(1000);
  for (std::size_t m = 0; m < x.size(); ++m) x[m] = std::cos(2.0 * phys::kPi * f * m * dt);
  const std::vector<double> fr{f};
  // 10 full periods: the sum is exactly N/2.
  EXPECT_NEAR(direct_dft(x, dt, 0.0, fr)[0].real(), 500.0, 1e-9);
  EXPECT_NEAR(direct_dft(x, dt, 0.0, fr)[0].imag(), 0.0, 1e-9);
  // Shifting t0 by a quarter period rotates the phasor by -90 degrees.
  const cd shifted = direct_dft(x, dt, 0.25e-9, fr)[0];
  EXPECT_NEAR(shifted.real(), 0.0, 1e-9);
  EXPECT_NEAR(shifted.imag(), -500.0, 1e-9);
}

PortSpectra synthetic(const std::vector<double> &f, auto s11_db_of) {
  PortSpectra s;
  s.freqs = f;
  for (double x : f) {
    const double mag = std::pow(10.0, s11_db_of(x) / 20.0);
    s.S11.push_back(mag);
    s.Z.push_back(50.0 * (1.0 + mag) / (1.0 - mag));
    s.V.push_back(s.Z.back());
    s.I.push_back(1.0);
    s.valid.push_back(true);
  }
  return s;
}

TEST(Extraction, ParabolicMinimumAndBandwidth) {
  const auto f = linspace_freqs(3.5e9, 7.5e9, 10e6);
  ASSERT_EQ(f.size(), 401u);
  // Quadratic dip centred off-grid at 5.503 GHz, -10 dB crossings at +-0.6 GHz.
  const auto s = synthetic(f, [](double x) {
    const double u = (x - 5.503e9) / 0.6e9;
    return -30.0 + 20.0 * u * u;
  });
  EXPECT_NEAR(resonant_frequency(s), 5.503e9, 1e3);
  EXPECT_NEAR(fractional_bandwidth(s), 1.2e9 / 5.503e9 * 100.0, 0.02);
  EXPECT_EQ(fractional_bandwidth(s, -40.0), 0.0);
}

TEST(Extraction, UnresolvedBandAndInvalidInput) {
  const auto f = linspace_freqs(5.0e9, 6.0e9, 10e6);
  const auto wide = synthetic(f, [](double) { return -20.0; });
  EXPECT_THROW(fractional_bandwidth(wide), ExtractionError);
  EXPECT_THROW(fractional_bandwidth(wide, 1.0), DomainError);

  PortRecord rec;
  rec.v = {1.0, 2.0};
  rec.i = {1.0};
  rec.dt = 1e-12;
  const std::vector<double> fr{1e9};
  EXPECT_THROW(port_spectra(rec, fr), ExtractionError);
  const std::vector<double> down{2e9, 1e9};
  rec.i = {1.0, 2.0};
  EXPECT_THROW(port_spectra(rec, down), ExtractionError);
  EXPECT_THROW(linspace_freqs(2e9, 1e9, 1e6), DomainError);
}

TEST(Extraction, ZeroCurrentMarksInvalid) {
  PortRecord rec;
  rec.v = {0.0, 1.0, 0.0};
  rec.i = {0.0, 0.0, 0.0};
  rec.dt = 1e-12;
  const std::vector<double> fr{1e9, 2e9, 3e9};
  const auto s = port_spectra(rec, fr);
  for (bool v : s.valid) EXPECT_FALSE(v);
  EXPECT_THROW(resonant_frequency(s), ExtractionError);
}

TEST(Extraction, ProportionalRecordsGiveThatImpedance) {
  PortRecord rec;
  rec.dt = 1e-12;
  const SourceWaveform w = SourceWaveform::with_min_delay(5e9, 4e9);
  for (int m = 0; m < 4000; ++m) {
    const double i = gaussian_modulated_pulse(m * rec.dt, w);
    rec.i.push_back(i);
    rec.v.push_back(50.0 * i);
  }
  const auto f = linspace_freqs(3e9, 7e9, 0.5e9);
  const auto s = port_spectra(rec, f);
  for (std::size_t q = 0; q < f.size(); ++q) {
    EXPECT_NEAR(std::abs(s.Z[q] - 50.0), 0.0, 1e-9);
    EXPECT_LT(std::abs(s.S11[q]), 1e-10);
  }
}

// Port edge on a ground plate, a one-cell PEC riser, a bridge plate and a
// lumped return edge: a tiny loop whose impedance is the return resistance
// plus a small series inductance.
PortSpectra loop_spectra(double load_ohm) {
  const double d = 0.1e-3;
  VoxelGrid g({16, 16, 12}, d, 0, {8, 8, 2});
  const auto pec = g.add_material(MaterialSpec::pec());
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j <= 16; ++j) g.set_material(Axis::kX, i, j, 3, pec);
  for (int i = 0; i <= 16; ++i)
    for (int j = 0; j < 16; ++j) g.set_material(Axis::kY, i, j, 3, pec);
  g.set_material(Axis::kZ, 8, 8, 4, pec);
  g.set_material(Axis::kZ, 9, 8, 4, pec);
  g.set_material(Axis::kX, 8, 8, 5, pec);
  g.lumped().push_back(LumpedEdge{Axis::kZ, 8, 8, 3, 50.0, true, 1});
  g.lumped().push_back(LumpedEdge{Axis::kZ, 9, 8, 3, load_ohm, false, 0});

  SimConfig cfg = SimConfig::make(d);
  cfg.cpml.cells = 0;
  cfg.max_steps = 24000;
  cfg.decay_stop_db = -80.0;
  const SourceWaveform w = SourceWaveform::with_min_delay(2e9, 2e9);
  Sources src;
  src.ports.push_back({0, [w](double t) { return gaussian_modulated_pulse(t, w); }});
  src.active_until_s = w.end_time();
  Simulation sim(g, cfg, src);
  PortRecorder rec(g, 0, 50.0);
  Recorder *recs[] = {&rec};
  sim.run(recs);
  const std::vector<double> f{1e9, 2e9, 3e9};
  return port_spectra(rec.finish(cfg.dt_s), f);
}

TEST(LumpedPort, MatchedLoadReflectsLittle) {
  const auto s = loop_spectra(50.0);
  for (std::size_t q = 0; q < s.freqs.size(); ++q) {
    ASSERT_TRUE(s.valid[q]);
    EXPECT_NEAR(s.Z[q].real(), 50.0, 2.5) << s.freqs[q];
    EXPECT_LT(s.s11_db(q), -20.0) << s.freqs[q];
  }
}

TEST(LumpedPort, ShortReflectsNearlyEverything) {
  const auto s = loop_spectra(0.0);
  for (std::size_t q = 0; q < s.freqs.size(); ++q) {
    ASSERT_TRUE(s.valid[q]);
    EXPECT_GT(s.s11_db(q), -0.5) << s.freqs[q];
    EXPECT_LT(std::abs(s.Z[q]), 5.0) << s.freqs[q];
    EXPECT_GE(s.Z[q].imag(), 0.0) << "loop should look inductive";
  }
}

}  // namespace
}  // namespace glant
