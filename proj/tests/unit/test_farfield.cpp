// Copyright 2026 The glant Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <algorithm>
#include <functional>

#include <gtest/gtest.h>

#include "glant/errors.hpp"
#include "glant/farfield.hpp"
#include "glant/ports.hpp"
#include "glant/validation.hpp"

namespace glant {
namespace {

constexpr double kDeg = phys::kPi / 180.0;

// Pattern whose radiation intensity is u(theta, phi) in W/sr (degrees in).
FarFieldPattern analytic(const std::function<double(double, double)> &u, double step = 2.0) {
  FarFieldPattern p = FarFieldPattern::make_grid(5.5e9, step, step);
  for (std::size_t it = 0; it < p.theta_deg.size(); ++it)
    for (std::size_t ip = 0; ip < p.phi_deg.size(); ++ip)
      p.e_theta[p.index(it, ip)] = std::sqrt(2.0 * phys::kEta0 * u(p.theta_deg[it], p.phi_deg[ip]));
  return p;
}

double angle_between(double t1, double p1, double t2, double p2) {
  const double c = std::sin(t1 * kDeg) * std::sin(t2 * kDeg) * std::cos((p1 - p2) * kDeg) +
                   std::cos(t1 * kDeg) * std::cos(t2 * kDeg);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

TEST(Grid, ShapeAndValidation) {
  const auto p = FarFieldPattern::make_grid(1e9, 2.0, 2.0);
  EXPECT_EQ(p.theta_deg.size(), 91u);
  EXPECT_EQ(p.phi_deg.size(), 180u);
  EXPECT_EQ(p.theta_deg.back(), 180.0);
  EXPECT_EQ(p.phi_deg.back(), 358.0);
  EXPECT_THROW(FarFieldPattern::make_grid(1e9, 7.0, 2.0), DomainError);
  EXPECT_THROW(FarFieldPattern::make_grid(1e9, 2.0, 0.0), DomainError);
}

TEST(Metrics, ZeroAndFlatPatternsHaveNoPeak) {
  const auto zero = FarFieldPattern::make_grid(1e9, 2.0, 2.0);
  EXPECT_THROW(beam_peak(zero), MetricsError);
  EXPECT_THROW(directivity_and_gain(zero, 1.0), MetricsError);
  EXPECT_THROW(normalize_pattern(zero), MetricsError);
  const auto flat = analytic([](double, double) { return 1.0; });
  EXPECT_THROW(beam_peak(flat), MetricsError);
  EXPECT_THROW(directivity_and_gain(flat, 0.0), MetricsError);
}

TEST(Metrics, IsotropicAndShortDipoleDirectivity) {
  const auto iso = analytic([](double, double) { return 1.0; });
  const auto mi = directivity_and_gain(iso, 4.0 * phys::kPi);
  EXPECT_NEAR(mi.directivity_dbi, 0.0, 0.05);
  EXPECT_NEAR(mi.gain_dbi, 0.0, 1e-12);  // accepted power equals the exact total

  const auto dip = analytic([](double t, double) { return std::pow(std::sin(t * kDeg), 2); });
  const auto md = directivity_and_gain(dip, 1.0);
  EXPECT_NEAR(md.directivity_dbi, 10.0 * std::log10(1.5), 0.05);
  EXPECT_NEAR(md.radiated_power, 8.0 * phys::kPi / 3.0, 1e-3);
}

TEST(Metrics, TiesResolveToSmallestThetaThenPhi) {
  const auto dip = analytic([](double t, double) { return std::pow(std::sin(t * kDeg), 2); });
  const BeamPeak b = beam_peak(dip);
  EXPECT_EQ(b.theta_deg, 90.0);
  EXPECT_EQ(b.phi_deg, 0.0);
  EXPECT_EQ(b.resolution_deg, 2.0);
}

TEST(Metrics, PencilBeamPeakAndFrontToBack) {
  const auto pencil = analytic([](double t, double p) {
    const double a = angle_between(t, p, 30.0, 135.0);
    return std::exp(-a * a / 0.02) + 1e-6;
  });
  const BeamPeak b = beam_peak(pencil);
  EXPECT_EQ(b.theta_deg, 30.0);
  EXPECT_NEAR(b.phi_deg, 135.0, 1.0);

  // Front 10x stronger than the antipodal direction (150, 315).
  const auto fb = analytic([](double t, double p) {
    const double front = std::exp(-std::pow(angle_between(t, p, 30.0, 136.0), 2) / 0.05);
    const double back = 0.1 * std::exp(-std::pow(angle_between(t, p, 150.0, 316.0), 2) / 0.05);
    return front + back;
  });
  EXPECT_NEAR(front_to_back(fb), 10.0, 1e-3);

  const auto sym = analytic([](double t, double p) {
    return std::exp(-std::pow(angle_between(t, p, 40.0, 70.0), 2) / 0.1) +
           std::exp(-std::pow(angle_between(t, p, 140.0, 250.0), 2) / 0.1);
  });
  EXPECT_NEAR(front_to_back(sym), 0.0, 1e-9);
}

TEST(Metrics, ScaleInvarianceAndNormalizationIdempotence) {
  const auto base = analytic([](double t, double p) {
    return 1.0 + std::pow(std::sin(t * kDeg), 2) * (1.5 + std::cos(p * kDeg));
  });
  FarFieldPattern scaled = base;
  for (auto &e : scaled.e_theta) e *= std::sqrt(7.0);
  const auto a = directivity_and_gain(base, 1.0);
  const auto b = directivity_and_gain(scaled, 7.0);
  EXPECT_NEAR(a.directivity_dbi, b.directivity_dbi, 1e-12);
  EXPECT_NEAR(a.gain_dbi, b.gain_dbi, 1e-12);
  EXPECT_NEAR(a.front_to_back_db, b.front_to_back_db, 1e-12);

  const NormalizedPattern n1 = normalize_pattern(base);
  EXPECT_EQ(*std::max_element(n1.db.begin(), n1.db.end()), 0.0);
  const NormalizedPattern n2 = normalize_pattern(pattern_from_normalized(n1, base.f_hz));
  ASSERT_EQ(n1.db.size(), n2.db.size());
  for (std::size_t i = 0; i < n1.db.size(); ++i) EXPECT_NEAR(n1.db[i], n2.db[i], 1e-12);
  EXPECT_EQ(n1.theta_cut_db.size(), n1.phi_deg.size());
  EXPECT_EQ(n1.phi_cut_db.size(), n1.theta_deg.size());
}

TEST(Metrics, QuadratureConvergesWithAngularStep) {
  const auto u = [](double t, double p) {
    return std::pow(std::sin(t * kDeg), 2) * (1.0 + 0.5 * std::cos(p * kDeg)) + 0.1;
  };
  const double d2 = directivity_and_gain(analytic(u, 2.0), 1.0).directivity_dbi;
  const double d1 = directivity_and_gain(analytic(u, 1.0), 1.0).directivity_dbi;
  EXPECT_LT(std::abs(d2 - d1), 0.02);
}

TEST(Ntff, HertzianDipoleOracle) {
  const DipoleOracleResult r = run_dipole_oracle();
  EXPECT_LE(r.max_pattern_deviation, 0.02);
  EXPECT_NEAR(r.directivity_dbi, 10.0 * std::log10(1.5), 0.1);
  EXPECT_LE(r.power_mismatch, 0.03);
  EXPECT_LE(r.max_e_phi_ratio, 0.02);
  EXPECT_TRUE(r.pass());
}

FarFieldPattern dipole_pattern(Axis axis) {
  const double d = 2e-3, f = 3e9;
  const VoxelGrid g({40, 40, 40}, d, 8, {20, 20, 20});
  SimConfig cfg = SimConfig::make(d);
  cfg.cpml.cells = 8;
  const SourceWaveform w = SourceWaveform::with_min_delay(f, 2e9);
  Sources src;
  src.currents.push_back({axis, 20, 20, 20, [w](double t) { return gaussian_modulated_pulse(t, w); }});
  Simulation sim(g, cfg, src);
  NtffSurface box = NtffSurface::inside_pml(g, 2, {f}, cfg.dt_s);
  for (int n = 0; n < 1500; ++n) {
    sim.step();
    box.record(sim.fields(), sim.coeffs());
  }
  EXPECT_THROW(box.freq_index(4e9), LookupError);
  return ntff_transform(box, f, 2.0, 2.0);
}

TEST(Ntff, RotationAboutZIsEquivariant) {
  const auto px = dipole_pattern(Axis::kX);
  const auto py = dipole_pattern(Axis::kY);
  const std::size_t np = px.phi_deg.size();
  double umax = 0.0, worst = 0.0;
  for (std::size_t n = 0; n < px.e_theta.size(); ++n) umax = std::max(umax, px.intensity(n));
  for (std::size_t it = 0; it < px.theta_deg.size(); ++it)
    for (std::size_t ip = 0; ip < np; ++ip) {
      const double ux = px.intensity(px.index(it, ip));
      const double uy = py.intensity(py.index(it, (ip + 45) % np));  // +90 degrees
      worst = std::max(worst, std::abs(ux - uy) / umax);
    }
  EXPECT_LT(worst, 1e-6);
  // The x dipole radiates nothing along its own axis.
  EXPECT_LT(px.intensity(px.index(45, 0)) / umax, 1e-2);
}

}  // namespace
}  // namespace glant
