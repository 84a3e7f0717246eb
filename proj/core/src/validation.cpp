// Copyright 2026 The glant Authors
// SPDX-License-Identifier: Apache-2.0

#include "glant/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "glant/errors.hpp"
#include "glant/farfield.hpp"
#include "glant/fdtd.hpp"
#include "glant/materials.hpp"
#include "glant/ports.hpp"

namespace glant {

namespace {

std::string line(bool ok, const char *fmt, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, fmt, a, b, c);
  return std::string(ok ? "PASS " : "FAIL ") + buf;
}

// Parabolic vertex through (x[m-1..m+1], y[m-1..m+1]).
double refine_peak(const std::vector<double> &x, const std::vector<double> &y, std::size_t m) {
  if (m == 0 || m + 1 >= x.size()) return x[m];
  const double y0 = y[m - 1], y1 = y[m], y2 = y[m + 1];
  const double den = y0 - 2.0 * y1 + y2;
  if (den == 0.0) return x[m];
  const double off = 0.5 * (y0 - y2) / den;
  return x[m] + std::clamp(off, -1.0, 1.0) * (x[m + 1] - x[m]);
}

std::vector<double> box_modes(double a, double b, double d, std::size_t count) {
  std::vector<double> f;
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n)
      for (int p = 0; p <= 4; ++p) {
        if ((m == 0) + (n == 0) + (p == 0) > 1) continue;
        f.push_back(phys::kC0 / 2.0 *
                    std::sqrt(std::pow(m / a, 2) + std::pow(n / b, 2) + std::pow(p / d, 2)));
      }
  std::sort(f.begin(), f.end());
  std::vector<double> distinct;
  for (double v : f)
    if (distinct.empty() || v > distinct.back() * (1.0 + 1e-9)) distinct.push_back(v);
  distinct.resize(std::min(count, distinct.size()));
  return distinct;
}

}  // namespace

bool CavityOracleResult::pass() const {
  if (measured_hz.size() != analytic_hz.size() || analytic_hz.empty()) return false;
  return std::all_of(rel_error.begin(), rel_error.end(), [&](double e) { return e <= tolerance; });
}

CavityOracleResult run_cavity_oracle(double delta_m, long steps, int threads) {
  constexpr double a = 40e-3, b = 30e-3, d = 20e-3;
  const GridDims dims{static_cast<int>(std::lround(a / delta_m)),
                      static_cast<int>(std::lround(b / delta_m)),
                      static_cast<int>(std::lround(d / delta_m))};
  const VoxelGrid grid(dims, delta_m, 0, {0, 0, 0});

  SimConfig cfg = SimConfig::make(delta_m);
  cfg.cpml.cells = 0;
  cfg.max_steps = steps;
  cfg.threads = threads;

  // Broadband current kick on all three axes at an off-symmetry point.
  const SourceWaveform wf = SourceWaveform::with_min_delay(8e9, 4e9);
  const auto pulse = [wf](double t) { return gaussian_modulated_pulse(t, wf); };
  const int si = dims.nx / 5, sj = dims.ny / 6, sk = dims.nz / 7 + 1;
  Sources src;
  for (Axis ax : {Axis::kX, Axis::kY, Axis::kZ}) src.currents.push_back({ax, si, sj, sk, pulse});
  src.active_until_s = wf.end_time();

  Simulation sim(grid, cfg, src);
  const int pi = dims.nx * 7 / 10, pj = dims.ny * 2 / 3, pk = dims.nz * 3 / 5;
  ProbeRecorder px(grid, Axis::kX, pi, pj, pk), py(grid, Axis::kY, pi, pj, pk),
      pz(grid, Axis::kZ, pi, pj, pk);
  Recorder *recs[] = {&px, &py, &pz};
  sim.set_monitor(Axis::kZ, pi, pj, pk);
  const RunResult run = sim.run(recs);

  CavityOracleResult r;
  r.steps = run.steps > 0 ? run.steps : sim.fields().step;
  r.analytic_hz = box_modes(a, b, d, 3);
  const std::size_t n = px.samples().size();
  std::vector<double> hann(n);
  for (std::size_t m = 0; m < n; ++m)
    hann[m] = 0.5 - 0.5 * std::cos(2.0 * phys::kPi * static_cast<double>(m) / static_cast<double>(n - 1));
  std::array<std::vector<double>, 3> win;
  const ProbeRecorder *probes[] = {&px, &py, &pz};
  for (int c = 0; c < 3; ++c) {
    win[c] = probes[c]->samples();
    for (std::size_t m = 0; m < n; ++m) win[c][m] *= hann[m];
  }
  for (double fa : r.analytic_hz) {
    const auto freqs = linspace_freqs(0.96 * fa, 1.04 * fa, 1e6);
    std::vector<double> power(freqs.size(), 0.0);
    for (int c = 0; c < 3; ++c) {
      const auto spec = direct_dft(win[c], cfg.dt_s, cfg.dt_s, freqs);
      for (std::size_t q = 0; q < freqs.size(); ++q) power[q] += std::norm(spec[q]);
    }
    const std::size_t m = static_cast<std::size_t>(
        std::max_element(power.begin(), power.end()) - power.begin());
    std::vector<double> logp(power.size());
    for (std::size_t q = 0; q < power.size(); ++q) logp[q] = std::log(power[q] + 1e-300);
    const double fm = refine_peak(freqs, logp, m);
    r.measured_hz.push_back(fm);
    r.rel_error.push_back(std::abs(fm - fa) / fa);
  }
  return r;
}

bool DipoleOracleResult::pass() const {
  return max_pattern_deviation <= pattern_tolerance &&
         std::abs(directivity_dbi - 10.0 * std::log10(1.5)) <= directivity_tolerance_db &&
         power_mismatch <= power_tolerance;
}

DipoleOracleResult run_dipole_oracle(double f_hz, double delta_m, int threads) {
  constexpr int kPml = 10;
  constexpr int kHalfAir = 16;
  const int half = kPml + kHalfAir;
  const GridDims dims{2 * half, 2 * half, 2 * half};
  const VoxelGrid grid(dims, delta_m, kPml, {half, half, half});

  SimConfig cfg = SimConfig::make(delta_m);
  cfg.max_steps = 20000;
  cfg.threads = threads;
  cfg.recorded_frequencies_hz = {f_hz};

  const SourceWaveform wf = SourceWaveform::with_min_delay(f_hz, 0.6 * f_hz);
  Sources src;
  src.currents.push_back(
      {Axis::kZ, half, half, half, [wf](double t) { return gaussian_modulated_pulse(t, wf); }});
  src.active_until_s = wf.end_time();

  Simulation sim(grid, cfg, src);
  sim.set_monitor(Axis::kZ, half, half, half + 3);
  NtffSurface ntff = NtffSurface::inside_pml(grid, 3, {f_hz}, cfg.dt_s);
  Recorder *recs[] = {&ntff};
  const RunResult run = sim.run(recs);

  DipoleOracleResult r;
  r.f_hz = f_hz;
  r.steps = run.steps;
  const FarFieldPattern p = ntff_transform(ntff, f_hz, 2.0, 2.0);
  double emax = 0.0;
  for (std::size_t i = 0; i < p.e_theta.size(); ++i)
    emax = std::max(emax, std::hypot(std::abs(p.e_theta[i]), std::abs(p.e_phi[i])));
  for (std::size_t it = 0; it < p.theta_deg.size(); ++it) {
    const double s = std::sin(p.theta_deg[it] * phys::kPi / 180.0);
    for (std::size_t ip = 0; ip < p.phi_deg.size(); ++ip) {
      const std::size_t i = p.index(it, ip);
      const double e = std::hypot(std::abs(p.e_theta[i]), std::abs(p.e_phi[i]));
      r.max_pattern_deviation = std::max(r.max_pattern_deviation, std::abs(e / emax - s));
      r.max_e_phi_ratio = std::max(r.max_e_phi_ratio, std::abs(p.e_phi[i]) / emax);
    }
  }
  r.radiated_power = radiated_power(p);
  const PatternMetrics m = directivity_and_gain(p, r.radiated_power);
  r.directivity_dbi = m.directivity_dbi;
  r.ntff_flux = ntff.poynting_flux(0);
  r.power_mismatch = std::abs(r.radiated_power - r.ntff_flux) / std::abs(r.ntff_flux);
  return r;
}

bool PatchOracleResult::pass() const { return rel_error <= tolerance; }

PatchOracleResult run_patch_oracle(double delta_m, int threads) {
  PatchOracleResult r;
  r.length_m = 50e-3;
  r.width_m = 60e-3;
  r.height_m = 1e-3;
  r.eps_r = 2.2;
  r.eps_eff = microstrip_eps_eff(r.eps_r, r.width_m, r.height_m);
  r.analytic_hz = patch_cavity_resonance(r.length_m, r.eps_eff);

  SceneSpec scene;
  const auto pec = scene.add_material(MaterialSpec::pec());
  const auto sub = scene.add_material(MaterialSpec::dielectric({r.eps_r, 0.001, r.analytic_hz}));
  const double gx = r.length_m / 2.0 + 10e-3, gy = r.width_m / 2.0 + 10e-3;
  const double px = r.length_m / 2.0, py = r.width_m / 2.0, h = r.height_m;
  scene.objects.push_back({"ground", pec, {Box{{-gx, -gy, 0.0}, {gx, gy, 0.0}}}});
  scene.objects.push_back({"substrate", sub, {Box{{-gx, -gy, 0.0}, {gx, gy, h}}}});
  scene.objects.push_back({"patch", pec, {Box{{-px, -py, h}, {px, py, h}}}});
  PortPlacement port;
  port.x_m = -r.length_m / 6.0;
  port.y_m = 0.0;
  port.probe_top_m = h;
  scene.port = port;
  scene.features = {{"substrate height", h, 1}};

  VoxelizeOptions vo;
  vo.delta_m = delta_m;
  vo.air_margin_m = 15e-3;
  const VoxelGrid grid = voxelize(scene, vo);

  SimConfig cfg = SimConfig::make(delta_m);
  cfg.max_steps = 60000;
  cfg.decay_stop_db = -30.0;
  cfg.threads = threads;
  const SourceWaveform wf = SourceWaveform::with_min_delay(r.analytic_hz, 0.6 * r.analytic_hz);
  Sources src;
  src.ports.push_back({0, [wf](double t) { return gaussian_modulated_pulse(t, wf); }});
  src.active_until_s = wf.end_time();

  Simulation sim(grid, cfg, src);
  PortRecorder rec(grid, 0, 50.0);
  Recorder *recs[] = {&rec};
  const RunResult run = sim.run(recs);
  r.steps = run.steps;

  const auto freqs = linspace_freqs(0.7 * r.analytic_hz, 1.3 * r.analytic_hz, 1e6);
  const PortSpectra s = port_spectra(rec.finish(cfg.dt_s), freqs);
  std::vector<double> re(freqs.size(), -1e300);
  for (std::size_t q = 0; q < freqs.size(); ++q)
    if (s.valid[q]) re[q] = s.Z[q].real();
  const std::size_t m =
      static_cast<std::size_t>(std::max_element(re.begin(), re.end()) - re.begin());
  r.measured_hz = refine_peak(freqs, re, m);
  r.rel_error = std::abs(r.measured_hz - r.analytic_hz) / r.analytic_hz;
  return r;
}

EnergyDriftResult run_energy_drift(long steps) {
  const double d = 1e-3;
  const VoxelGrid g({12, 10, 8}, d, 0, {6, 5, 4});
  SimConfig cfg = SimConfig::make(d);
  cfg.cpml.cells = 0;
  const UpdateCoeffs c = init_coeffs(g, cfg);
  FieldState f(g, c);
  f.e[2][g.index(4, 3, 3)] = 1.0;
  f.e[0][g.index(7, 6, 2)] = -0.5;
  EnergyRecorder rec;
  for (long n = 0; n < steps; ++n) {
    step(f, c, {});
    rec.record(f, c);
  }
  // Sample 0 pairs E(dt) with a zero predecessor; the invariant starts at 1.
  const auto &w = rec.samples();
  EnergyDriftResult r;
  r.steps = steps;
  const double ref = w.at(1);
  for (std::size_t n = 1; n < w.size(); ++n) {
    r.max_total_drift = std::max(r.max_total_drift, std::abs(w[n] - ref) / ref);
    if (n >= 1001) r.max_drift_per_1000 = std::max(r.max_drift_per_1000, std::abs(w[n] - w[n - 1000]) / ref);
  }
  return r;
}

namespace {

std::vector<double> column_trace(int nz, int src_k, int probe_k, long steps, int cpml) {
  const VoxelGrid g({1, 1, nz}, 1e-3, cpml, {0, 0, 0});
  SimConfig cfg = SimConfig::make(1e-3);
  cfg.boundary = {Boundary::kPeriodic, Boundary::kPeriodic, Boundary::kPec};
  cfg.cpml.cells = cpml;
  const SourceWaveform w = SourceWaveform::with_min_delay(10e9, 8e9);
  Sources src;
  src.currents.push_back({Axis::kX, 0, 0, src_k, [w](double t) { return gaussian_modulated_pulse(t, w); }});
  Simulation sim(g, cfg, src);
  ProbeRecorder probe(g, Axis::kX, 0, 0, probe_k);
  for (long n = 0; n < steps; ++n) {
    sim.step();
    probe.record(sim.fields(), sim.coeffs());
  }
  return probe.samples();
}

}  // namespace

CpmlReflectionResult run_cpml_reflection(int cpml_cells) {
  constexpr long kSteps = 1500;
  const auto near = column_trace(200, 60, 150, kSteps, cpml_cells);
  const auto far = column_trace(1400, 600, 690, kSteps, cpml_cells);
  double inc = 0.0, refl = 0.0;
  for (long n = 0; n < kSteps; ++n) {
    inc = std::max(inc, std::abs(far[n]));
    refl = std::max(refl, std::abs(near[n] - far[n]));
  }
  CpmlReflectionResult r;
  r.reflection_db = 20.0 * std::log10(refl / inc);
  return r;
}

KuboPropertyResult run_kubo_properties(int samples, unsigned long long seed) {
  KuboPropertyResult r;
  r.samples = samples;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mu(0.0, 1.0), logtau(-14.0, -11.0), temp(1.0, 600.0),
      logf(6.0, 12.0);
  const auto fail = [&](const std::string &what) {
    if (r.failures++ == 0) r.first_failure = what;
  };
  for (int n = 0; n < samples; ++n) {
    GrapheneSpec g;
    g.mu_c_ev = mu(rng);
    g.tau_s = std::pow(10.0, logtau(rng));
    g.temperature_k = temp(rng);
    const double w = 2.0 * phys::kPi * std::pow(10.0, logf(rng));
    const Complex pos = kubo_intraband_omega(g, w);
    const Complex neg = kubo_intraband_omega(g, -w);
    const Complex dc = kubo_intraband(g, 0.0);
    // The Drude form leaves sigma(0) by at most w tau in relative terms.
    const Complex slow = kubo_intraband_omega(g, 1e-6 / g.tau_s);
    const Complex mid = kubo_intraband_omega(g, 1e-4 / g.tau_s);
    if (std::abs(neg - std::conj(pos)) > 1e-12 * std::abs(pos)) fail("hermitian symmetry");
    if (!(pos.real() > 0.0) || pos.imag() < 0.0) fail("passivity");
    if (dc.imag() != 0.0 || std::abs(slow - dc) > 1e-6 * dc.real() ||
        std::abs(mid - dc) > 1e-4 * (1.0 + 1e-9) * dc.real())
      fail("low-frequency limit");
  }
  GrapheneSpec g;
  g.mu_c_ev = 0.0;
  const double pref = phys::kElementaryCharge * phys::kElementaryCharge * phys::kBoltzmann *
                      g.temperature_k / (phys::kPi * phys::kHbar * phys::kHbar);
  const double expected = pref * g.tau_s * 2.0 * std::log(2.0);
  r.dc_closed_form_error = std::abs(kubo_intraband(g, 0.0).real() - expected) / expected;
  return r;
}

std::vector<std::string> describe(const CavityOracleResult &r) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < r.analytic_hz.size() && i < r.measured_hz.size(); ++i)
    out.push_back(line(r.rel_error[i] <= r.tolerance,
                       "cavity mode %.0f: analytic %.6f GHz, measured %.6f GHz",
                       static_cast<double>(i + 1), r.analytic_hz[i] / 1e9, r.measured_hz[i] / 1e9));
  return out;
}

std::vector<std::string> describe(const DipoleOracleResult &r) {
  return {
      line(r.max_pattern_deviation <= r.pattern_tolerance,
           "dipole pattern: max | |E|/|E|max - sin(theta) | = %.4f (limit %.2f), E_phi/E = %.2e",
           r.max_pattern_deviation, r.pattern_tolerance, r.max_e_phi_ratio),
      line(std::abs(r.directivity_dbi - 10.0 * std::log10(1.5)) <= r.directivity_tolerance_db,
           "dipole directivity: %.4f dBi (expected 1.7609 +/- %.2f dB)", r.directivity_dbi,
           r.directivity_tolerance_db),
      line(r.power_mismatch <= r.power_tolerance,
           "dipole power: pattern/flux mismatch %.4f (limit %.2f)", r.power_mismatch,
           r.power_tolerance),
  };
}

std::vector<std::string> describe(const PatchOracleResult &r) {
  return {line(r.pass(), "patch resonance: measured %.4f GHz, closed form %.4f GHz, error %.4f",
               r.measured_hz / 1e9, r.analytic_hz / 1e9, r.rel_error)};
}

}  // namespace glant
