// Copyright 2026 The glant Authors
// SPDX-License-Identifier: Apache-2.0

#include "glant/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <thread>

#include "glant/errors.hpp"

namespace glant {

namespace {

double circular_distance_deg(double a, double b) {
  double d = std::fmod(std::abs(a - b), 360.0);
  return d > 180.0 ? 360.0 - d : d;
}

double accepted_power(const PortRecord &rec, double f_hz) {
  const std::vector<double> f{f_hz};
  const PortSpectra s = port_spectra(rec, f);
  return 0.5 * std::real(s.V[0] * std::conj(s.I[0]));
}

}  // namespace

const std::vector<BeamLabel> &beam_labels() {
  static const std::vector<BeamLabel> labels{{"B1", 315.0}, {"B2", 0.0},   {"B3", 45.0},
                                             {"B4", 135.0}, {"B5", 180.0}, {"B6", 225.0}};
  return labels;
}

BeamLabel expected_beam(LiquidLocation loc) {
  return beam_labels()[static_cast<int>(loc) - 1];
}

std::string match_beam(double azimuth_deg, double tol_deg) {
  const BeamLabel *best = nullptr;
  double best_d = tol_deg;
  for (const auto &b : beam_labels()) {
    const double d = circular_distance_deg(azimuth_deg, b.azimuth_deg);
    if (d <= best_d) {
      best_d = d;
      best = &b;
    }
  }
  return best ? best->name : "unmatched";
}

StateResult run_state(const RunConfig &cfg, LiquidLocation state) {
  StateResult r;
  r.state = state;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const SceneSpec scene = build_scene(cfg.resolved_antenna(), state);
    const VoxelGrid grid = voxelize(scene, cfg.voxelize_options());
    r.cells = static_cast<long>(grid.dims().cells());
    const LumpedEdge *port = grid.port();
    if (!port) throw GeometryError("scene has no port");
    const std::size_t port_index = static_cast<std::size_t>(port - grid.lumped().data());

    SimConfig sim = cfg.sim;
    sim.recorded_frequencies_hz = cfg.farfield.frequencies_hz;
    Sources src;
    const SourceWaveform wf = cfg.source;
    src.ports.push_back({port_index, [wf](double t) { return gaussian_modulated_pulse(t, wf); }});
    src.active_until_s = wf.end_time();

    Simulation simulation(grid, sim, src);
    PortRecorder port_rec(grid, port_index, port->resistance);
    NtffSurface ntff = NtffSurface::inside_pml(grid, cfg.farfield.box_gap_cells,
                                               cfg.farfield.frequencies_hz, sim.dt_s);
    ntff.require_encloses(grid);
    Recorder *recorders[] = {&port_rec, &ntff};
    r.run = simulation.run(recorders);

    const PortRecord rec = port_rec.finish(sim.dt_s);
    const auto sweep = cfg.sweep.expand();
    r.spectra = port_spectra(rec, sweep);
    try {
      r.resonance_hz = resonant_frequency(r.spectra);
      r.min_s11_db = 0.0;
      for (std::size_t n = 0; n < sweep.size(); ++n)
        if (r.spectra.valid[n]) r.min_s11_db = std::min(r.min_s11_db, r.spectra.s11_db(n));
    } catch (const ExtractionError &) {
    }
    try {
      r.bandwidth_pct = fractional_bandwidth(r.spectra);
    } catch (const ExtractionError &) {
    }

    const FarFieldOptions &ff = cfg.farfield;
    r.pattern = ntff_transform(ntff, ff.pattern_hz, ff.theta_step_deg, ff.phi_step_deg);
    r.metrics = directivity_and_gain(r.pattern, accepted_power(rec, ff.pattern_hz));
    r.pattern_ntff_flux = ntff.poynting_flux(ntff.freq_index(ff.pattern_hz));
    r.matched_beam = match_beam(r.metrics.peak.phi_deg, ff.beam_tolerance_deg);

    r.resonance_pattern_hz = ff.pattern_hz;
    if (r.resonance_hz) {
      for (double f : ff.frequencies_hz)
        if (std::abs(f - *r.resonance_hz) < std::abs(r.resonance_pattern_hz - *r.resonance_hz))
          r.resonance_pattern_hz = f;
    }
    if (r.resonance_pattern_hz == ff.pattern_hz) {
      r.resonance_metrics = r.metrics;
    } else {
      const FarFieldPattern p =
          ntff_transform(ntff, r.resonance_pattern_hz, ff.theta_step_deg, ff.phi_step_deg);
      r.resonance_metrics = directivity_and_gain(p, accepted_power(rec, r.resonance_pattern_hz));
    }
  } catch (const std::exception &e) {
    r.error = e.what();
  }
  r.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

BeamMap build_beam_map(const std::vector<StateResult> &states, double tolerance_deg) {
  BeamMap map;
  map.tolerance_deg = tolerance_deg;
  std::vector<std::string> claimed;
  bool all_expected = true;
  for (const auto &s : states) {
    BeamMapEntry e;
    e.state = std::string(label(s.state));
    e.expected = expected_beam(s.state).name;
    if (s.error) {
      e.matched = "unmatched";
      map.violations.push_back(e.state + ": run failed");
    } else {
      e.azimuth_deg = s.metrics.peak.phi_deg;
      e.elevation_deg = s.metrics.peak.theta_deg;
      e.matched = match_beam(*e.azimuth_deg, tolerance_deg);
      if (e.matched == "unmatched") map.violations.push_back(e.state + ": no label within tolerance");
    }
    if (e.matched != "unmatched") {
      if (std::find(claimed.begin(), claimed.end(), e.matched) != claimed.end())
        map.violations.push_back(e.state + ": label " + e.matched + " claimed twice");
      claimed.push_back(e.matched);
    }
    if (e.matched != e.expected) {
      all_expected = false;
      if (e.matched != "unmatched")
        map.violations.push_back(e.state + ": matched " + e.matched + ", expected " + e.expected);
    }
    map.entries.push_back(std::move(e));
  }
  map.bijection = states.size() == 6 && all_expected && map.violations.empty();
  if (states.size() != 6) map.violations.push_back("bijection needs all six states");
  return map;
}

StabilityReport build_stability(const std::vector<StateResult> &states) {
  StabilityReport s;
  for (const auto &r : states)
    if (!r.error && r.resonance_hz) s.resonances_hz.emplace_back(std::string(label(r.state)), *r.resonance_hz);
  if (s.resonances_hz.size() >= 2) {
    double lo = s.resonances_hz.front().second, hi = lo;
    for (const auto &[name, f] : s.resonances_hz) {
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
    s.max_pairwise_deviation = (hi - lo) / lo;
  }
  return s;
}

RunReport run_states(const RunConfig &cfg, int jobs, const ProgressFn &progress) {
  cfg.validate();
  RunReport report;
  report.states.resize(cfg.states.size());
  std::atomic<std::size_t> next{0};
  std::mutex progress_mutex;
  const auto worker = [&] {
    for (std::size_t n = next++; n < cfg.states.size(); n = next++) {
      report.states[n] = run_state(cfg, cfg.states[n]);
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(report.states[n]);
      }
    }
  };
  const int workers = std::clamp<int>(jobs, 1, static_cast<int>(cfg.states.size()));
  {
    std::vector<std::jthread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }
  report.beam_map = build_beam_map(report.states, cfg.farfield.beam_tolerance_deg);
  report.stability = build_stability(report.states);
  return report;
}

}  // namespace glant
