// Copyright 2026 The glant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "glant/config.hpp"
#include "glant/farfield.hpp"
#include "glant/ports.hpp"

namespace glant {

/// Beam label and azimuth that Table 2 assigns to each liquid location.
struct BeamLabel {
  std::string name;
  double azimuth_deg = 0.0;
};
BeamLabel expected_beam(LiquidLocation loc);
const std::vector<BeamLabel> &beam_labels();  // B1..B6

/// Label whose azimuth lies within tol of `azimuth_deg` (circular distance),
/// nearest first, or "unmatched".
std::string match_beam(double azimuth_deg, double tol_deg);

struct StateResult {
  LiquidLocation state = LiquidLocation::kL2;
  std::optional<std::string> error;  // set when the run failed

  PortSpectra spectra;
  std::optional<double> resonance_hz;
  std::optional<double> bandwidth_pct;
  double min_s11_db = 0.0;

  FarFieldPattern pattern;  // at farfield.pattern_hz
  PatternMetrics metrics;
  double pattern_ntff_flux = 0.0;

  // Metrics at the recorded far-field frequency nearest resonance.
  double resonance_pattern_hz = 0.0;
  PatternMetrics resonance_metrics;

  std::string matched_beam = "unmatched";
  RunResult run;
  long cells = 0;
  double wall_s = 0.0;
};

struct BeamMapEntry {
  std::string state;
  std::optional<double> azimuth_deg;
  std::optional<double> elevation_deg;
  std::string matched;   // label or "unmatched"
  std::string expected;  // Table 2 label
};

struct BeamMap {
  std::vector<BeamMapEntry> entries;
  double tolerance_deg = 15.0;
  /// True when six states each claim their own Table 2 label.
  bool bijection = false;
  std::vector<std::string> violations;
};

struct StabilityReport {
  std::vector<std::pair<std::string, double>> resonances_hz;
  std::optional<double> max_pairwise_deviation;  // (max - min) / min; needs >= 2 states
};

struct RunReport {
  std::vector<StateResult> states;
  BeamMap beam_map;
  StabilityReport stability;
};

/// Simulate one state. Failures are recorded in StateResult::error.
StateResult run_state(const RunConfig &cfg, LiquidLocation state);

using ProgressFn = std::function<void(const StateResult &)>;

/// Runs cfg.states with up to `jobs` concurrent simulations. Results follow
/// the order of cfg.states regardless of completion order.
RunReport run_states(const RunConfig &cfg, int jobs = 1, const ProgressFn &progress = {});

BeamMap build_beam_map(const std::vector<StateResult> &states, double tolerance_deg);
StabilityReport build_stability(const std::vector<StateResult> &states);

}  // namespace glant
