// Copyright 2026 The glant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "glant/fdtd.hpp"
#include "glant/materials.hpp"
#include "glant/ports.hpp"
#include "glant/scene.hpp"

namespace glant {

/// Inclusive linear frequency sweep.
struct FrequencySweep {
  double start_hz = 3.5e9;
  double stop_hz = 7.5e9;
  double step_hz = 10e6;

  std::vector<double> expand() const { return linspace_freqs(start_hz, stop_hz, step_hz); }
  bool operator==(const FrequencySweep &) const = default;
};

struct FarFieldOptions {
  std::vector<double> frequencies_hz{5.0e9, 5.25e9, 5.5e9, 5.75e9, 6.0e9};
  double pattern_hz = phys::kDesignFrequency;  // must be one of frequencies_hz
  double theta_step_deg = 2.0;
  double phi_step_deg = 2.0;
  int box_gap_cells = 2;  // air cells between the NTFF box and the CPML
  double beam_tolerance_deg = 15.0;
  bool operator==(const FarFieldOptions &) const = default;
};

struct OutputOptions {
  std::string dir = "glant-out";
  bool touchstone = true;
  bool patterns = true;
  bool operator==(const OutputOptions &) const = default;
};

struct RunConfig {
  std::string preset;  // empty when none was given
  AntennaParams antenna;
  GrapheneSpec liquid;
  std::vector<LiquidLocation> states;
  SimConfig sim;
  double air_margin_m = VoxelizeOptions{}.air_margin_m;
  FrequencySweep sweep;
  SourceWaveform source = SourceWaveform::with_min_delay(phys::kDesignFrequency, 3.5e9);
  FarFieldOptions farfield;
  OutputOptions output;

  /// Antenna parameters with the liquid material resolved from `liquid`.
  AntennaParams resolved_antenna() const;
  VoxelizeOptions voxelize_options() const;
  void validate() const;
  bool operator==(const RunConfig &) const = default;
};

/// Parse a JSON document. Omitted fields take defaults; unknown keys, type
/// mismatches and invariant violations raise ConfigError naming the JSON path.
RunConfig parse_config(std::string_view text);

/// Effective configuration as JSON; parse_config(to_json(c)) == c.
std::string to_json(const RunConfig &cfg);

}  // namespace glant
