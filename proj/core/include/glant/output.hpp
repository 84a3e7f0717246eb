// Copyright 2026 The glant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <filesystem>
#include <string>
#include <vector>

#include "glant/config.hpp"
#include "glant/farfield.hpp"
#include "glant/ports.hpp"
#include "glant/runner.hpp"

namespace glant {

/// Touchstone v1 one-port file in GHz / real-imaginary form. Invalid
/// frequencies are omitted; `comments` become leading `!` lines.
void write_touchstone(const PortSpectra &s, const std::filesystem::path &path,
                      const std::vector<std::string> &comments = {});

struct TouchstoneData {
  std::vector<double> freqs_hz;
  std::vector<std::complex<double>> s11;
  double z_ref = 50.0;
  std::vector<std::string> comments;
};

/// Reads files written by write_touchstone (GHz/MHz/kHz/Hz; RI, MA or DB).
TouchstoneData read_touchstone(const std::filesystem::path &path);

/// theta-major CSV `theta_deg,phi_deg,gain_dbi,normalized_db`. Gain is
/// 4 pi U / P_acc per direction.
void write_pattern_csv(const FarFieldPattern &p, const PatternMetrics &m,
                       const std::filesystem::path &path);

/// Per-state summary JSON, including the beam-map entry.
std::string state_summary_json(const StateResult &r, const BeamMapEntry &beam);

/// Whole-run report JSON. Timing fields are dropped when `reproducible`.
std::string report_json(const RunReport &report, bool reproducible);

/// Writes the effective config, per-state Touchstone/CSV/summary files and
/// the final report into `dir`.
void write_outputs(const RunConfig &cfg, const RunReport &report,
                   const std::filesystem::path &dir, bool reproducible);

}  // namespace glant
