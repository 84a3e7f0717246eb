// Copyright 2026 The glant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

namespace glant {

// Built-in analytic validation scenes. Each returns measured and reference
// values together with the acceptance tolerances.

struct CavityOracleResult {
  std::vector<double> analytic_hz;  // first three distinct modes
  std::vector<double> measured_hz;
  std::vector<double> rel_error;
  double tolerance = 0.01;
  long steps = 0;
  bool pass() const;
};

/// 40 x 30 x 20 mm vacuum PEC box at the given spacing.
CavityOracleResult run_cavity_oracle(double delta_m = 1e-3, long steps = 16384, int threads = 1);

struct DipoleOracleResult {
  double f_hz = 0.0;
  double max_pattern_deviation = 0.0;  // max | |E|/|E|max - sin theta |
  double max_e_phi_ratio = 0.0;        // max |E_phi| / max |E|
  double directivity_dbi = 0.0;
  double radiated_power = 0.0;
  double ntff_flux = 0.0;
  double power_mismatch = 0.0;  // |P_rad - flux| / flux
  double pattern_tolerance = 0.02;
  double directivity_tolerance_db = 0.1;
  double power_tolerance = 0.03;
  long steps = 0;
  bool pass() const;
};

/// z-directed single-edge current element in a CPML-terminated vacuum box.
DipoleOracleResult run_dipole_oracle(double f_hz = 3e9, double delta_m = 2e-3, int threads = 1);

struct PatchOracleResult {
  double length_m = 0.0, width_m = 0.0, height_m = 0.0, eps_r = 0.0;
  double eps_eff = 0.0;
  double analytic_hz = 0.0;
  double measured_hz = 0.0;  // peak of Re(Z_in)
  double rel_error = 0.0;
  double tolerance = 0.05;
  long steps = 0;
  bool pass() const;
};

/// Probe-fed rectangular PEC patch on a grounded dielectric slab.
PatchOracleResult run_patch_oracle(double delta_m = 1e-3, int threads = 1);

/// Closed lossless PEC cavity seeded with an initial impulse.
struct EnergyDriftResult {
  long steps = 0;
  double max_drift_per_1000 = 0.0;  // relative to the invariant's first value
  double max_total_drift = 0.0;
  double tolerance_per_1000 = 1e-9;
  bool pass() const { return max_drift_per_1000 <= tolerance_per_1000; }
};

EnergyDriftResult run_energy_drift(long steps = 10000);

/// Plane-wave pulse in a one-cell periodic column, reflection off the CPML
/// measured against a reference column long enough to stay reflection-free.
struct CpmlReflectionResult {
  double reflection_db = 0.0;
  double tolerance_db = -60.0;
  bool pass() const { return reflection_db <= tolerance_db; }
};

CpmlReflectionResult run_cpml_reflection(int cpml_cells = 10);

/// Randomized property checks of the intra-band Kubo conductivity plus the
/// zero-chemical-potential DC closed form.
struct KuboPropertyResult {
  int samples = 0;
  int failures = 0;
  std::string first_failure;
  double dc_closed_form_error = 0.0;  // relative
  bool pass() const { return failures == 0 && dc_closed_form_error <= 1e-12; }
};

KuboPropertyResult run_kubo_properties(int samples = 1000, unsigned long long seed = 20260101);

/// One line per check, "PASS"/"FAIL" first.
std::vector<std::string> describe(const CavityOracleResult &r);
std::vector<std::string> describe(const DipoleOracleResult &r);
std::vector<std::string> describe(const PatchOracleResult &r);

}  // namespace glant
