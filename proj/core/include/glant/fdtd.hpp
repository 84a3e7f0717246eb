// Copyright 2026 The glant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "glant/scene.hpp"

namespace glant {

enum class Boundary { kPec, kPeriodic };

/// Convolutional PML (CFS, Roden-Gedney recursion). Applied on every axis
/// whose boundary is kPec when `cells` > 0.
struct CpmlParams {
  int cells = 10;
  int order = 3;
  double reflection = 1e-8;
  double kappa_max = 1.0;
  double alpha_max = 0.05;  // S/m, linearly graded to 0 at the outer wall

  bool operator==(const CpmlParams &) const = default;
};

struct SimConfig {
  double delta_m = 0.5e-3;
  double courant_factor = 0.99;
  double dt_s = 0.0;  // derived from delta and courant_factor by make()
  long max_steps = 100000;
  double decay_stop_db = -60.0;
  double decay_window_s = 1e-9;
  int check_interval = 100;  // instability sampling period, steps
  std::vector<double> recorded_frequencies_hz;
  CpmlParams cpml;
  std::array<Boundary, 3> boundary{Boundary::kPec, Boundary::kPec, Boundary::kPec};
  int threads = 1;

  void validate() const;
  static SimConfig make(double delta_m, double courant_factor = 0.99);
  bool operator==(const SimConfig &) const = default;
};

/// factor * delta / (c sqrt(3)).
double courant_dt(double delta_m, double factor);

struct CpmlAxis {
  int cells = 0;  // 0: inactive on this axis
  // Indexed by node position (E derivatives) and half position (H).
  std::vector<double> b_e, c_e, kinv_e;
  std::vector<double> b_h, c_h, kinv_h;
};

struct LumpedCoeffs {
  std::size_t index = 0;  // flat edge index
  int axis = 2;
  double ca = 1.0, cb = 0.0, cs = 0.0;  // cs scales the source voltage
  bool shorted = false;
};

/// Per-edge update coefficients expressed as per-material tables plus the
/// edge material map, CPML profiles and lumped-edge overrides.
struct UpdateCoeffs {
  double dt = 0.0;
  double delta = 0.0;
  double db = 0.0;  // dt / (mu0 delta)
  std::vector<double> ca, cb, eps_r;
  std::vector<bool> pec;
  std::array<std::vector<MaterialId>, 3> edge_material;
  std::array<CpmlAxis, 3> cpml;
  std::array<Boundary, 3> boundary{};
  std::vector<LumpedCoeffs> lumped;  // parallel to VoxelGrid::lumped()
  int threads = 1;
};

UpdateCoeffs init_coeffs(const VoxelGrid &grid, const SimConfig &cfg);

using Waveform = std::function<double(double)>;

/// Drives the resistive source of a lumped port edge (volts).
struct PortDrive {
  std::size_t lumped_index = 0;
  Waveform voltage;
};

/// Impressed current element I(t) (amperes) on a single edge, dipole moment
/// I * delta.
struct CurrentSource {
  Axis axis = Axis::kZ;
  int i = 0, j = 0, k = 0;
  Waveform current;
};

struct Sources {
  std::vector<PortDrive> ports;
  std::vector<CurrentSource> currents;
  double active_until_s = 0.0;  // decay detection starts after this time
};

struct FieldState {
  GridDims dims;
  std::array<std::vector<double>, 3> e, h;
  // CPML convolution memories, [field component][derivative axis]; empty
  // where inactive.
  std::array<std::array<std::vector<double>, 3>, 3> psi_e, psi_h;
  long step = 0;
  double time = 0.0;

  FieldState() = default;
  FieldState(const VoxelGrid &grid, const UpdateCoeffs &coeffs);
  bool operator==(const FieldState &) const = default;
};

/// One leapfrog step: H from curl E, then E from curl H with sources, lumped
/// elements and CPML corrections. E is at time (step+1)*dt afterwards and H
/// at (step+1/2)*dt.
void step(FieldState &fields, const UpdateCoeffs &coeffs, const Sources &sources);

/// Split halves of step(); update_e also advances the counters.
void update_h(FieldState &fields, const UpdateCoeffs &coeffs);
void update_e(FieldState &fields, const UpdateCoeffs &coeffs, const Sources &sources);

/// Discrete energy 1/2 sum eps E_a.E_b dV + 1/2 sum mu0 H.H dV. With E_a, E_b
/// the fields at consecutive integer steps and H at the half step between,
/// this is invariant in a closed lossless PEC cavity.
double yee_energy(const FieldState &fields, const UpdateCoeffs &coeffs,
                  const std::array<std::vector<double>, 3> &e_prev);

/// Discrete divergence of H at cell centres, max abs over the given cell box
/// [lo, hi), scaled by delta (so it has the units of H).
double max_div_h(const FieldState &fields, std::array<int, 3> lo, std::array<int, 3> hi);

class Recorder {
 public:
  virtual ~Recorder() = default;
  /// Called after every step with E at step*dt and H at (step - 1/2)*dt.
  virtual void record(const FieldState &fields, const UpdateCoeffs &coeffs) = 0;
};

/// Samples one E edge every step.
class ProbeRecorder : public Recorder {
 public:
  ProbeRecorder(const VoxelGrid &grid, Axis axis, int i, int j, int k);
  void record(const FieldState &fields, const UpdateCoeffs &coeffs) override;
  const std::vector<double> &samples() const { return samples_; }

 private:
  int axis_;
  std::size_t index_;
  std::vector<double> samples_;
};

/// Tracks the invariant energy of yee_energy() every step.
class EnergyRecorder : public Recorder {
 public:
  void record(const FieldState &fields, const UpdateCoeffs &coeffs) override;
  const std::vector<double> &samples() const { return samples_; }

 private:
  std::array<std::vector<double>, 3> e_prev_;
  std::vector<double> samples_;
};

enum class Termination { kDecayed, kMaxSteps };

struct RunResult {
  long steps = 0;
  Termination reason = Termination::kMaxSteps;
  bool warning = false;  // max_steps reached before the decay target
  std::string message;
};

/// Owns a grid's fields and coefficients for one run.
class Simulation {
 public:
  Simulation(const VoxelGrid &grid, SimConfig cfg, Sources sources);

  void step();
  /// Steps until the monitored signal decays `decay_stop_db` below its peak
  /// or max_steps is reached. The monitor is the first driven port's gap
  /// voltage, else the E edge passed to set_monitor().
  RunResult run(std::span<Recorder *const> recorders);

  void set_monitor(Axis axis, int i, int j, int k);

  /// Port voltage (V) across a lumped edge: -E * delta.
  double port_voltage(std::size_t lumped_index) const;
  /// Current (A) through the wire one cell above a lumped edge, from the
  /// circulation of H around it; positive along +axis.
  double port_loop_current(std::size_t lumped_index) const;

  const FieldState &fields() const { return fields_; }
  FieldState &fields() { return fields_; }
  const UpdateCoeffs &coeffs() const { return coeffs_; }
  const SimConfig &config() const { return cfg_; }
  const VoxelGrid &grid() const { return *grid_; }
  const Sources &sources() const { return sources_; }

 private:
  void check_finite() const;

  const VoxelGrid *grid_;
  SimConfig cfg_;
  Sources sources_;
  UpdateCoeffs coeffs_;
  FieldState fields_;
  std::size_t monitor_index_ = 0;
  int monitor_axis_ = 2;
  bool has_monitor_ = false;
};

/// Gap voltage and loop current helpers shared with the port recorder.
double lumped_voltage(const FieldState &f, const VoxelGrid &grid, const LumpedEdge &edge);
double lumped_loop_current(const FieldState &f, const VoxelGrid &grid, const LumpedEdge &edge);

}  // namespace glant
