// Copyright 2026 The glant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "glant/fdtd.hpp"

namespace glant {

/// Closed box of cell faces on which tangential E and H are accumulated by
/// running DFTs during time stepping. Face samples are interpolated to the
/// face-cell centres; H samples carry their half-step time offset.
class NtffSurface : public Recorder {
 public:
  /// Box faces lie on node planes lo[a] and hi[a].
  NtffSurface(const VoxelGrid &grid, std::array<int, 3> lo, std::array<int, 3> hi,
              std::vector<double> freqs_hz, double dt);

  /// Box `gap` cells inside the CPML on every face.
  static NtffSurface inside_pml(const VoxelGrid &grid, int gap, std::vector<double> freqs_hz,
                                double dt);

  void record(const FieldState &fields, const UpdateCoeffs &coeffs) override;

  /// Throws GeometryError unless every non-vacuum edge, lumped edge and the
  /// given extra edges lie strictly inside the box.
  void require_encloses(const VoxelGrid &grid) const;

  const std::vector<double> &freqs() const { return freqs_; }
  std::size_t freq_index(double f_hz) const;  // throws LookupError
  /// Time-averaged outward Poynting flux 1/2 Re sum (E x H*).n dS.
  double poynting_flux(std::size_t freq_index) const;
  long samples() const { return samples_; }

  struct Face {
    int axis = 0;  // normal
    int side = 1;  // +1 outward along +axis
    int plane = 0;
    int u_lo = 0, u_hi = 0, v_lo = 0, v_hi = 0;  // cell ranges on tangential axes
    int nu() const { return u_hi - u_lo; }
    int nv() const { return v_hi - v_lo; }
    // [freq][cell] accumulators
    std::vector<std::vector<std::complex<double>>> eu, ev, hu, hv;
  };
  const std::vector<Face> &faces() const { return faces_; }
  const VoxelGrid &grid() const { return *grid_; }

 private:
  const VoxelGrid *grid_;
  std::array<int, 3> lo_, hi_;
  std::vector<double> freqs_;
  double dt_;
  std::vector<Face> faces_;
  long samples_ = 0;
  std::vector<std::complex<double>> rot_e_, rot_h_;
};

/// r * E far-field coefficients on a uniform (theta, phi) grid, theta-major.
struct FarFieldPattern {
  double f_hz = 0.0;
  std::vector<double> theta_deg, phi_deg;
  std::vector<std::complex<double>> e_theta, e_phi;

  std::size_t index(std::size_t it, std::size_t ip) const { return it * phi_deg.size() + ip; }
  /// Radiation intensity |rE|^2 / (2 eta0), W/sr.
  double intensity(std::size_t n) const;
  /// Uniform grid theta = 0..180 inclusive, phi = 0..360-step; zero fields.
  static FarFieldPattern make_grid(double f_hz, double theta_step_deg, double phi_step_deg);
};

FarFieldPattern ntff_transform(const NtffSurface &surface, double f_hz, double theta_step_deg = 2.0,
                               double phi_step_deg = 2.0);

struct BeamPeak {
  double theta_deg = 0.0, phi_deg = 0.0;
  std::size_t it = 0, ip = 0;
  double resolution_deg = 0.0;
};

struct PatternMetrics {
  double gain_dbi = 0.0;
  double directivity_dbi = 0.0;
  BeamPeak peak;
  double front_to_back_db = 0.0;
  double radiated_power = 0.0;
  double accepted_power = 0.0;
};

/// Integral of U over the sphere (trapezoid in theta with sin weights,
/// rectangle in phi).
double radiated_power(const FarFieldPattern &p);

PatternMetrics directivity_and_gain(const FarFieldPattern &p, double accepted_power);

/// Grid point of maximum intensity; ties go to the smallest theta, then phi.
BeamPeak beam_peak(const FarFieldPattern &p);

double front_to_back(const FarFieldPattern &p);

struct NormalizedPattern {
  std::vector<double> theta_deg, phi_deg;
  std::vector<double> db;  // theta-major, max exactly 0
  BeamPeak peak;
  std::vector<double> theta_cut_db;  // theta = peak theta, all phi
  std::vector<double> phi_cut_db;    // phi = peak phi, all theta
  std::size_t index(std::size_t it, std::size_t ip) const { return it * phi_deg.size() + ip; }
};

NormalizedPattern normalize_pattern(const FarFieldPattern &p);

/// Pattern whose intensity reproduces a normalized one (E_phi = 0).
FarFieldPattern pattern_from_normalized(const NormalizedPattern &n, double f_hz);

}  // namespace glant
