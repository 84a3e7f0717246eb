// Copyright 2026 The glant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "glant/fdtd.hpp"

namespace glant {

/// Gaussian-modulated sine. The Gaussian spread is chosen so the spectrum is
/// 20 dB below its peak at f0 +/- f_bw.
struct SourceWaveform {
  double f0_hz = phys::kDesignFrequency;
  double f_bw_hz = 3.5e9;
  double amplitude_v = 1.0;
  double delay_s = 0.0;

  double spread() const;
  /// Smallest delay for which the turn-on value is <= 1e-8 of the amplitude.
  double min_delay() const;
  /// Time after which the pulse is negligible (delay mirrored).
  double end_time() const { return 2.0 * delay_s; }
  void validate() const;

  /// Same waveform with delay_s = min_delay().
  static SourceWaveform with_min_delay(double f0_hz, double f_bw_hz, double amplitude_v = 1.0);
  bool operator==(const SourceWaveform &) const = default;
};

double gaussian_modulated_pulse(double t, const SourceWaveform &w);

/// Port time series. v[m] and i[m] both refer to t = (m + 1) * dt; the
/// current is the mean of the two half-step loop samples around it.
struct PortRecord {
  std::vector<double> v;
  std::vector<double> i;
  double dt = 0.0;
  double z_ref = 50.0;
};

/// Records gap voltage and the loop current one cell above the gap.
class PortRecorder : public Recorder {
 public:
  PortRecorder(const VoxelGrid &grid, std::size_t lumped_index, double z_ref);
  void record(const FieldState &fields, const UpdateCoeffs &coeffs) override;
  /// Half-step aligned record; drops the last voltage sample, which has no
  /// following current sample.
  PortRecord finish(double dt) const;

 private:
  const VoxelGrid *grid_;
  LumpedEdge edge_;
  double z_ref_;
  std::vector<double> v_, i_raw_;
};

struct PortSpectra {
  std::vector<double> freqs;
  std::vector<std::complex<double>> V, I, Z, S11;
  std::vector<bool> valid;
  double z_ref = 50.0;

  double s11_db(std::size_t n) const;
};

/// Direct DFT sum_m x[m] exp(-i 2 pi f t_m) at exactly the requested
/// frequencies (no dt factor).
std::vector<std::complex<double>> direct_dft(std::span<const double> x, double dt, double t0,
                                             std::span<const double> freqs);

PortSpectra port_spectra(const PortRecord &rec, std::span<const double> freqs);

/// Frequency of the global |S11| minimum with parabolic refinement in dB.
double resonant_frequency(const PortSpectra &s);

/// Percent bandwidth of the contiguous band around the global minimum where
/// |S11| is below threshold_db.
double fractional_bandwidth(const PortSpectra &s, double threshold_db = -10.0);

/// Evenly spaced frequencies [start, stop] inclusive.
std::vector<double> linspace_freqs(double start_hz, double stop_hz, double step_hz);

}  // namespace glant
