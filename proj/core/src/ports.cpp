// Copyright 2026 The glant Authors
// SPDX-License-Identifier: Apache-2.0

#include "glant/ports.hpp"

#include <algorithm>
#include <cmath>

#include "glant/errors.hpp"

namespace glant {

namespace {
constexpr double kInvalidCurrent = 1e-15;
}

double SourceWaveform::spread() const {
  return std::sqrt(std::log(10.0)) / (phys::kPi * f_bw_hz);
}

double SourceWaveform::min_delay() const { return spread() * std::sqrt(std::log(1e8)); }

void SourceWaveform::validate() const {
  if (!(f0_hz >= 0.0) || !(f_bw_hz > 0.0) || !std::isfinite(f0_hz) || !std::isfinite(f_bw_hz))
    throw DomainError("source needs f0 >= 0 and f_bw > 0");
  if (!std::isfinite(amplitude_v)) throw DomainError("source amplitude must be finite");
  if (delay_s < min_delay() * (1.0 - 1e-12))
    throw DomainError("source delay too short: turn-on exceeds 1e-8 of peak");
}

SourceWaveform SourceWaveform::with_min_delay(double f0_hz, double f_bw_hz, double amplitude_v) {
  SourceWaveform w{f0_hz, f_bw_hz, amplitude_v, 0.0};
  w.delay_s = w.min_delay();
  return w;
}

double gaussian_modulated_pulse(double t, const SourceWaveform &w) {
  const double u = t - w.delay_s;
  const double s = u / w.spread();
  return w.amplitude_v * std::exp(-s * s) * std::sin(2.0 * phys::kPi * w.f0_hz * u);
}

PortRecorder::PortRecorder(const VoxelGrid &grid, std::size_t lumped_index, double z_ref)
    : grid_(&grid), edge_(grid.lumped().at(lumped_index)), z_ref_(z_ref) {}

void PortRecorder::record(const FieldState &fields, const UpdateCoeffs &) {
  v_.push_back(lumped_voltage(fields, *grid_, edge_));
  i_raw_.push_back(lumped_loop_current(fields, *grid_, edge_));
}

PortRecord PortRecorder::finish(double dt) const {
  PortRecord rec;
  rec.dt = dt;
  rec.z_ref = z_ref_;
  if (v_.size() < 2) return rec;
  const std::size_t n = v_.size() - 1;
  rec.v.assign(v_.begin(), v_.begin() + static_cast<std::ptrdiff_t>(n));
  rec.i.resize(n);
  for (std::size_t m = 0; m < n; ++m) rec.i[m] = 0.5 * (i_raw_[m] + i_raw_[m + 1]);
  return rec;
}

double PortSpectra::s11_db(std::size_t n) const { return 20.0 * std::log10(std::abs(S11[n])); }

std::vector<std::complex<double>> direct_dft(std::span<const double> x, double dt, double t0,
                                             std::span<const double> freqs) {
  std::vector<std::complex<double>> out(freqs.size());
  constexpr std::size_t kResync = 1024;
  for (std::size_t q = 0; q < freqs.size(); ++q) {
    const double w = 2.0 * phys::kPi * freqs[q];
    const std::complex<double> rot = std::polar(1.0, -w * dt);
    std::complex<double> phase;
    std::complex<double> acc;
    for (std::size_t m = 0; m < x.size(); ++m) {
      if (m % kResync == 0) phase = std::polar(1.0, -w * (t0 + m * dt));
      acc += x[m] * phase;
      phase *= rot;
    }
    out[q] = acc;
  }
  return out;
}

PortSpectra port_spectra(const PortRecord &rec, std::span<const double> freqs) {
  if (rec.v.size() != rec.i.size()) throw ExtractionError("port record lengths differ");
  if (!(rec.dt > 0.0)) throw ExtractionError("port record has no time step");
  if (!std::is_sorted(freqs.begin(), freqs.end())) throw ExtractionError("frequencies must ascend");
  PortSpectra s;
  s.z_ref = rec.z_ref;
  s.freqs.assign(freqs.begin(), freqs.end());
  s.V = direct_dft(rec.v, rec.dt, rec.dt, freqs);
  s.I = direct_dft(rec.i, rec.dt, rec.dt, freqs);
  const std::size_t n = freqs.size();
  s.Z.resize(n);
  s.S11.resize(n);
  s.valid.resize(n);
  for (std::size_t q = 0; q < n; ++q) {
    if (std::abs(s.I[q]) < kInvalidCurrent) {
      s.valid[q] = false;
      s.Z[q] = s.S11[q] = std::complex<double>(std::nan(""), std::nan(""));
      continue;
    }
    s.valid[q] = true;
    s.Z[q] = s.V[q] / s.I[q];
    s.S11[q] = (s.Z[q] - s.z_ref) / (s.Z[q] + s.z_ref);
  }
  return s;
}

namespace {

struct DbCurve {
  std::vector<double> f, db;
};

DbCurve valid_curve(const PortSpectra &s) {
  DbCurve c;
  for (std::size_t q = 0; q < s.freqs.size(); ++q) {
    if (!s.valid[q]) continue;
    c.f.push_back(s.freqs[q]);
    c.db.push_back(s.s11_db(q));
  }
  return c;
}

std::size_t argmin_first(const std::vector<double> &v) {
  std::size_t best = 0;
  for (std::size_t q = 1; q < v.size(); ++q)
    if (v[q] < v[best]) best = q;
  return best;
}

}  // namespace

double resonant_frequency(const PortSpectra &s) {
  const DbCurve c = valid_curve(s);
  if (c.f.empty()) throw ExtractionError("no valid S11 samples");
  if (c.f.size() < 3) throw ExtractionError("need at least 3 valid S11 samples");
  const std::size_t m = argmin_first(c.db);
  if (m == 0 || m + 1 == c.f.size()) return c.f[m];

  // Vertex of the parabola through the three samples around the minimum.
  const double x0 = c.f[m - 1], x1 = c.f[m], x2 = c.f[m + 1];
  const double y0 = c.db[m - 1], y1 = c.db[m], y2 = c.db[m + 1];
  const double d01 = (y1 - y0) / (x1 - x0);
  const double d12 = (y2 - y1) / (x2 - x1);
  const double curv = (d12 - d01) / (x2 - x0);
  if (!(curv > 0.0)) return x1;
  // p(x) = y0 + d01 (x - x0) + curv (x - x0)(x - x1)
  const double vertex = (x0 + x1) / 2.0 - d01 / (2.0 * curv);
  return std::clamp(vertex, x0, x2);
}

double fractional_bandwidth(const PortSpectra &s, double threshold_db) {
  if (!(threshold_db < 0.0)) throw DomainError("threshold must be < 0 dB");
  const DbCurve c = valid_curve(s);
  if (c.f.size() < 3) throw ExtractionError("need at least 3 valid S11 samples");
  const std::size_t m = argmin_first(c.db);
  if (!(c.db[m] < threshold_db)) return 0.0;

  const auto crossing = [&](std::size_t below, std::size_t above) {
    const double t = (threshold_db - c.db[below]) / (c.db[above] - c.db[below]);
    return c.f[below] + t * (c.f[above] - c.f[below]);
  };

  std::size_t lo = m;
  while (lo > 0 && c.db[lo - 1] < threshold_db) --lo;
  if (lo == 0) throw ExtractionError("band unresolved: lower edge below sampled range");
  std::size_t hi = m;
  while (hi + 1 < c.f.size() && c.db[hi + 1] < threshold_db) ++hi;
  if (hi + 1 == c.f.size()) throw ExtractionError("band unresolved: upper edge above sampled range");

  const double f_lo = crossing(lo, lo - 1);
  const double f_hi = crossing(hi, hi + 1);
  return (f_hi - f_lo) / resonant_frequency(s) * 100.0;
}

std::vector<double> linspace_freqs(double start_hz, double stop_hz, double step_hz) {
  if (!(step_hz > 0.0) || !(stop_hz >= start_hz)) throw DomainError("invalid frequency range");
  const auto n = static_cast<std::size_t>(std::floor((stop_hz - start_hz) / step_hz + 1e-9)) + 1;
  std::vector<double> out(n);
  for (std::size_t q = 0; q < n; ++q) out[q] = start_hz + q * step_hz;
  return out;
}

}  // namespace glant
