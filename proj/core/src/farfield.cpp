// Copyright 2026 The glant Authors
// SPDX-License-Identifier: Apache-2.0

#include "glant/farfield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "glant/errors.hpp"

namespace glant {

namespace {

using cplx = std::complex<double>;
constexpr double kDeg = phys::kPi / 180.0;
constexpr double kDbFloor = -300.0;

constexpr int next(int a) { return (a + 1) % 3; }
constexpr int prev(int a) { return (a + 2) % 3; }

std::size_t grid_index(const VoxelGrid &g, const std::array<int, 3> &p) {
  return g.index(p[0], p[1], p[2]);
}

}  // namespace

NtffSurface::NtffSurface(const VoxelGrid &grid, std::array<int, 3> lo, std::array<int, 3> hi,
                         std::vector<double> freqs_hz, double dt)
    : grid_(&grid), lo_(lo), hi_(hi), freqs_(std::move(freqs_hz)), dt_(dt) {
  const auto &d = grid.dims();
  for (int a = 0; a < 3; ++a) {
    if (lo[a] < 1 || hi[a] > d[a] - 1 || hi[a] - lo[a] < 2)
      throw GeometryError("NTFF box must lie strictly inside the grid");
  }
  if (freqs_.empty()) throw GeometryError("NTFF surface needs at least one frequency");
  for (int a = 0; a < 3; ++a) {
    const int u = next(a), v = prev(a);
    for (int side : {-1, 1}) {
      Face f;
      f.axis = a;
      f.side = side;
      f.plane = side < 0 ? lo[a] : hi[a];
      f.u_lo = lo[u];
      f.u_hi = hi[u];
      f.v_lo = lo[v];
      f.v_hi = hi[v];
      const std::size_t cells = static_cast<std::size_t>(f.nu()) * f.nv();
      for (auto *acc : {&f.eu, &f.ev, &f.hu, &f.hv}) acc->assign(freqs_.size(), std::vector<cplx>(cells));
      faces_.push_back(std::move(f));
    }
  }
  rot_e_.resize(freqs_.size());
  rot_h_.resize(freqs_.size());
}

NtffSurface NtffSurface::inside_pml(const VoxelGrid &grid, int gap, std::vector<double> freqs_hz,
                                    double dt) {
  const auto &d = grid.dims();
  const int off = grid.pml_cells() + gap;
  return NtffSurface(grid, {off, off, off}, {d.nx - off, d.ny - off, d.nz - off},
                     std::move(freqs_hz), dt);
}

void NtffSurface::require_encloses(const VoxelGrid &grid) const {
  for (int a = 0; a < 3; ++a) {
    const auto axis = static_cast<Axis>(a);
    const auto ext = grid.edge_extent(axis);
    for (int i = 0; i < ext[0]; ++i)
      for (int j = 0; j < ext[1]; ++j)
        for (int k = 0; k < ext[2]; ++k) {
          if (grid.material(axis, i, j, k) == 0) continue;
          const std::array<double, 3> mid{i + (a == 0 ? 0.5 : 0.0), j + (a == 1 ? 0.5 : 0.0),
                                          k + (a == 2 ? 0.5 : 0.0)};
          for (int b = 0; b < 3; ++b)
            if (!(mid[b] > lo_[b] && mid[b] < hi_[b]))
              throw GeometryError("NTFF box does not enclose all non-vacuum edges");
        }
  }
  for (const auto &l : grid.lumped()) {
    const std::array<int, 3> p{l.i, l.j, l.k};
    for (int b = 0; b < 3; ++b)
      if (!(p[b] > lo_[b] && p[b] < hi_[b]))
        throw GeometryError("NTFF box does not enclose the lumped elements");
  }
}

std::size_t NtffSurface::freq_index(double f_hz) const {
  for (std::size_t q = 0; q < freqs_.size(); ++q)
    if (std::abs(freqs_[q] - f_hz) <= 1e-9 * std::max(1.0, std::abs(f_hz))) return q;
  throw LookupError("frequency " + std::to_string(f_hz) + " Hz was not recorded");
}

void NtffSurface::record(const FieldState &fields, const UpdateCoeffs &) {
  // E at step*dt, H at (step - 1/2)*dt.
  const double t_e = fields.step * dt_;
  const double t_h = (fields.step - 0.5) * dt_;
  for (std::size_t q = 0; q < freqs_.size(); ++q) {
    const double w = 2.0 * phys::kPi * freqs_[q];
    rot_e_[q] = std::polar(1.0, -w * t_e);
    rot_h_[q] = std::polar(1.0, -w * t_h);
  }
  const std::size_t nf = freqs_.size();
  const VoxelGrid &g = *grid_;
  for (Face &f : faces_) {
    const int a = f.axis, u = next(a), v = prev(a);
    const auto &Eu = fields.e[u];
    const auto &Ev = fields.e[v];
    const auto &Hu = fields.h[u];
    const auto &Hv = fields.h[v];
    const std::size_t su = g.stride(u), sv = g.stride(v), sa = g.stride(a);
    std::size_t cell = 0;
    for (int iu = f.u_lo; iu < f.u_hi; ++iu) {
      for (int iv = f.v_lo; iv < f.v_hi; ++iv, ++cell) {
        std::array<int, 3> p{};
        p[a] = f.plane;
        p[u] = iu;
        p[v] = iv;
        const std::size_t n = grid_index(g, p);
        const double eu = 0.5 * (Eu[n] + Eu[n + sv]);
        const double ev = 0.5 * (Ev[n] + Ev[n + su]);
        const double hu = 0.25 * (Hu[n] + Hu[n + su] + Hu[n - sa] + Hu[n - sa + su]);
        const double hv = 0.25 * (Hv[n] + Hv[n + sv] + Hv[n - sa] + Hv[n - sa + sv]);
        for (std::size_t q = 0; q < nf; ++q) {
          f.eu[q][cell] += eu * rot_e_[q];
          f.ev[q][cell] += ev * rot_e_[q];
          f.hu[q][cell] += hu * rot_h_[q];
          f.hv[q][cell] += hv * rot_h_[q];
        }
      }
    }
  }
  ++samples_;
}

double NtffSurface::poynting_flux(std::size_t q) const {
  const double ds = grid_->delta() * grid_->delta();
  double flux = 0.0;
  for (const Face &f : faces_) {
    double acc = 0.0;
    for (std::size_t c = 0; c < f.eu[q].size(); ++c)
      acc += std::real(f.eu[q][c] * std::conj(f.hv[q][c]) - f.ev[q][c] * std::conj(f.hu[q][c]));
    flux += f.side * acc;
  }
  return 0.5 * flux * ds;
}

double FarFieldPattern::intensity(std::size_t n) const {
  return (std::norm(e_theta[n]) + std::norm(e_phi[n])) / (2.0 * phys::kEta0);
}

FarFieldPattern FarFieldPattern::make_grid(double f_hz, double theta_step_deg, double phi_step_deg) {
  if (!(theta_step_deg > 0.0) || !(phi_step_deg > 0.0)) throw DomainError("angular steps must be > 0");
  const double nt = 180.0 / theta_step_deg;
  const double np = 360.0 / phi_step_deg;
  if (std::abs(nt - std::round(nt)) > 1e-9 || std::abs(np - std::round(np)) > 1e-9)
    throw DomainError("angular steps must divide 180 and 360 degrees");
  FarFieldPattern p;
  p.f_hz = f_hz;
  for (long i = 0; i <= std::lround(nt); ++i) p.theta_deg.push_back(i * theta_step_deg);
  for (long i = 0; i < std::lround(np); ++i) p.phi_deg.push_back(i * phi_step_deg);
  p.e_theta.assign(p.theta_deg.size() * p.phi_deg.size(), cplx{});
  p.e_phi.assign(p.e_theta.size(), cplx{});
  return p;
}

FarFieldPattern ntff_transform(const NtffSurface &surface, double f_hz, double theta_step_deg,
                               double phi_step_deg) {
  const std::size_t q = surface.freq_index(f_hz);
  FarFieldPattern out = FarFieldPattern::make_grid(f_hz, theta_step_deg, phi_step_deg);
  const VoxelGrid &g = surface.grid();
  const double k0 = 2.0 * phys::kPi * f_hz / phys::kC0;
  const double ds = g.delta() * g.delta();
  const cplx jk(0.0, k0);

  // Equivalent currents per face: J = n x H, M = -n x E, in (u, v) components.
  struct Currents {
    std::vector<cplx> ju, jv, mu, mv;
    std::vector<double> uc, vc;
    double ac;
  };
  std::vector<Currents> cur;
  for (const auto &f : surface.faces()) {
    Currents c;
    const std::size_t n = f.eu[q].size();
    c.ju.resize(n);
    c.jv.resize(n);
    c.mu.resize(n);
    c.mv.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      c.ju[i] = -static_cast<double>(f.side) * f.hv[q][i] * ds;
      c.jv[i] = static_cast<double>(f.side) * f.hu[q][i] * ds;
      c.mu[i] = static_cast<double>(f.side) * f.ev[q][i] * ds;
      c.mv[i] = -static_cast<double>(f.side) * f.eu[q][i] * ds;
    }
    const int u = next(f.axis), v = prev(f.axis);
    for (int iu = f.u_lo; iu < f.u_hi; ++iu) c.uc.push_back(g.node_coord(u, iu + 0.5));
    for (int iv = f.v_lo; iv < f.v_hi; ++iv) c.vc.push_back(g.node_coord(v, iv + 0.5));
    c.ac = g.node_coord(f.axis, f.plane);
    cur.push_back(std::move(c));
  }

  std::vector<cplx> pu, pv;
  for (std::size_t it = 0; it < out.theta_deg.size(); ++it) {
    const double th = out.theta_deg[it] * kDeg;
    for (std::size_t ip = 0; ip < out.phi_deg.size(); ++ip) {
      const double ph = out.phi_deg[ip] * kDeg;
      const std::array<double, 3> r{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
                                    std::cos(th)};
      std::array<cplx, 3> N{}, L{};
      for (std::size_t fi = 0; fi < cur.size(); ++fi) {
        const auto &f = surface.faces()[fi];
        const Currents &c = cur[fi];
        const int a = f.axis, u = next(a), v = prev(a);
        pu.resize(c.uc.size());
        pv.resize(c.vc.size());
        for (std::size_t i = 0; i < pu.size(); ++i) pu[i] = std::exp(jk * (c.uc[i] * r[u]));
        for (std::size_t i = 0; i < pv.size(); ++i) pv[i] = std::exp(jk * (c.vc[i] * r[v]));
        cplx sju, sjv, smu, smv;
        const std::size_t nv = pv.size();
        for (std::size_t iu = 0; iu < pu.size(); ++iu) {
          cplx rju, rjv, rmu, rmv;
          const std::size_t base = iu * nv;
          for (std::size_t iv = 0; iv < nv; ++iv) {
            const cplx w = pv[iv];
            rju += c.ju[base + iv] * w;
            rjv += c.jv[base + iv] * w;
            rmu += c.mu[base + iv] * w;
            rmv += c.mv[base + iv] * w;
          }
          sju += rju * pu[iu];
          sjv += rjv * pu[iu];
          smu += rmu * pu[iu];
          smv += rmv * pu[iu];
        }
        const cplx pa = std::exp(jk * (c.ac * r[a]));
        N[u] += sju * pa;
        N[v] += sjv * pa;
        L[u] += smu * pa;
        L[v] += smv * pa;
      }
      const double ct = std::cos(th), st = std::sin(th), cp = std::cos(ph), sp = std::sin(ph);
      const cplx n_th = N[0] * ct * cp + N[1] * ct * sp - N[2] * st;
      const cplx n_ph = -N[0] * sp + N[1] * cp;
      const cplx l_th = L[0] * ct * cp + L[1] * ct * sp - L[2] * st;
      const cplx l_ph = -L[0] * sp + L[1] * cp;
      const cplx pre = jk / (4.0 * phys::kPi);
      const std::size_t n = out.index(it, ip);
      out.e_theta[n] = -pre * (l_ph + phys::kEta0 * n_th);
      out.e_phi[n] = pre * (l_th - phys::kEta0 * n_ph);
    }
  }
  return out;
}

double radiated_power(const FarFieldPattern &p) {
  const std::size_t nt = p.theta_deg.size(), np = p.phi_deg.size();
  if (nt < 2 || np < 1) throw MetricsError("pattern grid too small");
  const double dth = (p.theta_deg[1] - p.theta_deg[0]) * kDeg;
  const double dph = 360.0 / static_cast<double>(np) * kDeg;
  double total = 0.0;
  for (std::size_t it = 0; it < nt; ++it) {
    const double w = (it == 0 || it + 1 == nt) ? 0.5 : 1.0;
    const double s = std::sin(p.theta_deg[it] * kDeg);
    double ring = 0.0;
    for (std::size_t ip = 0; ip < np; ++ip) ring += p.intensity(p.index(it, ip));
    total += w * s * ring;
  }
  return total * dth * dph;
}

namespace {

BeamPeak argmax(const FarFieldPattern &p) {
  BeamPeak best;
  double umax = -1.0;
  for (std::size_t it = 0; it < p.theta_deg.size(); ++it)
    for (std::size_t ip = 0; ip < p.phi_deg.size(); ++ip) {
      const double u = p.intensity(p.index(it, ip));
      if (u > umax) {
        umax = u;
        best.it = it;
        best.ip = ip;
      }
    }
  best.theta_deg = p.theta_deg[best.it];
  best.phi_deg = p.phi_deg[best.ip];
  best.resolution_deg = std::max(p.theta_deg.size() > 1 ? p.theta_deg[1] - p.theta_deg[0] : 0.0,
                                 360.0 / static_cast<double>(p.phi_deg.size()));
  return best;
}

double antipode_ratio_db(const FarFieldPattern &p, const BeamPeak &peak) {
  const double dth = p.theta_deg[1] - p.theta_deg[0];
  const double dph = 360.0 / static_cast<double>(p.phi_deg.size());
  const double th = 180.0 - peak.theta_deg;
  const double ph = std::fmod(peak.phi_deg + 180.0, 360.0);
  const auto it = static_cast<std::size_t>(std::lround(th / dth));
  const auto ip = static_cast<std::size_t>(std::lround(ph / dph)) % p.phi_deg.size();
  const double front = p.intensity(p.index(peak.it, peak.ip));
  const double back = p.intensity(p.index(std::min(it, p.theta_deg.size() - 1), ip));
  if (back <= 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(front / back);
}

}  // namespace

BeamPeak beam_peak(const FarFieldPattern &p) {
  if (p.theta_deg.empty() || p.phi_deg.empty()) throw MetricsError("empty pattern");
  const BeamPeak best = argmax(p);
  double umin = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < p.e_theta.size(); ++n) umin = std::min(umin, p.intensity(n));
  const double umax = p.intensity(p.index(best.it, best.ip));
  if (!(umax > 0.0)) throw MetricsError("no distinct peak: zero pattern");
  if (umax < umin * (1.0 + 1e-9)) throw MetricsError("no distinct peak: flat pattern");
  return best;
}

double front_to_back(const FarFieldPattern &p) { return antipode_ratio_db(p, beam_peak(p)); }

PatternMetrics directivity_and_gain(const FarFieldPattern &p, double accepted_power) {
  if (!(accepted_power > 0.0)) throw MetricsError("accepted power must be > 0");
  PatternMetrics m;
  m.radiated_power = radiated_power(p);
  if (!(m.radiated_power > 0.0)) throw MetricsError("zero pattern");
  m.accepted_power = accepted_power;
  m.peak = argmax(p);
  const double umax = p.intensity(p.index(m.peak.it, m.peak.ip));
  m.directivity_dbi = 10.0 * std::log10(4.0 * phys::kPi * umax / m.radiated_power);
  m.gain_dbi = 10.0 * std::log10(4.0 * phys::kPi * umax / accepted_power);
  m.front_to_back_db = antipode_ratio_db(p, m.peak);
  return m;
}

NormalizedPattern normalize_pattern(const FarFieldPattern &p) {
  NormalizedPattern out;
  out.peak = beam_peak(p);
  out.theta_deg = p.theta_deg;
  out.phi_deg = p.phi_deg;
  const double umax = p.intensity(p.index(out.peak.it, out.peak.ip));
  out.db.resize(p.e_theta.size());
  for (std::size_t n = 0; n < out.db.size(); ++n) {
    const double u = p.intensity(n);
    out.db[n] = u > 0.0 ? std::max(kDbFloor, 10.0 * std::log10(u / umax)) : kDbFloor;
  }
  out.db[out.index(out.peak.it, out.peak.ip)] = 0.0;
  for (std::size_t ip = 0; ip < p.phi_deg.size(); ++ip)
    out.theta_cut_db.push_back(out.db[out.index(out.peak.it, ip)]);
  for (std::size_t it = 0; it < p.theta_deg.size(); ++it)
    out.phi_cut_db.push_back(out.db[out.index(it, out.peak.ip)]);
  return out;
}

FarFieldPattern pattern_from_normalized(const NormalizedPattern &n, double f_hz) {
  FarFieldPattern p;
  p.f_hz = f_hz;
  p.theta_deg = n.theta_deg;
  p.phi_deg = n.phi_deg;
  p.e_theta.resize(n.db.size());
  p.e_phi.assign(n.db.size(), cplx{});
  for (std::size_t i = 0; i < n.db.size(); ++i)
    p.e_theta[i] = std::sqrt(2.0 * phys::kEta0 * std::pow(10.0, n.db[i] / 10.0));
  return p;
}

}  // namespace glant
