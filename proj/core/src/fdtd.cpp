// Copyright 2026 The glant Authors
// SPDX-License-Identifier: Apache-2.0

#include "glant/fdtd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "glant/errors.hpp"

namespace glant {

namespace {

using std::ptrdiff_t;

struct Range {
  int lo = 0, hi = 0;  // [lo, hi)
  bool empty() const { return hi <= lo; }
};
using Box3 = std::array<Range, 3>;

struct Layout {
  std::array<int, 3> n;
  std::array<ptrdiff_t, 3> stride;

  explicit Layout(const GridDims &d)
      : n{d.nx, d.ny, d.nz},
        stride{static_cast<ptrdiff_t>(d.ny + 1) * (d.nz + 1), static_cast<ptrdiff_t>(d.nz + 1), 1} {}
  ptrdiff_t index(int i, int j, int k) const { return i * stride[0] + j * stride[1] + k; }
};

constexpr int next(int a) { return (a + 1) % 3; }
constexpr int prev(int a) { return (a + 2) % 3; }

// Splits [lo, hi) along x across worker threads. Partitions never overlap
// and there are no reductions, so results are independent of `threads`.
template <class F>
void parallel_x(int threads, Range r, F &&body) {
  const int len = r.hi - r.lo;
  if (threads <= 1 || len < 2 * threads) {
    body(r);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads - 1);
  const int chunk = (len + threads - 1) / threads;
  for (int t = 1; t < threads; ++t) {
    Range sub{r.lo + t * chunk, std::min(r.hi, r.lo + (t + 1) * chunk)};
    if (!sub.empty()) pool.emplace_back([&body, sub] { body(sub); });
  }
  body(Range{r.lo, std::min(r.hi, r.lo + chunk)});
}

// --- E update -------------------------------------------------------------

struct AxisPiece {
  Range range;
  ptrdiff_t back;  // offset to the H sample half a cell behind
};

std::vector<AxisPiece> e_transverse_pieces(const Layout &L, Boundary b, int axis) {
  if (b == Boundary::kPeriodic)
    return {{{0, 1}, -static_cast<ptrdiff_t>(L.n[axis] - 1) * L.stride[axis]},
            {{1, L.n[axis]}, L.stride[axis]}};
  return {{{1, L.n[axis]}, L.stride[axis]}};
}

void e_kernel(double *__restrict e, const double *__restrict hq, const double *__restrict hp,
              const MaterialId *__restrict mat, const double *__restrict ca,
              const double *__restrict cb, const Layout &L, const Box3 &box, ptrdiff_t back_p,
              ptrdiff_t back_q) {
  for (int i = box[0].lo; i < box[0].hi; ++i) {
    for (int j = box[1].lo; j < box[1].hi; ++j) {
      const ptrdiff_t row = L.index(i, j, 0);
      for (int k = box[2].lo; k < box[2].hi; ++k) {
        const ptrdiff_t n = row + k;
        const double curl = (hq[n] - hq[n - back_p]) - (hp[n] - hp[n - back_q]);
        const MaterialId m = mat[n];
        e[n] = ca[m] * e[n] + cb[m] * curl;
      }
    }
  }
}

void h_kernel(double *__restrict h, const double *__restrict eq, const double *__restrict ep,
              double db, const Layout &L, const Box3 &box, ptrdiff_t fwd_p, ptrdiff_t fwd_q) {
  for (int i = box[0].lo; i < box[0].hi; ++i) {
    for (int j = box[1].lo; j < box[1].hi; ++j) {
      const ptrdiff_t row = L.index(i, j, 0);
      for (int k = box[2].lo; k < box[2].hi; ++k) {
        const ptrdiff_t n = row + k;
        const double curl = (eq[n + fwd_p] - eq[n]) - (ep[n + fwd_q] - ep[n]);
        h[n] -= db * curl;
      }
    }
  }
}

// --- CPML bookkeeping -------------------------------------------------------

int psi_slot(int pos, int n, int cells) { return pos <= cells ? pos : pos - (n - cells) + cells + 1; }

std::array<int, 3> psi_dims(const Layout &L, int axis, int cells) {
  std::array<int, 3> d{L.n[0] + 1, L.n[1] + 1, L.n[2] + 1};
  d[axis] = 2 * (cells + 1);
  return d;
}

// Applies the CPML correction for field component `c` along derivative axis
// `a` over `box`. For E the derivative is H[n] - H[n - s_a]; for H it is
// E[n + s_a] - E[n].
template <bool kIsE>
void cpml_correct(double *__restrict field, const double *__restrict other, double *__restrict psi,
                  const std::array<int, 3> &pdims, const CpmlAxis &prof, int a, int cells,
                  const Layout &L, const Box3 &box, double sign, const MaterialId *mat,
                  const double *cb, double db) {
  const auto &bv = kIsE ? prof.b_e : prof.b_h;
  const auto &cv = kIsE ? prof.c_e : prof.c_h;
  const auto &kv = kIsE ? prof.kinv_e : prof.kinv_h;
  const ptrdiff_t sa = L.stride[a];
  for (int i = box[0].lo; i < box[0].hi; ++i) {
    for (int j = box[1].lo; j < box[1].hi; ++j) {
      for (int k = box[2].lo; k < box[2].hi; ++k) {
        const std::array<int, 3> pos{i, j, k};
        const int p = pos[a];
        std::array<int, 3> q = pos;
        q[a] = psi_slot(p, L.n[a], cells);
        const ptrdiff_t pi = (static_cast<ptrdiff_t>(q[0]) * pdims[1] + q[1]) * pdims[2] + q[2];
        const ptrdiff_t n = L.index(i, j, k);
        const double d = kIsE ? other[n] - other[n - sa] : other[n + sa] - other[n];
        psi[pi] = bv[p] * psi[pi] + cv[p] * d;
        const double corr = (kv[p] - 1.0) * d + psi[pi];
        if constexpr (kIsE) {
          field[n] += sign * cb[mat[n]] * corr;
        } else {
          field[n] -= sign * db * corr;
        }
      }
    }
  }
}

double curl_h_at(const FieldState &f, const Layout &L, int c, ptrdiff_t n) {
  const int p = next(c), q = prev(c);
  const auto &hq = f.h[q];
  const auto &hp = f.h[p];
  return (hq[n] - hq[n - L.stride[p]]) - (hp[n] - hp[n - L.stride[q]]);
}

}  // namespace

// ---------------------------------------------------------------------------

double courant_dt(double delta_m, double factor) {
  if (!(delta_m > 0.0) || !std::isfinite(delta_m)) throw DomainError("delta must be > 0");
  if (!(factor > 0.0 && factor <= 1.0)) throw DomainError("courant factor must be in (0, 1]");
  return factor * delta_m / (phys::kC0 * std::sqrt(3.0));
}

SimConfig SimConfig::make(double delta_m, double courant_factor) {
  SimConfig cfg;
  cfg.delta_m = delta_m;
  cfg.courant_factor = courant_factor;
  cfg.dt_s = courant_dt(delta_m, courant_factor);
  return cfg;
}

void SimConfig::validate() const {
  if (!(delta_m > 0.0)) throw ConfigError("sim.delta", "must be > 0");
  if (!(courant_factor > 0.0 && courant_factor <= 1.0))
    throw ConfigError("sim.courant_factor", "must be in (0, 1]");
  if (!(dt_s > 0.0) || dt_s > courant_dt(delta_m, 1.0) * (1.0 + 1e-12))
    throw ConfigError("sim.dt", "exceeds the Courant limit");
  if (max_steps <= 0) throw ConfigError("sim.max_steps", "must be > 0");
  if (!(decay_stop_db < 0.0)) throw ConfigError("sim.decay_stop_db", "must be < 0");
  if (check_interval <= 0) throw ConfigError("sim.check_interval", "must be > 0");
  if (cpml.cells < 0 || cpml.order < 0 || !(cpml.reflection > 0.0 && cpml.reflection < 1.0) ||
      cpml.kappa_max < 1.0 || cpml.alpha_max < 0.0)
    throw ConfigError("sim.cpml", "invalid CPML parameters");
  for (double f : recorded_frequencies_hz)
    if (!(f > 0.0)) throw ConfigError("sim.recorded_frequencies", "must be > 0");
  if (threads < 1) throw ConfigError("sim.threads", "must be >= 1");
}

UpdateCoeffs init_coeffs(const VoxelGrid &grid, const SimConfig &cfg) {
  cfg.validate();
  if (std::abs(cfg.delta_m - grid.delta()) > 1e-12 * grid.delta())
    throw ConfigError("sim.delta", "does not match the grid spacing");

  UpdateCoeffs c;
  c.dt = cfg.dt_s;
  c.delta = grid.delta();
  c.db = c.dt / (phys::kMu0 * c.delta);
  c.boundary = cfg.boundary;
  c.threads = cfg.threads;

  const auto &table = grid.material_table();
  for (const auto &m : table) {
    const EdgeMedium med = resolve_edge_medium(m, c.delta);
    const double eps = phys::kEps0 * med.eps_r;
    const double k = med.sigma * c.dt / (2.0 * eps);
    c.eps_r.push_back(med.eps_r);
    c.pec.push_back(med.pec);
    if (med.pec) {
      c.ca.push_back(0.0);
      c.cb.push_back(0.0);
    } else {
      c.ca.push_back((1.0 - k) / (1.0 + k));
      c.cb.push_back(c.dt / (eps * c.delta) / (1.0 + k));
    }
  }
  for (int a = 0; a < 3; ++a) {
    c.edge_material[a] = grid.materials(static_cast<Axis>(a));
    for (MaterialId id : c.edge_material[a])
      if (id >= table.size()) throw ConfigError("grid", "edge references unknown material id " + std::to_string(id));
  }

  const GridDims &d = grid.dims();
  for (int a = 0; a < 3; ++a) {
    CpmlAxis &ax = c.cpml[a];
    if (cfg.boundary[a] != Boundary::kPec || cfg.cpml.cells == 0) continue;
    const int n = d[a];
    const int cells = cfg.cpml.cells;
    if (n <= 2 * cells + 1)
      throw ConfigError("sim.cpml.cells", "PML layers overlap on axis " + std::to_string(a));
    ax.cells = cells;
    const double thickness = cells * c.delta;
    const double m = cfg.cpml.order;
    const double sigma_max = -(m + 1.0) * std::log(cfg.cpml.reflection) / (2.0 * phys::kEta0 * thickness);
    const auto fill = [&](double pos, double &b, double &cc, double &kinv) {
      double depth = 0.0;
      if (pos < cells) depth = cells - pos;
      else if (pos > n - cells) depth = pos - (n - cells);
      const double x = depth / cells;
      if (depth <= 0.0) {
        b = 1.0;
        cc = 0.0;
        kinv = 1.0;
        return;
      }
      const double sigma = sigma_max * std::pow(x, m);
      const double kappa = 1.0 + (cfg.cpml.kappa_max - 1.0) * std::pow(x, m);
      const double alpha = cfg.cpml.alpha_max * (1.0 - x);
      b = std::exp(-(sigma / kappa + alpha) * c.dt / phys::kEps0);
      cc = sigma > 0.0 ? sigma / (sigma * kappa + kappa * kappa * alpha) * (b - 1.0) : 0.0;
      kinv = 1.0 / kappa;
    };
    ax.b_e.resize(n + 1);
    ax.c_e.resize(n + 1);
    ax.kinv_e.resize(n + 1);
    ax.b_h.resize(n);
    ax.c_h.resize(n);
    ax.kinv_h.resize(n);
    for (int p = 0; p <= n; ++p) fill(p, ax.b_e[p], ax.c_e[p], ax.kinv_e[p]);
    for (int p = 0; p < n; ++p) fill(p + 0.5, ax.b_h[p], ax.c_h[p], ax.kinv_h[p]);
  }

  for (const auto &le : grid.lumped()) {
    const int a = static_cast<int>(le.axis);
    const auto ext = grid.edge_extent(le.axis);
    if (le.i < 0 || le.j < 0 || le.k < 0 || le.i >= ext[0] || le.j >= ext[1] || le.k >= ext[2])
      throw ConfigError("grid.lumped", "lumped edge outside the grid");
    LumpedCoeffs lc;
    lc.index = grid.index(le.i, le.j, le.k);
    lc.axis = a;
    const MaterialId id = grid.material(le.axis, le.i, le.j, le.k);
    const EdgeMedium med = resolve_edge_medium(table[id], c.delta);
    if (med.pec) throw ConfigError("grid.lumped", "lumped edge sits on a PEC edge");
    if (le.resistance < 0.0) throw ConfigError("grid.lumped", "negative resistance");
    if (le.resistance == 0.0) {
      lc.shorted = true;
      lc.ca = lc.cb = lc.cs = 0.0;
    } else {
      const double eps = phys::kEps0 * med.eps_r;
      const double sigma_r = 1.0 / (le.resistance * c.delta);
      const double k = (med.sigma + sigma_r) * c.dt / (2.0 * eps);
      lc.ca = (1.0 - k) / (1.0 + k);
      lc.cb = c.dt / (eps * c.delta) / (1.0 + k);
      lc.cs = c.dt / eps / (1.0 + k) / (le.resistance * c.delta * c.delta);
    }
    c.lumped.push_back(lc);
  }
  return c;
}

FieldState::FieldState(const VoxelGrid &grid, const UpdateCoeffs &coeffs) : dims(grid.dims()) {
  for (auto &v : e) v.assign(dims.nodes(), 0.0);
  for (auto &v : h) v.assign(dims.nodes(), 0.0);
  const Layout L(dims);
  for (int a = 0; a < 3; ++a) {
    const int cells = coeffs.cpml[a].cells;
    if (cells == 0) continue;
    const auto pd = psi_dims(L, a, cells);
    const std::size_t size = static_cast<std::size_t>(pd[0]) * pd[1] * pd[2];
    for (int c = 0; c < 3; ++c) {
      if (c == a) continue;
      psi_e[c][a].assign(size, 0.0);
      psi_h[c][a].assign(size, 0.0);
    }
  }
}

void update_h(FieldState &f, const UpdateCoeffs &coeffs) {
  const Layout L(f.dims);
  const int threads = coeffs.threads;
  for (int c = 0; c < 3; ++c) {
    const int p = next(c), q = prev(c);
    Box3 box;
    box[c] = {0, L.n[c] + 1};
    box[p] = {0, L.n[p]};
    box[q] = {0, L.n[q]};
    double *h = f.h[c].data();
    const double *eq = f.e[q].data();
    const double *ep = f.e[p].data();
    parallel_x(threads, box[0], [&](Range r) {
      Box3 b = box;
      b[0] = r;
      h_kernel(h, eq, ep, coeffs.db, L, b, L.stride[p], L.stride[q]);
    });
  }
  for (int c = 0; c < 3; ++c) {
    for (int a = 0; a < 3; ++a) {
      if (a == c) continue;
      const CpmlAxis &prof = coeffs.cpml[a];
      if (prof.cells == 0) continue;
      const int p = next(c), q = prev(c);
      const int other = (a == p) ? q : p;  // E component differentiated
      const double sign = (a == p) ? 1.0 : -1.0;
      const int b = 3 - a - c;
      const auto pd = psi_dims(L, a, prof.cells);
      for (const Range slab : {Range{0, prof.cells}, Range{L.n[a] - prof.cells, L.n[a]}}) {
        Box3 box;
        box[c] = {0, L.n[c] + 1};
        box[b] = {0, L.n[b]};
        box[a] = slab;
        cpml_correct<false>(f.h[c].data(), f.e[other].data(), f.psi_h[c][a].data(), pd, prof, a,
                            prof.cells, L, box, sign, nullptr, nullptr, coeffs.db);
      }
    }
  }
}

void update_e(FieldState &f, const UpdateCoeffs &coeffs, const Sources &sources) {
  const Layout L(f.dims);
  const double t_half = (f.step + 0.5) * coeffs.dt;

  std::vector<double> e_old(coeffs.lumped.size());
  for (std::size_t l = 0; l < coeffs.lumped.size(); ++l)
    e_old[l] = f.e[coeffs.lumped[l].axis][coeffs.lumped[l].index];

  for (int c = 0; c < 3; ++c) {
    const int p = next(c), q = prev(c);
    const auto pieces_p = e_transverse_pieces(L, coeffs.boundary[p], p);
    const auto pieces_q = e_transverse_pieces(L, coeffs.boundary[q], q);
    double *e = f.e[c].data();
    const double *hq = f.h[q].data();
    const double *hp = f.h[p].data();
    const MaterialId *mat = coeffs.edge_material[c].data();
    for (const auto &pp : pieces_p) {
      for (const auto &pq : pieces_q) {
        Box3 box;
        box[c] = {0, L.n[c]};
        box[p] = pp.range;
        box[q] = pq.range;
        parallel_x(coeffs.threads, box[0], [&](Range r) {
          Box3 b = box;
          b[0] = r;
          e_kernel(e, hq, hp, mat, coeffs.ca.data(), coeffs.cb.data(), L, b, pp.back, pq.back);
        });
      }
    }
  }

  for (int c = 0; c < 3; ++c) {
    for (int a = 0; a < 3; ++a) {
      if (a == c) continue;
      const CpmlAxis &prof = coeffs.cpml[a];
      if (prof.cells == 0) continue;
      const int p = next(c), q = prev(c);
      const int other = (a == p) ? q : p;  // H component differentiated
      const double sign = (a == p) ? 1.0 : -1.0;
      const int b = 3 - a - c;
      const auto pd = psi_dims(L, a, prof.cells);
      const Range b_range = coeffs.boundary[b] == Boundary::kPeriodic ? Range{0, L.n[b]}
                                                                       : Range{1, L.n[b]};
      for (const Range slab : {Range{1, prof.cells + 1}, Range{L.n[a] - prof.cells, L.n[a]}}) {
        Box3 box;
        box[c] = {0, L.n[c]};
        box[b] = b_range;
        box[a] = slab;
        cpml_correct<true>(f.e[c].data(), f.h[other].data(), f.psi_e[c][a].data(), pd, prof, a,
                           prof.cells, L, box, sign, coeffs.edge_material[c].data(),
                           coeffs.cb.data(), 0.0);
      }
    }
  }

  for (std::size_t l = 0; l < coeffs.lumped.size(); ++l) {
    const LumpedCoeffs &lc = coeffs.lumped[l];
    double &e = f.e[lc.axis][lc.index];
    if (lc.shorted) {
      e = 0.0;
      continue;
    }
    e = lc.ca * e_old[l] + lc.cb * curl_h_at(f, L, lc.axis, static_cast<ptrdiff_t>(lc.index));
  }
  for (const auto &drive : sources.ports) {
    const LumpedCoeffs &lc = coeffs.lumped.at(drive.lumped_index);
    if (lc.shorted) continue;
    f.e[lc.axis][lc.index] -= lc.cs * drive.voltage(t_half);
  }
  for (const auto &src : sources.currents) {
    const int a = static_cast<int>(src.axis);
    const ptrdiff_t n = L.index(src.i, src.j, src.k);
    f.e[a][n] -= coeffs.cb[coeffs.edge_material[a][n]] * src.current(t_half) / coeffs.delta;
  }

  // Periodic axes: the last node plane mirrors plane 0.
  for (int a = 0; a < 3; ++a) {
    if (coeffs.boundary[a] != Boundary::kPeriodic) continue;
    for (int c = 0; c < 3; ++c) {
      if (c == a) continue;
      auto &e = f.e[c];
      Box3 box{Range{0, L.n[0] + 1}, Range{0, L.n[1] + 1}, Range{0, L.n[2] + 1}};
      box[a] = {0, 1};
      const ptrdiff_t shift = static_cast<ptrdiff_t>(L.n[a]) * L.stride[a];
      for (int i = box[0].lo; i < box[0].hi; ++i)
        for (int j = box[1].lo; j < box[1].hi; ++j)
          for (int k = box[2].lo; k < box[2].hi; ++k) {
            const ptrdiff_t n = L.index(i, j, k);
            e[n + shift] = e[n];
          }
    }
  }

  ++f.step;
  f.time = f.step * coeffs.dt;
}

void step(FieldState &fields, const UpdateCoeffs &coeffs, const Sources &sources) {
  update_h(fields, coeffs);
  update_e(fields, coeffs, sources);
}

double yee_energy(const FieldState &f, const UpdateCoeffs &coeffs,
                  const std::array<std::vector<double>, 3> &e_prev) {
  const Layout L(f.dims);
  const double dv = coeffs.delta * coeffs.delta * coeffs.delta;
  double we = 0.0, wm = 0.0;
  for (int c = 0; c < 3; ++c) {
    // Skip the duplicated last plane of periodic axes.
    std::array<int, 3> hi_e{}, hi_h{};
    for (int a = 0; a < 3; ++a) {
      const bool periodic = coeffs.boundary[a] == Boundary::kPeriodic;
      hi_e[a] = a == c ? L.n[a] : (periodic ? L.n[a] : L.n[a] + 1);
      hi_h[a] = a == c ? (periodic ? L.n[a] : L.n[a] + 1) : L.n[a];
    }
    const auto &mat = coeffs.edge_material[c];
    for (int i = 0; i < hi_e[0]; ++i)
      for (int j = 0; j < hi_e[1]; ++j)
        for (int k = 0; k < hi_e[2]; ++k) {
          const ptrdiff_t n = L.index(i, j, k);
          we += coeffs.eps_r[mat[n]] * f.e[c][n] * e_prev[c][n];
        }
    for (int i = 0; i < hi_h[0]; ++i)
      for (int j = 0; j < hi_h[1]; ++j)
        for (int k = 0; k < hi_h[2]; ++k) {
          const ptrdiff_t n = L.index(i, j, k);
          wm += f.h[c][n] * f.h[c][n];
        }
  }
  return 0.5 * dv * (phys::kEps0 * we + phys::kMu0 * wm);
}

double max_div_h(const FieldState &f, std::array<int, 3> lo, std::array<int, 3> hi) {
  const Layout L(f.dims);
  double worst = 0.0;
  for (int i = lo[0]; i < hi[0]; ++i)
    for (int j = lo[1]; j < hi[1]; ++j)
      for (int k = lo[2]; k < hi[2]; ++k) {
        const ptrdiff_t n = L.index(i, j, k);
        const double div = (f.h[0][n + L.stride[0]] - f.h[0][n]) +
                           (f.h[1][n + L.stride[1]] - f.h[1][n]) + (f.h[2][n + 1] - f.h[2][n]);
        worst = std::max(worst, std::abs(div));
      }
  return worst;
}

// ---------------------------------------------------------------------------

ProbeRecorder::ProbeRecorder(const VoxelGrid &grid, Axis axis, int i, int j, int k)
    : axis_(static_cast<int>(axis)), index_(grid.index(i, j, k)) {}

void ProbeRecorder::record(const FieldState &fields, const UpdateCoeffs &) {
  samples_.push_back(fields.e[axis_][index_]);
}

void EnergyRecorder::record(const FieldState &fields, const UpdateCoeffs &coeffs) {
  if (e_prev_[0].empty()) {
    for (int c = 0; c < 3; ++c) e_prev_[c].assign(fields.e[c].size(), 0.0);
  }
  samples_.push_back(yee_energy(fields, coeffs, e_prev_));
  e_prev_ = fields.e;
}

double lumped_voltage(const FieldState &f, const VoxelGrid &grid, const LumpedEdge &edge) {
  return -f.e[static_cast<int>(edge.axis)][grid.index(edge.i, edge.j, edge.k)] * grid.delta();
}

double lumped_loop_current(const FieldState &f, const VoxelGrid &grid, const LumpedEdge &edge) {
  const int c = static_cast<int>(edge.axis);
  std::array<int, 3> pos{edge.i, edge.j, edge.k};
  pos[c] += 1;
  const Layout L(f.dims);
  return curl_h_at(f, L, c, L.index(pos[0], pos[1], pos[2])) * grid.delta();
}

Simulation::Simulation(const VoxelGrid &grid, SimConfig cfg, Sources sources)
    : grid_(&grid), cfg_(std::move(cfg)), sources_(std::move(sources)) {
  if (cfg_.dt_s <= 0.0) cfg_.dt_s = courant_dt(cfg_.delta_m, cfg_.courant_factor);
  coeffs_ = init_coeffs(grid, cfg_);
  fields_ = FieldState(grid, coeffs_);
  for (const auto &d : sources_.ports) {
    if (d.lumped_index >= grid.lumped().size())
      throw ConfigError("sources", "port drive references a missing lumped edge");
  }
  for (const auto &s : sources_.currents) {
    const auto ext = grid.edge_extent(s.axis);
    if (s.i < 0 || s.j < 0 || s.k < 0 || s.i >= ext[0] || s.j >= ext[1] || s.k >= ext[2])
      throw ConfigError("sources", "current source outside the grid");
  }
  const auto &d = grid.dims();
  monitor_index_ = grid.index(d.nx / 2, d.ny / 2, d.nz / 2);
}

void Simulation::set_monitor(Axis axis, int i, int j, int k) {
  monitor_axis_ = static_cast<int>(axis);
  monitor_index_ = grid_->index(i, j, k);
  has_monitor_ = true;
}

void Simulation::step() { glant::step(fields_, coeffs_, sources_); }

double Simulation::port_voltage(std::size_t l) const {
  return lumped_voltage(fields_, *grid_, grid_->lumped().at(l));
}

double Simulation::port_loop_current(std::size_t l) const {
  return lumped_loop_current(fields_, *grid_, grid_->lumped().at(l));
}

void Simulation::check_finite() const {
  constexpr double kOverflow = 1e30;
  const auto bad = [](double v) { return !std::isfinite(v) || std::abs(v) > kOverflow; };
  if (!sources_.ports.empty()) {
    const auto &edge = grid_->lumped()[sources_.ports.front().lumped_index];
    if (bad(port_voltage(sources_.ports.front().lumped_index)))
      throw InstabilityError(fields_.step, grid_->index(edge.i, edge.j, edge.k),
                             "non-finite port voltage");
  }
  if (bad(fields_.e[monitor_axis_][monitor_index_]))
    throw InstabilityError(fields_.step, monitor_index_, "non-finite field at interior probe");
}

RunResult Simulation::run(std::span<Recorder *const> recorders) {
  if (sources_.ports.empty() && sources_.currents.empty())
    throw ConfigError("sources", "run needs at least one source");
  if (recorders.empty()) throw ConfigError("recorders", "run needs at least one recorder");

  const bool port_monitor = !sources_.ports.empty();
  const auto monitor = [&]() {
    return port_monitor ? port_voltage(sources_.ports.front().lumped_index)
                        : fields_.e[monitor_axis_][monitor_index_];
  };

  const double ratio = std::pow(10.0, cfg_.decay_stop_db / 20.0);
  const long window = std::max<long>(1, std::lround(cfg_.decay_window_s / coeffs_.dt));
  double peak = 0.0, window_max = 0.0;
  long in_window = 0;

  RunResult out;
  while (fields_.step < cfg_.max_steps) {
    step();
    for (Recorder *r : recorders) r->record(fields_, coeffs_);
    if (fields_.step % cfg_.check_interval == 0) check_finite();

    const double v = std::abs(monitor());
    peak = std::max(peak, v);
    window_max = std::max(window_max, v);
    if (++in_window == window) {
      if (fields_.time > sources_.active_until_s && peak > 0.0 && window_max <= peak * ratio) {
        out.steps = fields_.step;
        out.reason = Termination::kDecayed;
        out.message = "decayed below " + std::to_string(cfg_.decay_stop_db) + " dB";
        return out;
      }
      window_max = 0.0;
      in_window = 0;
    }
  }
  check_finite();
  out.steps = fields_.step;
  out.reason = Termination::kMaxSteps;
  out.warning = true;
  out.message = "max_steps reached before decaying " + std::to_string(cfg_.decay_stop_db) + " dB";
  return out;
}

}  // namespace glant
