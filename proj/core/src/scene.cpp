// Copyright 2026 The glant Authors
// SPDX-License-Identifier: Apache-2.0

#include "glant/scene.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "glant/errors.hpp"

namespace glant {

namespace {

constexpr double kMm = 1e-3;

// Relative slack for closed-box containment, in units of the grid spacing.
constexpr double kContainTol = 1e-9;

}  // namespace

std::string_view label(LiquidLocation loc) {
  static constexpr std::array<std::string_view, 6> kNames = {"L1", "L2", "L3",
                                                             "L4", "L5", "L6"};
  return kNames[static_cast<int>(loc) - 1];
}

std::optional<LiquidLocation> parse_location(std::string_view text) {
  for (auto loc : kAllLocations)
    if (label(loc) == text) return loc;
  return std::nullopt;
}

void AntennaParams::validate() const {
  const auto positive = [](double v, const char *name) {
    if (!std::isfinite(v) || v <= 0.0)
      throw GeometryError(std::string(name) + " must be > 0");
  };
  positive(substrate_length_mm, "Ls");
  positive(substrate_width_mm, "Ws");
  positive(substrate_height_mm, "Hs");
  positive(channel_length_mm, "Lm");
  positive(channel_width_mm, "Wm");
  positive(channel_diameter_mm, "Dm");
  positive(slug_volume_ml, "slug_volume");
  if (!(channel_length_mm + channel_diameter_mm < substrate_length_mm))
    throw GeometryError("Lm + Dm must be < Ls");
  if (!(channel_width_mm + channel_diameter_mm < substrate_width_mm))
    throw GeometryError("Wm + Dm must be < Ws");
  if (!(feed_offset_mm >= 0.0 &&
        feed_offset_mm < std::min(channel_length_mm, channel_width_mm) / 2.0))
    throw GeometryError("Lg must satisfy 0 <= Lg < min(Lm, Wm)/2");
  if (!std::isfinite(feed_shift_mm) || std::abs(feed_shift_mm) >= slug_length_mm() / 2.0)
    throw GeometryError("feed_shift must lie inside the liquid slug");
  materials.substrate.validate();
  materials.channel_wall.validate();
  materials.liquid.validate();
  materials.ground.validate();
}

double AntennaParams::slug_length_mm() const {
  // 1 ml = 1000 mm^3
  return slug_volume_ml * 1000.0 / (channel_diameter_mm * channel_diameter_mm);
}

double location_arclength_mm(const AntennaParams &p, LiquidLocation loc) {
  // A fed slug on a long side beams away from the liquid; a slug wrapped
  // round a corner beams across the short dimension to the corner on the
  // same x side. Slugs are placed so each state's beam lands on its label.
  const double half_w = p.channel_width_mm / 2.0;
  const double lm = p.channel_length_mm;
  const double wm = p.channel_width_mm;
  switch (loc) {
    case LiquidLocation::kL5: return 0.0;                     // +x midpoint
    case LiquidLocation::kL1: return half_w;                  // (+x, +y) corner
    case LiquidLocation::kL6: return half_w + lm;             // (-x, +y) corner
    case LiquidLocation::kL2: return wm + lm;                 // -x midpoint
    case LiquidLocation::kL4: return half_w + wm + lm;        // (-x, -y) corner
    case LiquidLocation::kL3: return half_w + wm + 2.0 * lm;  // (+x, -y) corner
  }
  return 0.0;
}

namespace {

// Ring centreline as four directed segments, starting at the +x midpoint.
struct Segment {
  std::array<double, 2> start;
  std::array<double, 2> dir;
  double length;
};

std::array<Segment, 5> ring_segments(const AntennaParams &p) {
  const double a = p.channel_length_mm / 2.0;
  const double b = p.channel_width_mm / 2.0;
  return {{
      {{a, 0.0}, {0.0, 1.0}, b},                      // up the +x side
      {{a, b}, {-1.0, 0.0}, p.channel_length_mm},     // along +y, toward -x
      {{-a, b}, {0.0, -1.0}, p.channel_width_mm},     // down the -x side
      {{-a, -b}, {1.0, 0.0}, p.channel_length_mm},    // along -y, toward +x
      {{a, -b}, {0.0, 1.0}, b},                       // back up to the start
  }};
}

double wrap(double s, double perimeter) {
  double r = std::fmod(s, perimeter);
  if (r < 0.0) r += perimeter;
  return r;
}

}  // namespace

std::array<double, 2> ring_point_mm(const AntennaParams &p, double s_mm) {
  double s = wrap(s_mm, p.ring_perimeter_mm());
  for (const auto &seg : ring_segments(p)) {
    if (s <= seg.length) return {seg.start[0] + s * seg.dir[0], seg.start[1] + s * seg.dir[1]};
    s -= seg.length;
  }
  return ring_segments(p)[0].start;
}

bool Box::contains(const Vec3 &p, double tol) const {
  return p.x >= lo.x - tol && p.x <= hi.x + tol && p.y >= lo.y - tol && p.y <= hi.y + tol &&
         p.z >= lo.z - tol && p.z <= hi.z + tol;
}

bool SceneObject::contains(const Vec3 &p, double tol) const {
  return std::any_of(boxes.begin(), boxes.end(),
                     [&](const Box &b) { return b.contains(p, tol); });
}

MaterialId SceneSpec::add_material(const MaterialSpec &m) {
  for (std::size_t i = 0; i < materials.size(); ++i)
    if (materials[i] == m) return static_cast<MaterialId>(i);
  if (materials.size() >= 255) throw GeometryError("too many materials in scene");
  materials.push_back(m);
  return static_cast<MaterialId>(materials.size() - 1);
}

MaterialId SceneSpec::classify(const Vec3 &p, double tol) const {
  MaterialId best = 0;
  int best_priority = 0;
  for (const auto &obj : objects) {
    if (!obj.contains(p, tol)) continue;
    const int pr = material_priority(materials[obj.material]);
    if (pr >= best_priority) {
      best = obj.material;
      best_priority = pr;
    }
  }
  return best;
}

std::optional<Box> SceneSpec::bounds() const {
  std::optional<Box> out;
  for (const auto &obj : objects) {
    if (material_priority(materials[obj.material]) == 0) continue;
    for (const auto &b : obj.boxes) {
      if (!out) {
        out = b;
        continue;
      }
      out->lo = {std::min(out->lo.x, b.lo.x), std::min(out->lo.y, b.lo.y),
                 std::min(out->lo.z, b.lo.z)};
      out->hi = {std::max(out->hi.x, b.hi.x), std::max(out->hi.y, b.hi.y),
                 std::max(out->hi.z, b.hi.z)};
    }
  }
  return out;
}

namespace {

// Boxes (mm) covering the centreline interval [s0, s0 + len) with a
// Dm x Dm cross-section. Pieces ending on a corner are extended by Dm/2 so
// the corner square is filled.
std::vector<Box> duct_boxes(const AntennaParams &p, double s0, double len, double z0) {
  const double half_d = p.channel_diameter_mm / 2.0;
  const auto segs = ring_segments(p);
  const double perimeter = p.ring_perimeter_mm();
  std::vector<Box> out;

  double start = wrap(s0, perimeter);
  double remaining = len;
  // Locate segment containing `start`; segment 4 is the tail of segment 0.
  double seg_begin = 0.0;
  std::size_t si = 0;
  while (si < segs.size() && start >= seg_begin + segs[si].length) {
    seg_begin += segs[si].length;
    ++si;
  }
  if (si == segs.size()) {
    si = 0;
    seg_begin = 0.0;
    start = 0.0;
  }

  while (remaining > 1e-9) {
    const Segment &seg = segs[si];
    const double local0 = start - seg_begin;
    const double local1 = std::min(seg.length, local0 + remaining);
    const double taken = local1 - local0;

    // Corners sit at segment ends except the artificial split at s = 0.
    const bool corner_at_begin = (si != 0) && local0 <= 0.0;
    const bool corner_at_end = (si != 4) && local1 >= seg.length;
    const double ext0 = corner_at_begin ? half_d : 0.0;
    const double ext1 = corner_at_end ? half_d : 0.0;

    const double a0 = local0 - ext0;
    const double a1 = local1 + ext1;
    const std::array<double, 2> p0 = {seg.start[0] + a0 * seg.dir[0], seg.start[1] + a0 * seg.dir[1]};
    const std::array<double, 2> p1 = {seg.start[0] + a1 * seg.dir[0], seg.start[1] + a1 * seg.dir[1]};
    Box b;
    b.lo = {(std::min(p0[0], p1[0]) - (seg.dir[0] == 0.0 ? half_d : 0.0)) * kMm,
            (std::min(p0[1], p1[1]) - (seg.dir[1] == 0.0 ? half_d : 0.0)) * kMm, z0 * kMm};
    b.hi = {(std::max(p0[0], p1[0]) + (seg.dir[0] == 0.0 ? half_d : 0.0)) * kMm,
            (std::max(p0[1], p1[1]) + (seg.dir[1] == 0.0 ? half_d : 0.0)) * kMm,
            (z0 + p.channel_diameter_mm) * kMm};
    if (taken > 0.0 || ext0 > 0.0 || ext1 > 0.0) out.push_back(b);

    remaining -= taken;
    start = seg_begin + local1;
    if (local1 >= seg.length) {
      seg_begin += seg.length;
      ++si;
      if (si == segs.size()) {
        si = 0;
        seg_begin = 0.0;
        start = 0.0;
      }
    }
  }
  return out;
}

}  // namespace

PortPlacement state_port_map(const AntennaParams &params, LiquidLocation state) {
  const auto xy =
      ring_point_mm(params, location_arclength_mm(params, state) + params.feed_shift_mm);
  PortPlacement port;
  port.index = static_cast<int>(state);
  port.x_m = xy[0] * kMm;
  port.y_m = xy[1] * kMm;
  port.probe_top_m = params.substrate_height_mm * kMm;
  port.reference_impedance = 50.0;
  return port;
}

SceneSpec build_scene(const AntennaParams &params, LiquidLocation state) {
  params.validate();
  const double slug = params.slug_length_mm();
  if (slug >= params.ring_perimeter_mm())
    throw GeometryError("liquid slug (" + std::to_string(slug) +
                        " mm) is longer than the ring perimeter (" +
                        std::to_string(params.ring_perimeter_mm()) + " mm)");

  SceneSpec scene;
  scene.state = state;
  const auto ground = scene.add_material(params.materials.ground);
  const auto substrate = scene.add_material(MaterialSpec::dielectric(params.materials.substrate));
  const auto wall = scene.add_material(MaterialSpec::dielectric(params.materials.channel_wall));
  const auto liquid = scene.add_material(params.materials.liquid);

  const double hx = params.substrate_length_mm / 2.0 * kMm;
  const double hy = params.substrate_width_mm / 2.0 * kMm;
  const double hs = params.substrate_height_mm * kMm;

  scene.objects.push_back({"ground", ground, {Box{{-hx, -hy, 0.0}, {hx, hy, 0.0}}}});
  scene.objects.push_back({"substrate", substrate, {Box{{-hx, -hy, 0.0}, {hx, hy, hs}}}});
  scene.objects.push_back(
      {"channel", wall, duct_boxes(params, 0.0, params.ring_perimeter_mm(), params.substrate_height_mm)});
  const double s_center = location_arclength_mm(params, state);
  scene.objects.push_back(
      {"liquid", liquid, duct_boxes(params, s_center - slug / 2.0, slug, params.substrate_height_mm)});

  scene.port = state_port_map(params, state);
  const auto &port = *scene.port;
  if (std::abs(port.x_m) > hx || std::abs(port.y_m) > hy)
    throw GeometryError("port lies outside the substrate");

  scene.features = {
      {"channel diameter Dm", params.channel_diameter_mm * kMm, 3},
      {"substrate height Hs", params.substrate_height_mm * kMm, 2},
  };
  return scene;
}

double patch_cavity_resonance(double length_m, double eps_eff) {
  if (!std::isfinite(length_m) || length_m <= 0.0) throw DomainError("length must be > 0");
  if (!std::isfinite(eps_eff) || eps_eff < 1.0) throw DomainError("eps_eff must be >= 1");
  return phys::kC0 / (2.0 * length_m * std::sqrt(eps_eff));
}

double microstrip_eps_eff(double eps_r, double width_m, double height_m) {
  if (!(eps_r >= 1.0) || !(width_m > 0.0) || !(height_m > 0.0))
    throw DomainError("microstrip parameters must be positive with eps_r >= 1");
  const double u = width_m / height_m;
  return (eps_r + 1.0) / 2.0 + (eps_r - 1.0) / 2.0 / std::sqrt(1.0 + 12.0 / u);
}

// ---------------------------------------------------------------------------

VoxelGrid::VoxelGrid(GridDims dims, double delta_m, int pml_cells, std::array<int, 3> anchor)
    : dims_(dims), delta_(delta_m), pml_(pml_cells), anchor_(anchor) {
  if (dims.nx <= 0 || dims.ny <= 0 || dims.nz <= 0) throw GeometryError("grid dims must be > 0");
  if (!(delta_m > 0.0)) throw ResolutionError("delta must be > 0");
  for (auto &v : edge_material_) v.assign(dims.nodes(), 0);
}

Vec3 VoxelGrid::edge_midpoint(Axis axis, int i, int j, int k) const {
  const int a = static_cast<int>(axis);
  return {node_coord(0, i + (a == 0 ? 0.5 : 0.0)), node_coord(1, j + (a == 1 ? 0.5 : 0.0)),
          node_coord(2, k + (a == 2 ? 0.5 : 0.0))};
}

std::array<int, 3> VoxelGrid::edge_extent(Axis axis) const {
  const int a = static_cast<int>(axis);
  return {dims_.nx + (a == 0 ? 0 : 1), dims_.ny + (a == 1 ? 0 : 1), dims_.nz + (a == 2 ? 0 : 1)};
}

MaterialId VoxelGrid::add_material(const MaterialSpec &m) {
  for (std::size_t i = 0; i < materials_.size(); ++i)
    if (materials_[i] == m) return static_cast<MaterialId>(i);
  if (materials_.size() >= 255) throw GeometryError("too many materials in grid");
  materials_.push_back(m);
  return static_cast<MaterialId>(materials_.size() - 1);
}

const LumpedEdge *VoxelGrid::port() const {
  for (const auto &l : lumped_)
    if (l.is_port) return &l;
  return nullptr;
}

std::size_t VoxelGrid::count_edges(MaterialId id) const {
  std::size_t n = 0;
  for (int a = 0; a < 3; ++a) {
    const auto ext = edge_extent(static_cast<Axis>(a));
    for (int i = 0; i < ext[0]; ++i)
      for (int j = 0; j < ext[1]; ++j)
        for (int k = 0; k < ext[2]; ++k)
          if (material(static_cast<Axis>(a), i, j, k) == id) ++n;
  }
  return n;
}

namespace {

// Inclusive index range of positions (n + offset) whose coordinate lies in
// [lo, hi] along `axis`, clamped to [0, count).
std::pair<int, int> index_range(const VoxelGrid &g, int axis, double lo, double hi,
                                double offset, int count) {
  const double tol = kContainTol;
  const double d = g.delta();
  const double a = g.anchor()[axis];
  const int first = static_cast<int>(std::ceil(lo / d + a - offset - tol));
  const int last = static_cast<int>(std::floor(hi / d + a - offset + tol));
  return {std::max(first, 0), std::min(last, count - 1)};
}

}  // namespace

void rasterize(const SceneSpec &scene, VoxelGrid &grid) {
  std::vector<MaterialId> remap(scene.materials.size());
  for (std::size_t i = 0; i < scene.materials.size(); ++i)
    remap[i] = grid.add_material(scene.materials[i]);

  std::vector<std::size_t> order(scene.objects.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return material_priority(scene.materials[scene.objects[a].material]) <
           material_priority(scene.materials[scene.objects[b].material]);
  });

  for (std::size_t oi : order) {
    const SceneObject &obj = scene.objects[oi];
    const MaterialId id = remap[obj.material];
    for (int a = 0; a < 3; ++a) {
      const auto axis = static_cast<Axis>(a);
      const auto ext = grid.edge_extent(axis);
      for (const Box &b : obj.boxes) {
        const auto [i0, i1] = index_range(grid, 0, b.lo.x, b.hi.x, a == 0 ? 0.5 : 0.0, ext[0]);
        const auto [j0, j1] = index_range(grid, 1, b.lo.y, b.hi.y, a == 1 ? 0.5 : 0.0, ext[1]);
        const auto [k0, k1] = index_range(grid, 2, b.lo.z, b.hi.z, a == 2 ? 0.5 : 0.0, ext[2]);
        for (int i = i0; i <= i1; ++i)
          for (int j = j0; j <= j1; ++j)
            for (int k = k0; k <= k1; ++k) grid.set_material(axis, i, j, k, id);
      }
    }
  }
}

VoxelGrid voxelize(const SceneSpec &scene, const VoxelizeOptions &opts) {
  const double d = opts.delta_m;
  if (!(d > 0.0) || !std::isfinite(d)) throw ResolutionError("delta must be > 0");
  if (opts.pml_cells < 0) throw ResolutionError("pml cells must be >= 0");

  std::ostringstream violations;
  for (const auto &f : scene.features) {
    const double cells = f.size_m / d;
    if (cells + 1e-9 < f.min_cells)
      violations << "  " << f.name << ": " << f.size_m * 1e3 << " mm spans " << cells
                 << " cells, needs >= " << f.min_cells << "\n";
  }
  if (!violations.str().empty())
    throw ResolutionError("delta = " + std::to_string(d * 1e3) +
                          " mm is too coarse:\n" + violations.str());

  const auto b = scene.bounds().value_or(Box{});
  const double half_x = std::max(std::abs(b.lo.x), std::abs(b.hi.x));
  const double half_y = std::max(std::abs(b.lo.y), std::abs(b.hi.y));
  const auto cells_for = [d](double len) {
    return static_cast<int>(std::ceil(len / d - 1e-9));
  };
  const int half_nx = std::max(1, cells_for(half_x + opts.air_margin_m)) + opts.pml_cells;
  const int half_ny = std::max(1, cells_for(half_y + opts.air_margin_m)) + opts.pml_cells;
  const int below = cells_for(std::max(0.0, -b.lo.z) + opts.air_margin_m) + opts.pml_cells;
  const int above = std::max(1, cells_for(std::max(0.0, b.hi.z) + opts.air_margin_m)) + opts.pml_cells;

  GridDims dims{2 * half_nx, 2 * half_ny, below + above};
  VoxelGrid grid(dims, d, opts.pml_cells, {half_nx, half_ny, below});
  rasterize(scene, grid);

  if (scene.port) {
    const auto &p = *scene.port;
    const int i = half_nx + static_cast<int>(std::lround(p.x_m / d));
    const int j = half_ny + static_cast<int>(std::lround(p.y_m / d));
    const int k_top = below + static_cast<int>(std::lround(p.probe_top_m / d));
    if (k_top - below < 1) throw ResolutionError("probe shorter than one cell");
    const MaterialId pec = grid.add_material(MaterialSpec::pec());
    for (int k = below + 1; k < k_top; ++k) grid.set_material(Axis::kZ, i, j, k, pec);
    grid.lumped().push_back(
        LumpedEdge{Axis::kZ, i, j, below, p.reference_impedance, true, p.index});
  }
  return grid;
}

}  // namespace glant
