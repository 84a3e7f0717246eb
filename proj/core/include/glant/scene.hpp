// Copyright 2026 The glant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "glant/materials.hpp"

namespace glant {

enum class LiquidLocation : int { kL1 = 1, kL2, kL3, kL4, kL5, kL6 };

inline constexpr std::array<LiquidLocation, 6> kAllLocations = {
    LiquidLocation::kL1, LiquidLocation::kL2, LiquidLocation::kL3,
    LiquidLocation::kL4, LiquidLocation::kL5, LiquidLocation::kL6};

std::string_view label(LiquidLocation loc);
std::optional<LiquidLocation> parse_location(std::string_view text);

struct AntennaMaterials {
  DielectricSpec substrate{2.9, 0.0025, phys::kDesignFrequency};     // LCP
  DielectricSpec channel_wall{2.55, 0.002, phys::kDesignFrequency};  // PMMA
  MaterialSpec liquid = MaterialSpec::bulk_conductor(1.0e6);
  MaterialSpec ground = MaterialSpec::pec();

  bool operator==(const AntennaMaterials &) const = default;
};

/// Antenna geometry in millimetres. The channel is a rectangular ring whose
/// centreline is channel_length x channel_width, centred on the substrate
/// and resting on its top face.
struct AntennaParams {
  double substrate_length_mm = 68.0;
  double substrate_width_mm = 56.0;
  double substrate_height_mm = 3.0;
  double channel_length_mm = 46.0;
  double channel_width_mm = 35.0;
  double channel_diameter_mm = 3.0;
  /// Lg. Validated and echoed, but the probe sits on the slug itself (see
  /// feed_shift_mm), so it does not move the feed.
  double feed_offset_mm = 12.0;
  double slug_volume_ml = 0.18;  // 20 mm of the 3 mm square duct
  /// Probe position along the ring relative to the slug centre, mm,
  /// counter-clockwise positive. Must stay within the slug.
  double feed_shift_mm = 0.0;
  AntennaMaterials materials;

  void validate() const;
  double ring_perimeter_mm() const { return 2.0 * (channel_length_mm + channel_width_mm); }
  /// Arc length filled by the liquid, treating the duct as a Dm x Dm square.
  double slug_length_mm() const;

  bool operator==(const AntennaParams &) const = default;
};

/// Arc length (mm) of a state's slug centre along the ring centreline. The
/// ring is parameterised counter-clockwise from the +x segment midpoint.
/// L2 and L5 sit at the -x and +x midpoints; L1, L6, L4 and L3 sit in the
/// (+x, +y), (-x, +y), (-x, -y) and (+x, -y) corners.
double location_arclength_mm(const AntennaParams &p, LiquidLocation loc);

/// Point (x, y) in mm on the ring centreline at arc length s (wrapped).
std::array<double, 2> ring_point_mm(const AntennaParams &p, double s_mm);

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
  bool operator==(const Vec3 &) const = default;
};

/// Closed axis-aligned box in metres. Degenerate extents are allowed and
/// describe sheets and wires.
struct Box {
  Vec3 lo, hi;
  bool contains(const Vec3 &p, double tol = 0.0) const;
  double volume() const { return (hi.x - lo.x) * (hi.y - lo.y) * (hi.z - lo.z); }
  bool operator==(const Box &) const = default;
};

using MaterialId = std::uint8_t;

struct SceneObject {
  std::string name;
  MaterialId material = 0;
  std::vector<Box> boxes;  // union
  bool contains(const Vec3 &p, double tol = 0.0) const;
};

struct PortPlacement {
  int index = 1;
  double x_m = 0.0, y_m = 0.0;  // probe foot on the ground plane
  double probe_top_m = 0.0;     // height where the wire meets the conductor
  double reference_impedance = 50.0;
};

/// Minimum-resolution requirement carried by a scene feature.
struct Feature {
  std::string name;
  double size_m = 0.0;
  int min_cells = 1;
};

struct SceneSpec {
  std::vector<MaterialSpec> materials{MaterialSpec::vacuum()};  // id 0 = vacuum
  std::vector<SceneObject> objects;
  std::optional<PortPlacement> port;
  std::vector<Feature> features;
  std::optional<LiquidLocation> state;

  MaterialId add_material(const MaterialSpec &m);
  /// Material of the highest-priority object containing p; later objects win
  /// ties between equal priorities.
  MaterialId classify(const Vec3 &p, double tol) const;
  /// Bounding box of all non-vacuum objects.
  std::optional<Box> bounds() const;
};

SceneSpec build_scene(const AntennaParams &params, LiquidLocation state);

PortPlacement state_port_map(const AntennaParams &params, LiquidLocation state);

/// Half-wave resonator estimate c / (2 L sqrt(eps_eff)).
double patch_cavity_resonance(double length_m, double eps_eff);

/// Hammerstad closed form for the effective permittivity of a microstrip of
/// width w over a substrate of height h.
double microstrip_eps_eff(double eps_r, double width_m, double height_m);

// ---------------------------------------------------------------------------
// Voxel grid

enum class Axis : int { kX = 0, kY = 1, kZ = 2 };

struct GridDims {
  int nx = 0, ny = 0, nz = 0;
  std::size_t nodes() const {
    return static_cast<std::size_t>(nx + 1) * (ny + 1) * (nz + 1);
  }
  std::size_t cells() const { return static_cast<std::size_t>(nx) * ny * nz; }
  int operator[](int axis) const { return axis == 0 ? nx : axis == 1 ? ny : nz; }
  bool operator==(const GridDims &) const = default;
};

/// Lumped element on a single Yee edge. A port carries a resistive voltage
/// source; a load is a plain resistor (resistance 0 means short).
struct LumpedEdge {
  Axis axis = Axis::kZ;
  int i = 0, j = 0, k = 0;
  double resistance = 50.0;
  bool is_port = true;
  int port_index = 1;
  bool operator==(const LumpedEdge &) const = default;
};

/// Uniform Yee grid with one material id per E edge. All field-shaped
/// arrays share the (nx+1) x (ny+1) x (nz+1) node layout with k fastest;
/// entries that do not correspond to an edge are unused.
class VoxelGrid {
 public:
  VoxelGrid() = default;
  VoxelGrid(GridDims dims, double delta_m, int pml_cells, std::array<int, 3> anchor);

  const GridDims &dims() const { return dims_; }
  double delta() const { return delta_; }
  int pml_cells() const { return pml_; }
  const std::array<int, 3> &anchor() const { return anchor_; }

  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * (dims_.ny + 1) + j) * (dims_.nz + 1) + k;
  }
  std::size_t stride(int axis) const {
    return axis == 0 ? static_cast<std::size_t>(dims_.ny + 1) * (dims_.nz + 1)
           : axis == 1 ? static_cast<std::size_t>(dims_.nz + 1)
                       : 1;
  }
  /// Coordinate (m) of node index `n` along `axis`.
  double node_coord(int axis, double n) const { return (n - anchor_[axis]) * delta_; }
  /// Midpoint of an edge in metres.
  Vec3 edge_midpoint(Axis axis, int i, int j, int k) const;
  /// Number of edges of the given orientation along each axis.
  std::array<int, 3> edge_extent(Axis axis) const;

  MaterialId material(Axis axis, int i, int j, int k) const {
    return edge_material_[static_cast<int>(axis)][index(i, j, k)];
  }
  void set_material(Axis axis, int i, int j, int k, MaterialId id) {
    edge_material_[static_cast<int>(axis)][index(i, j, k)] = id;
  }
  const std::vector<MaterialId> &materials(Axis axis) const {
    return edge_material_[static_cast<int>(axis)];
  }

  std::vector<MaterialSpec> &material_table() { return materials_; }
  const std::vector<MaterialSpec> &material_table() const { return materials_; }
  MaterialId add_material(const MaterialSpec &m);

  std::vector<LumpedEdge> &lumped() { return lumped_; }
  const std::vector<LumpedEdge> &lumped() const { return lumped_; }
  const LumpedEdge *port() const;

  /// Count of edges (any orientation) carrying `id`.
  std::size_t count_edges(MaterialId id) const;
  bool operator==(const VoxelGrid &) const = default;

 private:
  GridDims dims_;
  double delta_ = 0.0;
  int pml_ = 0;
  std::array<int, 3> anchor_{};
  std::vector<MaterialSpec> materials_{MaterialSpec::vacuum()};
  std::array<std::vector<MaterialId>, 3> edge_material_;
  std::vector<LumpedEdge> lumped_;
};

/// Paint every object of `scene` onto the edges of `grid` by the midpoint
/// rule, in ascending priority. Material ids of `scene` are remapped into the
/// grid's table.
void rasterize(const SceneSpec &scene, VoxelGrid &grid);

struct VoxelizeOptions {
  double delta_m = 0.5e-3;
  int pml_cells = 10;
  /// Air between the scene bounds and the PML on every face.
  double air_margin_m = phys::kC0 / phys::kDesignFrequency / 4.0;
};

/// Build a grid covering the scene plus margin and PML, centred on the
/// scene's (x, y) origin with the ground plane z = 0 on a node plane, and
/// rasterize it. The active port becomes a lumped source edge at the ground
/// plane with a PEC wire up to the probe top.
VoxelGrid voxelize(const SceneSpec &scene, const VoxelizeOptions &opts);

}  // namespace glant
