// Copyright 2026 The glant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>

#include "glant/constants.hpp"

namespace glant {

using Complex = std::complex<double>;

/// Graphene-liquid description. The intra-band Kubo conductivity is a
/// function of chemical potential, relaxation time and temperature; the
/// liquid may be presented to the solver either as a sheet or as a bulk
/// conductor of the given thickness.
struct GrapheneSpec {
  enum class Model { kSheet, kBulk };

  double mu_c_ev = 0.5;         // chemical potential, eV
  double tau_s = 1e-12;         // relaxation time, s
  double temperature_k = 300.0;
  Model model = Model::kBulk;
  double thickness_m = 3e-3;    // only used by Model::kBulk
  // Effective bulk conductivity of the liquid, S/m; unset to use Kubo.
  std::optional<double> bulk_sigma_override = 1.0e6;

  void validate() const;
  bool operator==(const GrapheneSpec &) const = default;
};

struct DielectricSpec {
  double eps_r = 1.0;
  double tan_delta = 0.0;
  double f_ref_hz = phys::kDesignFrequency;

  void validate() const;
  bool operator==(const DielectricSpec &) const = default;
};

struct Vacuum {
  bool operator==(const Vacuum &) const = default;
};
struct Pec {
  bool operator==(const Pec &) const = default;
};
struct BulkConductor {
  double sigma = 0.0;  // S/m
  bool operator==(const BulkConductor &) const = default;
};
struct SheetConductor {
  Complex sigma_s{};  // S
  bool operator==(const SheetConductor &) const = default;
};

struct MaterialSpec {
  using Kind = std::variant<Vacuum, Pec, DielectricSpec, BulkConductor, SheetConductor>;
  Kind kind = Vacuum{};

  void validate() const;
  bool operator==(const MaterialSpec &) const = default;

  static MaterialSpec vacuum() { return {Vacuum{}}; }
  static MaterialSpec pec() { return {Pec{}}; }
  static MaterialSpec dielectric(DielectricSpec d) { return {d}; }
  static MaterialSpec bulk_conductor(double sigma) { return {BulkConductor{sigma}}; }
  static MaterialSpec sheet_conductor(Complex s) { return {SheetConductor{s}}; }
};

/// Voxel rasterization priority: PEC > conductor > dielectric > vacuum.
int material_priority(const MaterialSpec &m);
std::string describe(const MaterialSpec &m);

/// Intra-band Kubo conductivity at a signed angular frequency (e^{-i w t}).
/// Negative omega is accepted so the Hermitian property can be exercised.
Complex kubo_intraband_omega(const GrapheneSpec &spec, double omega);

/// Intra-band Kubo sheet conductivity (S) at frequency f >= 0.
Complex kubo_intraband(const GrapheneSpec &spec, double f_hz);

/// Volumetric conductivity (S/m) of a sheet spread over `thickness_m`.
Complex sheet_to_bulk(Complex sigma_s, double thickness_m);

/// Equivalent conductivity 2*pi*f*eps0*eps_r*tan_delta (S/m).
double dielectric_loss_sigma(const DielectricSpec &spec, double f_hz);

/// Solver-facing material built from a graphene-liquid description:
/// the override, else the Kubo route evaluated at `f_hz`.
MaterialSpec graphene_liquid_material(const GrapheneSpec &spec, double f_hz);

/// (eps_r, sigma) seen by a Yee edge. Dielectric loss is frozen at the
/// spec's f_ref. Sheet conductors are smeared over one cell of size
/// `delta_m`; conductors above kPecSigmaThreshold become PEC.
struct EdgeMedium {
  double eps_r = 1.0;
  double sigma = 0.0;
  bool pec = false;
  bool operator==(const EdgeMedium &) const = default;
};

inline constexpr double kPecSigmaThreshold = 1e8;  // S/m

EdgeMedium resolve_edge_medium(const MaterialSpec &m, double delta_m);

}  // namespace glant
