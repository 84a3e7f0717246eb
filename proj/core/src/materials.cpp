// Copyright 2026 The glant Authors
// SPDX-License-Identifier: Apache-2.0

#include "glant/materials.hpp"

#include <cmath>
#include <sstream>

#include "glant/errors.hpp"

namespace glant {

namespace {

void require_finite(double v, const char *what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

// mu/(kT) + 2 ln(1 + exp(-mu/(kT))). log1p keeps the tail term accurate in
// the degenerate limit where exp(-x) underflows relative to x.
double thermal_bracket(double x) { return x + 2.0 * std::log1p(std::exp(-x)); }

}  // namespace

void GrapheneSpec::validate() const {
  require_finite(mu_c_ev, "mu_c");
  require_finite(tau_s, "tau");
  require_finite(temperature_k, "temperature");
  if (tau_s <= 0.0) throw DomainError("tau must be > 0");
  if (temperature_k <= 0.0) throw DomainError("temperature must be > 0");
  if (mu_c_ev < 0.0) throw DomainError("mu_c must be >= 0");
  if (model == Model::kBulk) {
    require_finite(thickness_m, "thickness");
    if (thickness_m <= 0.0) throw DomainError("bulk thickness must be > 0");
  }
  if (bulk_sigma_override) {
    require_finite(*bulk_sigma_override, "bulk_sigma_override");
    if (*bulk_sigma_override <= 0.0) throw DomainError("bulk_sigma_override must be > 0");
  }
}

void DielectricSpec::validate() const {
  require_finite(eps_r, "eps_r");
  require_finite(tan_delta, "tan_delta");
  require_finite(f_ref_hz, "f_ref");
  if (eps_r < 1.0) throw DomainError("eps_r must be >= 1");
  if (tan_delta < 0.0) throw DomainError("tan_delta must be >= 0");
  if (f_ref_hz <= 0.0) throw DomainError("f_ref must be > 0");
}

void MaterialSpec::validate() const {
  std::visit(
      [](const auto &k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, DielectricSpec>) {
          k.validate();
        } else if constexpr (std::is_same_v<T, BulkConductor>) {
          require_finite(k.sigma, "sigma");
          if (k.sigma <= 0.0) throw DomainError("bulk conductor sigma must be > 0");
        } else if constexpr (std::is_same_v<T, SheetConductor>) {
          require_finite(k.sigma_s.real(), "sigma_s");
          require_finite(k.sigma_s.imag(), "sigma_s");
          if (k.sigma_s.real() < 0.0) throw DomainError("sheet conductor Re(sigma_s) must be >= 0");
        }
      },
      kind);
}

int material_priority(const MaterialSpec &m) {
  return std::visit(
      [](const auto &k) -> int {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Pec>) return 3;
        if constexpr (std::is_same_v<T, BulkConductor> || std::is_same_v<T, SheetConductor>)
          return 2;
        if constexpr (std::is_same_v<T, DielectricSpec>) return 1;
        return 0;
      },
      m.kind);
}

std::string describe(const MaterialSpec &m) {
  std::ostringstream os;
  std::visit(
      [&os](const auto &k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Vacuum>) os << "vacuum";
        if constexpr (std::is_same_v<T, Pec>) os << "pec";
        if constexpr (std::is_same_v<T, DielectricSpec>)
          os << "dielectric(eps_r=" << k.eps_r << ", tan_delta=" << k.tan_delta << ")";
        if constexpr (std::is_same_v<T, BulkConductor>) os << "conductor(sigma=" << k.sigma << ")";
        if constexpr (std::is_same_v<T, SheetConductor>) os << "sheet(sigma_s=" << k.sigma_s << ")";
      },
      m.kind);
  return os.str();
}

Complex kubo_intraband_omega(const GrapheneSpec &spec, double omega) {
  require_finite(omega, "omega");
  spec.validate();
  using namespace phys;
  const double kt = kBoltzmann * spec.temperature_k;
  const double x = spec.mu_c_ev * kElementaryCharge / kt;
  const double prefactor = kElementaryCharge * kElementaryCharge * kt / (kPi * kHbar * kHbar);
  const Complex drude = spec.tau_s / Complex(1.0, -omega * spec.tau_s);
  return prefactor * drude * thermal_bracket(x);
}

Complex kubo_intraband(const GrapheneSpec &spec, double f_hz) {
  require_finite(f_hz, "frequency");
  if (f_hz < 0.0) throw DomainError("frequency must be >= 0");
  return kubo_intraband_omega(spec, 2.0 * phys::kPi * f_hz);
}

Complex sheet_to_bulk(Complex sigma_s, double thickness_m) {
  if (!(thickness_m > 0.0) || !std::isfinite(thickness_m))
    throw DomainError("thickness must be > 0");
  return sigma_s / thickness_m;
}

double dielectric_loss_sigma(const DielectricSpec &spec, double f_hz) {
  require_finite(f_hz, "frequency");
  if (f_hz <= 0.0) throw DomainError("frequency must be > 0");
  spec.validate();
  return 2.0 * phys::kPi * f_hz * phys::kEps0 * spec.eps_r * spec.tan_delta;
}

MaterialSpec graphene_liquid_material(const GrapheneSpec &spec, double f_hz) {
  spec.validate();
  if (spec.bulk_sigma_override) return MaterialSpec::bulk_conductor(*spec.bulk_sigma_override);
  const Complex sheet = kubo_intraband(spec, f_hz);
  if (spec.model == GrapheneSpec::Model::kSheet) return MaterialSpec::sheet_conductor(sheet);
  // The time-domain solver carries a real conductivity; at microwave
  // frequencies Im(sigma) / Re(sigma) = omega * tau is small.
  return MaterialSpec::bulk_conductor(sheet_to_bulk(sheet, spec.thickness_m).real());
}

EdgeMedium resolve_edge_medium(const MaterialSpec &m, double delta_m) {
  return std::visit(
      [delta_m](const auto &k) -> EdgeMedium {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Vacuum>) {
          return {};
        } else if constexpr (std::is_same_v<T, Pec>) {
          return {1.0, 0.0, true};
        } else if constexpr (std::is_same_v<T, DielectricSpec>) {
          return {k.eps_r, dielectric_loss_sigma(k, k.f_ref_hz), false};
        } else if constexpr (std::is_same_v<T, BulkConductor>) {
          return {1.0, k.sigma, k.sigma > kPecSigmaThreshold};
        } else {
          const double sigma = k.sigma_s.real() / delta_m;
          return {1.0, sigma, sigma > kPecSigmaThreshold};
        }
      },
      m.kind);
}

}  // namespace glant
