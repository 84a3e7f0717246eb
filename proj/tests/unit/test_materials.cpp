// Copyright 2026 The glant Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "glant/errors.hpp"
#include "glant/materials.hpp"

namespace glant {
namespace {

// Reference values from tests/oracles/derive_constants.py (mpmath, 50 digits).
constexpr double kKuboRe = 0.058786913133280813;
constexpr double kKuboIm = 0.0020315298786940997;
constexpr double kBulkRe = 19.595637711093604;
constexpr double kBulkIm = 0.67717662623136657;
constexpr double kKuboMu0Dc = 0.0042186994539153185;
constexpr double kLcpSigma = 0.0022183460495524438;
constexpr double kPmSigma = 0.0015604917038230984;

GrapheneSpec reference_graphene() {
  GrapheneSpec g;
  g.mu_c_ev = 0.5;
  g.tau_s = 1e-12;
  g.temperature_k = 300.0;
  return g;
}

TEST(Kubo, MatchesIndependentEvaluation) {
  const Complex s = kubo_intraband(reference_graphene(), 5.5e9);
  EXPECT_NEAR(s.real(), kKuboRe, 1e-9 * kKuboRe);
  EXPECT_NEAR(s.imag(), kKuboIm, 1e-9 * kKuboIm);
}

TEST(Kubo, BulkConversionOverThreeMillimetres) {
  const Complex b = sheet_to_bulk(kubo_intraband(reference_graphene(), 5.5e9), 3e-3);
  EXPECT_NEAR(b.real(), kBulkRe, 1e-9 * kBulkRe);
  EXPECT_NEAR(b.imag(), kBulkIm, 1e-9 * kBulkIm);
}

TEST(Kubo, ZeroChemicalPotentialAtDcIsTwoLnTwoScaled) {
  GrapheneSpec g = reference_graphene();
  g.mu_c_ev = 0.0;
  const Complex s = kubo_intraband(g, 0.0);
  EXPECT_NEAR(s.real(), kKuboMu0Dc, 1e-12 * kKuboMu0Dc);
  EXPECT_EQ(s.imag(), 0.0);
  const double pref = phys::kElementaryCharge * phys::kElementaryCharge * phys::kBoltzmann *
                      g.temperature_k / (phys::kPi * phys::kHbar * phys::kHbar);
  EXPECT_NEAR(s.real() / (pref * g.tau_s), 2.0 * std::log(2.0), 1e-12 * 2.0 * std::log(2.0));
}

TEST(Kubo, RandomizedPropertyChecks) {
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> mu(0.0, 1.0), logtau(-14.0, -11.0), temp(1.0, 600.0),
      logf(6.0, 12.0);
  for (int n = 0; n < 1000; ++n) {
    GrapheneSpec g;
    g.mu_c_ev = mu(rng);
    g.tau_s = std::pow(10.0, logtau(rng));
    g.temperature_k = temp(rng);
    const double f = std::pow(10.0, logf(rng));
    const double w = 2.0 * phys::kPi * f;
    const Complex pos = kubo_intraband_omega(g, w);
    const Complex neg = kubo_intraband_omega(g, -w);
    // Hermitian: sigma(-w) = conj(sigma(w)).
    ASSERT_NEAR(neg.real(), pos.real(), 1e-12 * std::abs(pos));
    ASSERT_NEAR(neg.imag(), -pos.imag(), 1e-12 * std::abs(pos));
    // Passive and inductive under e^{-i w t}.
    ASSERT_GT(pos.real(), 0.0);
    ASSERT_GE(pos.imag(), 0.0);
    // Low-frequency limit approaches the real DC value.
    const Complex dc = kubo_intraband(g, 0.0);
    ASSERT_EQ(dc.imag(), 0.0);
    const Complex slow = kubo_intraband_omega(g, 1e-6 / g.tau_s);
    ASSERT_NEAR(slow.real(), dc.real(), 1e-9 * dc.real());
    // Drude form: sigma(w) (1 - i w tau) = sigma_dc.
    const Complex drude = pos * Complex(1.0, -w * g.tau_s);
    ASSERT_NEAR(drude.real(), dc.real(), 1e-10 * dc.real());
    ASSERT_NEAR(drude.imag(), 0.0, 1e-10 * dc.real());
  }
}

TEST(Kubo, RejectsNegativeFrequencyAndBadSpecs) {
  EXPECT_THROW(kubo_intraband(reference_graphene(), -1.0), DomainError);
  GrapheneSpec g = reference_graphene();
  g.tau_s = 0.0;
  EXPECT_THROW(kubo_intraband(g, 1e9), Error);
  g = reference_graphene();
  g.temperature_k = -1.0;
  EXPECT_THROW(kubo_intraband(g, 1e9), Error);
}

TEST(Dielectric, EquivalentConductivityMatchesOracle) {
  EXPECT_NEAR(dielectric_loss_sigma({2.9, 0.0025, 5.5e9}, 5.5e9), kLcpSigma, 1e-12 * kLcpSigma);
  EXPECT_NEAR(dielectric_loss_sigma({2.55, 0.002, 5.5e9}, 5.5e9), kPmSigma, 1e-12 * kPmSigma);
  EXPECT_EQ(dielectric_loss_sigma({2.9, 0.0, 5.5e9}, 5.5e9), 0.0);
  EXPECT_THROW(dielectric_loss_sigma({2.9, 0.0025, 5.5e9}, 0.0), DomainError);
}

TEST(GrapheneLiquid, OverrideAndKuboRoutes) {
  GrapheneSpec g = reference_graphene();
  g.bulk_sigma_override = 2.5e5;
  EXPECT_EQ(graphene_liquid_material(g, 5.5e9), MaterialSpec::bulk_conductor(2.5e5));
  g.bulk_sigma_override.reset();
  g.model = GrapheneSpec::Model::kBulk;
  const auto bulk = std::get<BulkConductor>(graphene_liquid_material(g, 5.5e9).kind);
  EXPECT_NEAR(bulk.sigma, kBulkRe, 1e-9 * kBulkRe);
  g.model = GrapheneSpec::Model::kSheet;
  const auto sheet = std::get<SheetConductor>(graphene_liquid_material(g, 5.5e9).kind);
  EXPECT_NEAR(sheet.sigma_s.real(), kKuboRe, 1e-9 * kKuboRe);
}

TEST(EdgeMedium, ResolvesEachKind) {
  EXPECT_EQ(resolve_edge_medium(MaterialSpec::vacuum(), 1e-3), (EdgeMedium{1.0, 0.0, false}));
  EXPECT_TRUE(resolve_edge_medium(MaterialSpec::pec(), 1e-3).pec);
  EXPECT_TRUE(resolve_edge_medium(MaterialSpec::bulk_conductor(2e8), 1e-3).pec);
  EXPECT_FALSE(resolve_edge_medium(MaterialSpec::bulk_conductor(1e6), 1e-3).pec);
  const auto lcp = resolve_edge_medium(MaterialSpec::dielectric({2.9, 0.0025, 5.5e9}), 1e-3);
  EXPECT_EQ(lcp.eps_r, 2.9);
  EXPECT_NEAR(lcp.sigma, kLcpSigma, 1e-12 * kLcpSigma);
  const auto sheet = resolve_edge_medium(MaterialSpec::sheet_conductor({0.05, 0.01}), 0.5e-3);
  EXPECT_NEAR(sheet.sigma, 100.0, 1e-12);
}

TEST(MaterialPriority, OrdersPecConductorDielectricVacuum) {
  EXPECT_GT(material_priority(MaterialSpec::pec()),
            material_priority(MaterialSpec::bulk_conductor(1.0)));
  EXPECT_GT(material_priority(MaterialSpec::bulk_conductor(1.0)),
            material_priority(MaterialSpec::dielectric({2.0, 0.0, 1e9})));
  EXPECT_GT(material_priority(MaterialSpec::dielectric({2.0, 0.0, 1e9})),
            material_priority(MaterialSpec::vacuum()));
}

}  // namespace
}  // namespace glant
