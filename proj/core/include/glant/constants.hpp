// Copyright 2026 The glant Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <numbers>

// CODATA 2018 values. The SI-exact ones are written out in full.
namespace glant::phys {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kC0 = 299792458.0;                  // m/s
inline constexpr double kEps0 = 8.8541878188e-12;           // F/m, CODATA 2022
inline constexpr double kMu0 = 1.25663706127e-6;            // H/m
inline constexpr double kElementaryCharge = 1.602176634e-19;  // C
inline constexpr double kBoltzmann = 1.380649e-23;            // J/K
inline constexpr double kPlanck = 6.62607015e-34;             // J s
inline constexpr double kHbar = kPlanck / (2.0 * kPi);

// sqrt(mu0 / eps0)
inline constexpr double kEta0 = 376.73031341180;  // ohm, CODATA 2022 sqrt(mu0/eps0)

inline constexpr double kDesignFrequency = 5.5e9;  // Hz

}  // namespace glant::phys
