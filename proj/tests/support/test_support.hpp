#pragma once

#include <cmath>
#include <random>

#include "majorana/trap_model.hpp"

namespace majorana::testing {

inline constexpr std::uint64_t property_seed = 0x6d616a6f72616e61ULL;

inline TrapConfig make_trap(double bias_gauss, double gradient_gauss_per_cm, double g, double amu,
                            int two_f, int two_fz) {
    TrapConfig cfg;
    cfg.bias_field_gauss = bias_gauss;
    cfg.radial_gradient_gauss_per_cm = gradient_gauss_per_cm;
    cfg.g_factor = g;
    cfg.mass_amu = amu;
    cfg.spin = SpinQuantum::make(two_f, two_fz);
    return cfg;
}

/// 87Rb-like trap: g = 1/2, B0 = 1 G, lambda = 100 G/cm.
inline TrapConfig rubidium(int two_f = 4, int two_fz = 4) {
    return make_trap(1.0, 100.0, 0.5, 87.0, two_f, two_fz);
}

/// Same trap with B0 tuned so that chi0 hits the target,
/// B0 = (hbar^2 lambda^2 / (m mu_B g))^{1/3} chi0^{-2/3}, written out here
/// instead of calling the library helper.
inline TrapConfig at_chi0(TrapConfig cfg, double chi0) {
    const double hbar = 1.054571817e-34;
    const double mu_b = 9.2740100783e-24;
    const double lambda = cfg.radial_gradient_gauss_per_cm * 1e-2;
    const double mass = cfg.mass_amu * 1.66053906660e-27;
    const double b0_tesla =
        std::cbrt(hbar * hbar * lambda * lambda / (mass * mu_b * cfg.g_factor)) /
        std::pow(chi0, 2.0 / 3.0);
    cfg.bias_field_gauss = b0_tesla * 1e4;
    return cfg;
}

inline double relative_error(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace majorana::testing
