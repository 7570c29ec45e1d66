#include "majorana/trap_model.hpp"

#include <cmath>
#include <string>

#include "majorana/constants.hpp"
#include "majorana/errors.hpp"

namespace majorana {

namespace c = constants;

void TrapConfig::validate() const {
    auto positive = [](double v, const char* key) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ValidationError(std::string(key) + " must be a finite value > 0", key);
        }
    };
    if (!(bias_field_gauss > 0.0)) {
        throw ValidationError("bias_field_gauss must be > 0 (singular adiabatic frame at B0 = 0)",
                              "bias_field_gauss");
    }
    positive(bias_field_gauss, "bias_field_gauss");
    positive(radial_gradient_gauss_per_cm, "radial_gradient_gauss_per_cm");
    if (!(axial_curvature_gauss_per_cm2 >= 0.0) || !std::isfinite(axial_curvature_gauss_per_cm2)) {
        throw ValidationError("axial_curvature_gauss_per_cm2 must be >= 0",
                              "axial_curvature_gauss_per_cm2");
    }
    positive(g_factor, "g_factor");
    positive(mass_amu, "mass_amu");
    if (spin.two_fz() <= 0) {
        throw ValidationError("two_fz must be > 0: only states with F_z > 0 are trapped", "two_fz");
    }
}

double TrapConfig::bias_field_tesla() const { return bias_field_gauss * c::tesla_per_gauss; }

double TrapConfig::radial_gradient_tesla_per_m() const {
    return radial_gradient_gauss_per_cm * c::tesla_per_meter_per_gauss_per_cm;
}

double TrapConfig::mass_kg() const { return mass_amu * c::atomic_mass_unit; }

Eigen::Vector3d field_vector(const TrapConfig& cfg, const Position& r) {
    const double lambda = cfg.radial_gradient_gauss_per_cm;
    const double x_cm = r.x() / c::meter_per_cm;
    const double y_cm = r.y() / c::meter_per_cm;
    return {lambda * x_cm, -lambda * y_cm, cfg.bias_field_gauss};
}

double field_magnitude(const TrapConfig& cfg, const Position& r) {
    const double lambda = cfg.radial_gradient_gauss_per_cm;
    const double rho_cm = std::hypot(r.x(), r.y()) / c::meter_per_cm;
    return std::hypot(cfg.bias_field_gauss, lambda * rho_cm);
}

PotentialValue adiabatic_potential(const TrapConfig& cfg, int two_fz, const Position& r,
                                   PotentialMode mode) {
    if (std::abs(two_fz) > cfg.spin.two_f() || (cfg.spin.two_f() - two_fz) % 2 != 0) {
        throw DomainError("two_fz=" + std::to_string(two_fz) + " is not a projection of F=" +
                          cfg.spin.total().to_string());
    }
    const double fz = 0.5 * two_fz;
    const double moment = c::bohr_magneton * cfg.g_factor * fz;

    double b_tesla = 0.0;
    if (mode == PotentialMode::exact) {
        b_tesla = field_magnitude(cfg, r) * c::tesla_per_gauss;
    } else {
        const double b0 = cfg.bias_field_tesla();
        const double lambda = cfg.radial_gradient_tesla_per_m();
        const double rho2 = r.x() * r.x() + r.y() * r.y();
        b_tesla = b0 + lambda * lambda * rho2 / (2.0 * b0);
    }
    return {moment * b_tesla, two_fz > 0};
}

DerivedParams derive_params(const TrapConfig& cfg) {
    cfg.validate();
    const double b0_field = cfg.bias_field_tesla();
    const double lambda = cfg.radial_gradient_tesla_per_m();
    const double mass = cfg.mass_kg();
    const double mu_g = c::bohr_magneton * cfg.g_factor;

    DerivedParams d;
    d.mass_kg = mass;
    d.omega0 = lambda * std::sqrt(mu_g / (mass * b0_field));
    d.b0 = std::sqrt(c::hbar / (mass * d.omega0));
    d.e0 = mu_g * b0_field;
    d.omega_prec = d.e0 / c::hbar;
    d.chi0 = d.omega0 / d.omega_prec;
    d.adiabaticity_warning = d.chi0 >= adiabaticity_warning_threshold;
    return d;
}

double bias_field_for_chi0(const TrapConfig& cfg, double chi0) {
    if (!(chi0 > 0.0)) {
        throw DomainError("chi0 must be > 0");
    }
    const double lambda = cfg.radial_gradient_tesla_per_m();
    const double mu_g = c::bohr_magneton * cfg.g_factor;
    const double b0_cubed = c::hbar * c::hbar * lambda * lambda / (cfg.mass_kg() * mu_g * chi0 * chi0);
    return std::cbrt(b0_cubed) / c::tesla_per_gauss;
}

SurfaceParams surface_params(const DerivedParams& derived, int two_fz) {
    if (two_fz <= 0) {
        throw DomainError("surface with F_z <= 0 has no bound oscillator state");
    }
    const double fz = 0.5 * two_fz;
    SurfaceParams s;
    s.two_fz = two_fz;
    s.omega = derived.omega0 * std::sqrt(fz);
    s.b = derived.b0 / std::sqrt(std::sqrt(fz));
    s.energy = fz * derived.e0 + c::hbar * s.omega;
    return s;
}

double final_wavenumber(const DerivedParams& derived, const SurfaceParams& surface) {
    const double kinetic = 0.5 * surface.two_fz * derived.e0;
    return std::sqrt(2.0 * derived.mass_kg * kinetic) / c::hbar;
}

} // namespace majorana
