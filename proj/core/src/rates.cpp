#include "majorana/rates.hpp"

#include <cmath>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "majorana/constants.hpp"
#include "majorana/errors.hpp"
#include "majorana/spin_algebra.hpp"

namespace majorana {

namespace c = constants;

namespace {

constexpr double normalization_tolerance = 1e-6;

// Spin-dependent pieces shared by the ground-state and momentum forms.
struct SpinBranch {
    int p = 0;
    double angular = 0.0;
    Rational c_p;
};

SpinBranch integer_branch(const SpinQuantum& spin) {
    SpinBranch b;
    b.p = spin.two_fz() / 2;
    b.angular = angular_factor_integer(spin.total(), b.p);
    b.c_p = c_factor(b.p, spin.projection());
    return b;
}

SpinBranch half_integer_branch(const SpinQuantum& spin) {
    SpinBranch b;
    b.p = (spin.two_fz() + 1) / 2;
    b.angular = angular_factor_half_integer(spin.total(), b.p);
    b.c_p = c_factor(b.p, spin.projection());
    return b;
}

SpinBranch branch_for(const SpinQuantum& spin) {
    return spin.integer_spin() ? integer_branch(spin) : half_integer_branch(spin);
}

// Fills everything except exponent, density_weight, rate and log_rate.
RateBreakdown common_factors(const TrapConfig& cfg, const SpinBranch& branch) {
    const DerivedParams derived = derive_params(cfg);
    const SurfaceParams surface = surface_params(derived, cfg.spin.two_fz());

    RateBreakdown r;
    r.p = branch.p;
    r.chi0 = derived.chi0;
    r.prefactor = 0.5 * c::pi * surface.omega;
    r.chi_power = std::pow(branch.p * derived.chi0 * derived.chi0 / 8.0, branch.p - 1);
    r.angular = branch.angular;
    r.c_p = branch.c_p;
    const double cp = branch.c_p.convert_to<double>();
    r.c_p_squared = cp * cp;
    r.k_f = final_wavenumber(derived, surface);
    r.b_i = surface.b;
    if (derived.adiabaticity_warning) {
        r.notes.emplace_back("chi0 >= 0.1: adiabatic closed forms outside their regime");
    }
    return r;
}

void finish(RateBreakdown& r) {
    const double log_chi_power = (r.p - 1) * std::log(r.p * r.chi0 * r.chi0 / 8.0);
    const double log_prefactors = std::log(r.prefactor) + log_chi_power + std::log(r.angular) +
                                  std::log(r.c_p_squared) + std::log(r.density_weight);
    r.log_rate = log_prefactors - r.exponent;
    r.rate = r.prefactor * r.chi_power * r.angular * r.c_p_squared * r.density_weight *
             std::exp(-r.exponent);
    if (!std::isfinite(r.log_rate)) {
        r.rate = 0.0;
    }
}

} // namespace

double c_semiclassical(HalfInt fz_initial) {
    if (fz_initial.twice() <= 0) {
        throw DomainError("c factor needs F_zi > 0");
    }
    const double two_fz = fz_initial.twice();
    return std::sqrt(two_fz) * std::atan(1.0 / std::sqrt(two_fz));
}

RateBreakdown escape_rate_integer(const TrapConfig& cfg) {
    cfg.validate();
    if (!cfg.spin.integer_spin()) {
        throw DispatchError("F=" + cfg.spin.total().to_string() +
                            " is half-integer; use escape_rate_half_integer");
    }
    RateBreakdown r = common_factors(cfg, integer_branch(cfg.spin));
    r.c_exponent_factor = 1.0;
    r.exponent = r.k_f * r.k_f * r.b_i * r.b_i;
    finish(r);
    return r;
}

RateBreakdown escape_rate_half_integer(const TrapConfig& cfg) {
    cfg.validate();
    if (cfg.spin.integer_spin()) {
        throw DispatchError("F=" + cfg.spin.total().to_string() +
                            " is integer; use escape_rate_integer");
    }
    RateBreakdown r = common_factors(cfg, half_integer_branch(cfg.spin));
    r.c_exponent_factor = c_semiclassical(cfg.spin.projection());
    r.exponent = r.c_exponent_factor * r.k_f * r.k_f * r.b_i * r.b_i;
    r.notes.emplace_back("c_p evaluated at the physical F_zi = p - 1/2");
    r.notes.emplace_back("chi_power uses p; the |A|^2 form would use F_zi = p - 1/2");
    finish(r);
    return r;
}

RateBreakdown escape_rate(const TrapConfig& cfg) {
    return cfg.spin.integer_spin() ? escape_rate_integer(cfg) : escape_rate_half_integer(cfg);
}

MomentumDensity ground_state_density(double b) {
    const double b2 = b * b;
    return {[b2](double k) { return b2 / c::pi * std::exp(-k * k * b2); },
            [b2](double k) { return k * k * b2; }, "ground_state"};
}

MomentumDensity thermal_density(double mass_kg, double temperature_kelvin) {
    if (!(temperature_kelvin > 0.0) || !(mass_kg > 0.0)) {
        throw ValidationError("thermal density needs T > 0 and m > 0", "temperature");
    }
    const double a = c::hbar * c::hbar / (2.0 * mass_kg * c::boltzmann * temperature_kelvin);
    return {[a](double k) { return a / c::pi * std::exp(-a * k * k); },
            [a](double k) { return a * k * k; }, "thermal"};
}

double density_norm(const MomentumDensity& density) {
    // Scale the variable so the integrand's width is O(1) for exp_sinh.
    const double peak = density.density(0.0);
    if (!(peak > 0.0) || !std::isfinite(peak)) {
        throw ValidationError("momentum density must be finite and positive at k = 0", "density");
    }
    const double scale = 1.0 / std::sqrt(peak);
    boost::math::quadrature::exp_sinh<double> integrator;
    const double integral = integrator.integrate(
        [&](double u) {
            const double k = u * scale;
            return k * density.density(k) * scale;
        },
        1e-12);
    return 2.0 * c::pi * integral;
}

RateBreakdown escape_rate_momentum(const TrapConfig& cfg, const MomentumDensity& density) {
    cfg.validate();
    if (!density.density) {
        throw ValidationError("momentum density function missing", "density");
    }
    const double norm = density_norm(density);
    if (std::abs(norm - 1.0) > normalization_tolerance) {
        throw ValidationError("momentum density integrates to " + std::to_string(norm) +
                                  ", expected 1 within 1e-6",
                              "density");
    }

    RateBreakdown r = common_factors(cfg, branch_for(cfg.spin));
    r.c_exponent_factor = 1.0;
    const double p0 = density.density(0.0);
    r.density_weight = c::pi / (r.b_i * r.b_i) * p0;
    if (density.log_ratio) {
        r.exponent = density.log_ratio(r.k_f);
    } else {
        const double pk = density.density(r.k_f);
        r.exponent = pk > 0.0 ? std::log(p0 / pk) : std::numeric_limits<double>::infinity();
    }
    r.notes.emplace_back("momentum form uses the Table C_p; no separate C-bar_p is defined");
    r.notes.emplace_back("density: " + density.label);
    if (!cfg.spin.integer_spin()) {
        r.notes.emplace_back("half-integer spin: P(k_f) replaces exp(-c k_f^2 b_i^2), c not applied");
    }
    finish(r);
    return r;
}

RateBreakdown escape_rate_thermal(const TrapConfig& cfg, double temperature_kelvin) {
    return escape_rate_momentum(cfg, thermal_density(cfg.mass_kg(), temperature_kelvin));
}

} // namespace majorana
