#pragma once

#include <functional>
#include <string>
#include <vector>

#include "majorana/perturbation.hpp"
#include "majorana/trap_model.hpp"

namespace majorana {

/// Every factor of the escape rate
///   w = prefactor * chi_power * angular * C_p^2 * density_weight * exp(-exponent).
/// For the ground-state formulas density_weight is 1 and exponent = c k_f^2 b_i^2.
struct RateBreakdown {
    int p = 0;
    double chi0 = 0.0;
    double prefactor = 0.0;         // pi omega_i / 2, rad/s
    double chi_power = 0.0;         // (p chi0^2 / 8)^{p-1}
    double angular = 0.0;           // |<F_zf|F_-^p|F_zi>|^2
    Rational c_p;                   // coherent factor
    double c_p_squared = 0.0;
    double c_exponent_factor = 1.0; // c; 1 for integer spin
    double exponent = 0.0;
    double density_weight = 1.0;
    double rate = 0.0;              // 1/s, may underflow to 0
    double log_rate = 0.0;          // ln(rate / (1/s)), always finite for rate > 0
    double k_f = 0.0;               // 1/m
    double b_i = 0.0;               // m
    std::vector<std::string> notes;
};

/// Integer spin, F_zf = 0, p = F_zi. DispatchError for half-integer spin.
RateBreakdown escape_rate_integer(const TrapConfig& cfg);

/// Half-integer spin, F_zf = -1/2, p = F_zi + 1/2, C_p at the physical F_zi.
/// DispatchError for integer spin.
RateBreakdown escape_rate_half_integer(const TrapConfig& cfg);

/// Picks the branch by spin parity.
RateBreakdown escape_rate(const TrapConfig& cfg);

/// sqrt(2 F_zi) atan(1/sqrt(2 F_zi)).
double c_semiclassical(HalfInt fz_initial);

/// Isotropic 2D momentum probability density P(|k|) with int P d^2k = 1.
struct MomentumDensity {
    std::function<double(double)> density; // units m^2
    /// Optional ln(P(0)/P(k)); lets the exponent stay exact where P(k) underflows.
    std::function<double(double)> log_ratio;
    std::string label;
};

/// (b^2/pi) exp(-k^2 b^2): the oscillator ground state of length b.
MomentumDensity ground_state_density(double b);

/// Normalized Boltzmann distribution exp(-hbar^2 k^2 / 2 m k_B T).
MomentumDensity thermal_density(double mass_kg, double temperature_kelvin);

/// 2 pi int_0^inf k P(k) dk.
double density_norm(const MomentumDensity& density);

/// The ground-state overlap exp(-k_f^2 b_i^2) replaced by (pi/b_i^2) P(k_f).
/// Reported as density_weight = (pi/b_i^2) P(0), exponent = ln(P(0)/P(k_f)).
/// ValidationError when the density is not normalized to 1e-6.
RateBreakdown escape_rate_momentum(const TrapConfig& cfg, const MomentumDensity& density);

/// escape_rate_momentum with thermal_density at the given temperature.
RateBreakdown escape_rate_thermal(const TrapConfig& cfg, double temperature_kelvin);

} // namespace majorana
