#pragma once

#include <Eigen/Dense>

#include "majorana/spin_algebra.hpp"

namespace majorana {

/// Position in meters.
using Position = Eigen::Vector3d;

/// Trap specification in laboratory units. Only this struct speaks Gauss,
/// centimeters and amu; everything derived from it is SI.
struct TrapConfig {
    double bias_field_gauss = 0.0;              // B0 > 0
    double radial_gradient_gauss_per_cm = 0.0;  // lambda > 0
    double axial_curvature_gauss_per_cm2 = 0.0; // carried along, never used in rates
    double g_factor = 0.0;                      // > 0
    double mass_amu = 0.0;                      // > 0
    SpinQuantum spin = SpinQuantum::make(1, 1);

    /// Throws ValidationError naming the first violated constraint.
    void validate() const;

    double bias_field_tesla() const;
    double radial_gradient_tesla_per_m() const;
    double mass_kg() const;
};

/// Spin-independent scales of the trap, SI units.
struct DerivedParams {
    double omega0 = 0.0;     // rad/s, F_z = 1 radial frequency
    double b0 = 0.0;         // m, F_z = 1 oscillator length
    double chi0 = 0.0;       // omega0 / omega_prec
    double e0 = 0.0;         // J, Zeeman gap at the trap center
    double omega_prec = 0.0; // rad/s
    double mass_kg = 0.0;

    /// chi0 >= 0.1: the closed-form rates are outside their regime.
    bool adiabaticity_warning = false;
};

inline constexpr double adiabaticity_warning_threshold = 0.1;

/// Oscillator parameters of one trapped adiabatic surface.
struct SurfaceParams {
    int two_fz = 0;
    double omega = 0.0;  // rad/s
    double b = 0.0;      // m
    double energy = 0.0; // J, F_z E0 + hbar omega
};

enum class PotentialMode { exact, harmonic };

struct PotentialValue {
    double energy = 0.0; // J
    bool trapped = false;
};

/// (lambda x, -lambda y, B0) in Gauss, r in meters.
Eigen::Vector3d field_vector(const TrapConfig& cfg, const Position& r);

/// |B(r)| in Gauss; independent of z.
double field_magnitude(const TrapConfig& cfg, const Position& r);

/// mu_B g F_z |B(r)| (exact) or its quadratic expansion about the axis.
PotentialValue adiabatic_potential(const TrapConfig& cfg, int two_fz, const Position& r,
                                   PotentialMode mode);

DerivedParams derive_params(const TrapConfig& cfg);

/// Bias field (Gauss) at which cfg, with everything else fixed, has the
/// requested adiabaticity parameter. chi0 scales as B0^{-3/2}.
double bias_field_for_chi0(const TrapConfig& cfg, double chi0);

/// Throws DomainError for two_fz <= 0.
SurfaceParams surface_params(const DerivedParams& derived, int two_fz);

/// sqrt(2 m F_z E0)/hbar. Uses the adiabatic-limit energy F_z E0 rather than
/// SurfaceParams::energy, so that k_f^2 b_i^2 = 2 sqrt(F_z)/chi0 exactly.
double final_wavenumber(const DerivedParams& derived, const SurfaceParams& surface);

} // namespace majorana
