#pragma once

#include <vector>

#include "majorana/adiabatic_frame.hpp"
#include "majorana/spin_algebra.hpp"
#include "majorana/trap_model.hpp"

// Brute-force cross-checks. Nothing in here calls the closed forms it is
// meant to check: ladder matrices are rebuilt from (F+m)(F-m+1), gauge
// potentials come from differencing U(r), overlaps from 2D quadrature and
// the closure step from an explicit sum over intermediate oscillator states.
namespace majorana::oracle {

/// Entry (F_zf, F_zi) of the explicitly multiplied matrix F_-^p.
double dense_power_element(HalfInt total, HalfInt fz_initial, HalfInt fz_final);

/// -i hbar U^dagger dU/dx_k by central differences of rotation_matrix.
/// Throws DomainError for h <= 0.
OperatorVector gauge_potential_fd(const TrapConfig& cfg, HalfInt total, const Position& r,
                                  double h);

/// Step used by the acceptance checks: a fixed fraction of the larger of the
/// field's transverse length B0/lambda and |r|.
double default_fd_step(const TrapConfig& cfg, const Position& r);

struct QuadratureSpec {
    double radial_cutoff = 10.0; // in units of b_i, >= 8
    int grid_points = 512;       // radial and angular nodes, >= 256
    double tolerance = 1e-8;

    void validate() const;
};

/// (1/L) int d^2r exp(-i k.r) (1/(b sqrt(pi))) exp(-r^2/2b^2) over the disk
/// r < radial_cutoff * b, by composite Gauss-Legendre in r and the periodic
/// trapezoid rule in the polar angle. Throws OracleFailure when doubling the
/// grid moves the result by more than spec.tolerance (relative).
double numeric_overlap(double b_i, double k_f, double box_side, const QuadratureSpec& spec = {});

/// One evaluation of the same quadrature on a fixed grid, no convergence
/// check. Exposed for convergence studies.
double numeric_overlap_on_grid(double b_i, double k_f, double box_side, double radial_cutoff,
                               int grid_points);

struct SecondOrderOptions {
    /// Hard cap on the intermediate radial quantum number.
    int n_max = 200000;
    /// Replace every energy denominator by -E0. Only for self-tests: the sum
    /// must then collapse onto the closure amplitude.
    bool closure_denominators = false;
    /// Record every 'trace_stride'-th partial sum.
    int trace_stride = 0;
};

struct SecondOrderResult {
    double log_magnitude = 0.0; // ln |A2| in joules
    int sign = 1;               // of the real-valued reduced sum
    int terms = 0;              // intermediate states summed
    int dominant_n = 0;         // index of the largest term
    std::vector<double> partial_sum_trace; // scaled, see trace_stride
};

/// Two applications of V1^- from the F_z = 2 ground state of an F = 2 atom
/// through the L = -1 states of the F_z = 1 surface into the F_z = 0 plane
/// wave, with the exact denominators E_{1,n} - E_i,
///   E_i = 2 E0 + hbar w_2,  E_{1,n} = E0 + hbar w_1 (2n + 2).
/// Oscillator lengths of the two surfaces are kept distinct. The box side is
/// only a normalization and is reported with the same L as the closure
/// amplitude it is compared with.
/// Throws DomainError unless the spin is F = F_zi = 2; OracleFailure if the
/// tail has not decayed by n_max.
SecondOrderResult second_order_sum(const DerivedParams& derived, const SpinQuantum& spin,
                                   double box_side, const SecondOrderOptions& options = {});

/// Orbital matrix elements used by second_order_sum, evaluated two ways.
struct OrbitalElements {
    double p_minus_from_initial = 0.0; // <n,-1| p_- |phi_i> / (i hbar), 1/m
    double plane_wave_overlap = 0.0;   // |<k_f|n,-1>| * L, m
};

/// Closed-form Laguerre/Laplace expressions (what second_order_sum uses).
OrbitalElements orbital_elements_analytic(double b_initial, double b_intermediate, double k,
                                          int n);

/// Radial-grid quadrature of the same integrals from the position-space
/// wavefunctions. Usable only where the results are not exponentially small.
OrbitalElements orbital_elements_quadrature(double b_initial, double b_intermediate, double k,
                                            int n, int grid_points = 4096);

} // namespace majorana::oracle
