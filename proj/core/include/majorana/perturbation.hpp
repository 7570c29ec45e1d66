#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "majorana/spin_algebra.hpp"
#include "majorana/trap_model.hpp"

namespace majorana {

using Rational = boost::multiprecision::cpp_rational;

/// Largest number of perturbation steps handled (2F <= 24).
inline constexpr int max_steps = 24;

/// One ordering of single (V1, Delta F_z = -1) and double (V2, Delta F_z = -2)
/// lowering steps.
struct StepSequence {
    std::vector<int> steps; // each 1 or 2

    int total() const;        // p = p1 + 2 p2
    int single_steps() const; // p1
    int double_steps() const; // p2
};

/// Every composition of p into parts {1, 2}, lexicographic (1 < 2).
/// There are Fibonacci(p+1) of them. Throws DomainError unless 1 <= p <= 24.
std::vector<StepSequence> enumerate_step_sequences(int p);

/// Weight of one path: product of 1/s over the intermediate partial sums s
/// (the final sum p excluded). Magnitude only.
Rational path_weight(const StepSequence& sequence);

/// N_{p,p2}: sum of path weights over paths with exactly p2 double steps.
/// Stored positive; the (-1)^{p2} of the energy denominators is applied in
/// amplitude assembly, where it cancels against the orbital phase.
Rational n_coefficient(int p, int p2);

/// N_{p,0..floor(p/2)} in one pass.
std::vector<Rational> n_coefficients(int p);

/// C_p = sum_{p2} N_{p,p2} / F_zi^{p2}. Requires 2 F_zi = 2p (integer spin)
/// or 2 F_zi = 2p - 1 (half-integer spin); otherwise DomainError.
Rational c_factor(int p, HalfInt fz_initial);

/// The individual terms of C_p after the denominator and orbital phases
/// have been combined. All share one sign.
std::vector<Rational> coherent_terms(int p, HalfInt fz_initial);

/// (2 sqrt(pi) b_i / L) exp(-k_f^2 b_i^2 / 2). Natural-log variant for
/// regimes where the value underflows.
double plane_wave_overlap(double b_i, double k_f, double box_side);
double log_plane_wave_overlap(double b_i, double k_f, double box_side);

struct Amplitude {
    int p = 0;
    double log_magnitude = 0.0; // ln |A| with |A| in joules
    Rational c_p;               // coherent factor actually used
    std::vector<Rational> terms;

    double magnitude() const;
};

/// Closure-limit decay amplitude for an integer-spin trapped state,
///   |A| = hbar w0 (sqrt(chi0)/4)^p chi0^{p-1} <0|F_-^p|F_zi> (b0 k_f)^p I0 C_p.
/// With only_p2 set, C_p is replaced by the single term N_{p,p2}/F_zi^{p2}.
/// Throws DispatchError for half-integer spin, DomainError for F_z <= 0.
Amplitude amplitude_integer(const DerivedParams& derived, const SpinQuantum& spin,
                            double box_side, std::optional<int> only_p2 = std::nullopt);

/// "num/den" (always with a denominator, e.g. "1/1").
std::string to_fraction_string(const Rational& value);

} // namespace majorana
