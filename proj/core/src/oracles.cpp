#include "majorana/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/laguerre.hpp>

#include "majorana/constants.hpp"
#include "majorana/errors.hpp"

namespace majorana::oracle {

namespace c = constants;

namespace {

constexpr int gauss_order = 16;
using GaussRule = boost::math::quadrature::gauss<double, gauss_order>;

// Composite Gauss-Legendre over [0, upper] with at least `points` nodes.
template <class F>
double radial_integral(F&& f, double upper, int points) {
    const int panels = std::max(1, points / gauss_order);
    const double width = upper / panels;
    double sum = 0.0;
    for (int i = 0; i < panels; ++i) {
        sum += GaussRule::integrate(f, i * width, (i + 1) * width);
    }
    return sum;
}

// Polar-grid overlap without convergence control.
double overlap_on_grid(double b, double k, double box_side, double cutoff, int points) {
    const int angular = std::max(points, 8);
    const double step = 2.0 * c::pi / angular;
    const double norm = 1.0 / (box_side * b * std::sqrt(c::pi));
    auto integrand = [&](double r) {
        // Real part only; the imaginary part is odd in the angle.
        double ring = 0.0;
        for (int j = 0; j < angular; ++j) {
            ring += std::cos(k * r * std::cos(j * step));
        }
        return r * ring * step * std::exp(-r * r / (2.0 * b * b));
    };
    return norm * radial_integral(integrand, cutoff * b, points);
}

// R_{n,1}(r) for a 2D oscillator of length b, normalized as int R^2 r dr = 1.
double radial_wavefunction_l1(int n, double b, double r) {
    const double t = r * r / (b * b);
    const double norm = std::sqrt(2.0 / (b * b * (n + 1)));
    return norm * (r / b) * std::exp(-0.5 * t) *
           boost::math::laguerre(static_cast<unsigned>(n), 1u, t);
}

// Neumaier compensated accumulator.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + carry; }
};

struct LogTerm {
    double log_abs;
    int sign;
};

} // namespace

double dense_power_element(HalfInt total, HalfInt fz_initial, HalfInt fz_final) {
    const int tf = total.twice();
    if (tf < 1 || tf > max_twice_spin) {
        throw DomainError("F out of range");
    }
    auto check = [&](HalfInt m) {
        if (std::abs(m.twice()) > tf || (tf - m.twice()) % 2 != 0) {
            throw DomainError("m=" + m.to_string() + " not a projection of F=" + total.to_string());
        }
    };
    check(fz_initial);
    if ((fz_initial.twice() - fz_final.twice()) % 2 != 0) {
        throw DomainError("F_zi - F_zf is not an integer");
    }
    check(fz_final);
    const int steps = (fz_initial.twice() - fz_final.twice()) / 2;
    if (steps <= 0) {
        throw DomainError("final projection must lie below the initial one");
    }

    const Eigen::Index dim = tf + 1;
    Eigen::MatrixXd lower = Eigen::MatrixXd::Zero(dim, dim);
    const double f = total.value();
    for (Eigen::Index i = 0; i + 1 < dim; ++i) {
        const double m = f - static_cast<double>(i);
        lower(i + 1, i) = std::sqrt((f + m) * (f - m + 1.0));
    }
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(dim, dim);
    for (int s = 0; s < steps; ++s) {
        power = lower * power;
    }
    const Eigen::Index row = (tf - fz_final.twice()) / 2;
    const Eigen::Index col = (tf - fz_initial.twice()) / 2;
    return power(row, col);
}

OperatorVector gauge_potential_fd(const TrapConfig& cfg, HalfInt total, const Position& r,
                                  double h) {
    if (!(h > 0.0)) {
        throw DomainError("finite-difference step must be > 0");
    }
    const SpinMatrix u_adj = rotation_matrix(cfg, total, r).adjoint();
    OperatorVector a;
    for (int k = 0; k < 3; ++k) {
        Position forward = r;
        Position backward = r;
        forward[k] += h;
        backward[k] -= h;
        const SpinMatrix du =
            (rotation_matrix(cfg, total, forward) - rotation_matrix(cfg, total, backward)) /
            (2.0 * h);
        a[static_cast<std::size_t>(k)] = std::complex<double>(0.0, -c::hbar) * (u_adj * du);
    }
    return a;
}

double default_fd_step(const TrapConfig& cfg, const Position& r) {
    const double transverse_length = cfg.bias_field_tesla() / cfg.radial_gradient_tesla_per_m();
    return 1e-5 * std::max(transverse_length, r.norm());
}

double numeric_overlap_on_grid(double b_i, double k_f, double box_side, double radial_cutoff,
                               int grid_points) {
    if (!(b_i > 0.0) || !(box_side > 0.0) || k_f < 0.0 || !(radial_cutoff > 0.0) ||
        grid_points < 1) {
        throw DomainError("numeric_overlap_on_grid: invalid arguments");
    }
    return overlap_on_grid(b_i, k_f, box_side, radial_cutoff, grid_points);
}

void QuadratureSpec::validate() const {
    if (radial_cutoff < 8.0) {
        throw DomainError("radial_cutoff must be >= 8 oscillator lengths");
    }
    if (grid_points < 256) {
        throw DomainError("grid_points must be >= 256");
    }
    if (!(tolerance > 0.0)) {
        throw DomainError("tolerance must be > 0");
    }
}

double numeric_overlap(double b_i, double k_f, double box_side, const QuadratureSpec& spec) {
    spec.validate();
    if (!(b_i > 0.0) || !(box_side > 0.0) || k_f < 0.0) {
        throw DomainError("numeric_overlap needs b_i > 0, L > 0, k_f >= 0");
    }
    const double coarse = overlap_on_grid(b_i, k_f, box_side, spec.radial_cutoff, spec.grid_points);
    const double fine =
        overlap_on_grid(b_i, k_f, box_side, spec.radial_cutoff, 2 * spec.grid_points);
    const double scale = std::max(std::abs(fine), std::numeric_limits<double>::min());
    if (std::abs(fine - coarse) > spec.tolerance * scale) {
        throw OracleFailure("overlap quadrature not converged: " + std::to_string(coarse) +
                            " vs " + std::to_string(fine));
    }
    return fine;
}

OrbitalElements orbital_elements_analytic(double b_initial, double b_intermediate, double k,
                                          int n) {
    const double bi = b_initial;
    const double bm = b_intermediate;
    const double s = 0.5 * (1.0 + bm * bm / (bi * bi));
    // int_0^inf t e^{-st} L_n^{(1)}(t) dt = (n+1)(s-1)^n / s^{n+2}
    OrbitalElements e;
    e.p_minus_from_initial =
        bm * bm / (bi * bi * bi) * std::sqrt(n + 1.0) * std::pow(s - 1.0, n) / std::pow(s, n + 2);
    // Oscillator states are their own Fourier transforms with b -> 1/b, up
    // to the phase (-1)^n (-i)^{|L|}.
    const double x = k * k * bm * bm;
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    e.plane_wave_overlap = sign * std::sqrt(2.0 * c::pi) * bm * std::sqrt(2.0 / (n + 1)) *
                           (k * bm) * std::exp(-0.5 * x) *
                           boost::math::laguerre(static_cast<unsigned>(n), 1u, x);
    return e;
}

OrbitalElements orbital_elements_quadrature(double b_initial, double b_intermediate, double k,
                                            int n, int grid_points) {
    const double upper = 12.0 * std::max(b_initial, b_intermediate);
    const double bi = b_initial;
    OrbitalElements e;
    // p_- phi_i = i hbar (r / b_i^2) e^{-i phi} phi_i(r); angular integral 2 pi.
    const double from_initial = radial_integral(
        [&](double r) {
            return radial_wavefunction_l1(n, b_intermediate, r) * r * r *
                   std::exp(-r * r / (2.0 * bi * bi));
        },
        upper, grid_points);
    e.p_minus_from_initial = std::sqrt(2.0) / (bi * bi * bi) * from_initial;
    // int e^{-ik.r} R(r) e^{-i phi} d^2r / sqrt(2 pi) = -i sqrt(2 pi) int R J_1(kr) r dr
    const double hankel = radial_integral(
        [&](double r) {
            return radial_wavefunction_l1(n, b_intermediate, r) *
                   boost::math::cyl_bessel_j(1, k * r) * r;
        },
        upper, grid_points);
    e.plane_wave_overlap = std::sqrt(2.0 * c::pi) * hankel;
    return e;
}

SecondOrderResult second_order_sum(const DerivedParams& derived, const SpinQuantum& spin,
                                   double box_side, const SecondOrderOptions& options) {
    if (spin.two_f() != 4 || spin.two_fz() != 4) {
        throw DomainError("second_order_sum is defined for F = F_zi = 2 only");
    }
    if (!(box_side > 0.0)) {
        throw DomainError("box side must be > 0");
    }
    const double hbar = c::hbar;
    const double mass = derived.mass_kg;
    const double e0 = derived.e0;

    // Initial surface F_z = 2, intermediate surface F_z = 1.
    const double omega_i = derived.omega0 * std::sqrt(2.0);
    const double b_i = std::sqrt(hbar / (mass * omega_i));
    const double omega_m = derived.omega0;
    const double b_m = std::sqrt(hbar / (mass * omega_m));
    const double energy_i = 2.0 * e0 + hbar * omega_i;
    // Final kinetic energy in the adiabatic limit, as in the closure formula.
    const double k = std::sqrt(2.0 * mass * 2.0 * e0) / hbar;

    const double s = 0.5 * (1.0 + b_m * b_m / (b_i * b_i));
    const double x = k * k * b_m * b_m;
    const double log_abs_s_minus_1 = std::log(std::abs(s - 1.0));
    const int sign_s_minus_1 = s >= 1.0 ? 1 : -1;

    auto denominator = [&](int n) {
        if (options.closure_denominators) {
            return -e0;
        }
        return e0 + hbar * omega_m * (2.0 * n + 2.0) - energy_i;
    };

    // log |P_n G_n / D_n| and its sign, with L_n^{(1)}(x) from a rescaled
    // three-term recurrence.
    std::vector<LogTerm> terms;
    double lag_prev = 0.0;  // L_{n-1}
    double lag_cur = 1.0;   // L_n
    double lag_log_scale = 0.0;
    double max_log = -std::numeric_limits<double>::infinity();
    int dominant = 0;
    constexpr double cutoff_orders = 12.0 * 2.302585092994046; // ln 1e12

    for (int n = 0; n <= options.n_max; ++n) {
        if (n > 0) {
            // (n) L_n = (2n - x) L_{n-1} - n L_{n-2}  for alpha = 1
            const double next = ((2.0 * n - x) * lag_cur - n * lag_prev) / n;
            lag_prev = lag_cur;
            lag_cur = next;
            const double mag = std::abs(lag_cur);
            if (mag > 1e150) {
                const double rescale = mag;
                lag_prev /= rescale;
                lag_cur /= rescale;
                lag_log_scale += std::log(rescale);
            }
        }
        const double d = denominator(n);
        if (lag_cur == 0.0 || d == 0.0) {
            terms.push_back({-std::numeric_limits<double>::infinity(), 1});
            continue;
        }
        const double log_p = std::log(b_m * b_m / (b_i * b_i * b_i)) + 0.5 * std::log(n + 1.0) +
                             n * log_abs_s_minus_1 - (n + 2) * std::log(s);
        const double log_g = 0.5 * std::log(2.0 * c::pi) + std::log(b_m) +
                             0.5 * std::log(2.0 / (n + 1.0)) + std::log(k * b_m) - 0.5 * x +
                             lag_log_scale + std::log(std::abs(lag_cur));
        int sign = (lag_cur > 0.0 ? 1 : -1) * (n % 2 == 0 ? 1 : -1) * (d > 0.0 ? 1 : -1);
        if (sign_s_minus_1 < 0 && n % 2 == 1) {
            sign = -sign;
        }
        const double log_term = log_p + log_g - std::log(std::abs(d));
        terms.push_back({log_term, sign});
        if (log_term > max_log) {
            max_log = log_term;
            dominant = n;
        }
        if (n > dominant + 10 && log_term < max_log - cutoff_orders) {
            break;
        }
    }

    SecondOrderResult result;
    result.terms = static_cast<int>(terms.size());
    result.dominant_n = dominant;

    CompensatedSum total;
    CompensatedSum tail;
    const std::size_t tail_start = terms.size() > 10 ? terms.size() - 10 : 0;
    for (std::size_t n = 0; n < terms.size(); ++n) {
        const double v = terms[n].sign * std::exp(terms[n].log_abs - max_log);
        total.add(v);
        if (n >= tail_start) {
            tail.add(v);
        }
        if (options.trace_stride > 0 && n % static_cast<std::size_t>(options.trace_stride) == 0) {
            result.partial_sum_trace.push_back(total.value());
        }
    }
    const double reduced = total.value();
    if (!(std::abs(tail.value()) < 1e-4 * std::abs(reduced))) {
        std::string trace;
        for (double v : result.partial_sum_trace) {
            trace += " " + std::to_string(v);
        }
        throw OracleFailure("second-order sum not converged after " +
                            std::to_string(result.terms) + " terms; partial sums:" + trace);
    }

    // |A| = c1^2 |<0|F_-^2|2>| hbar^2 k / L |sum|, c1 = hbar lambda / (4 m B0)
    //     = hbar sqrt(chi0) / (4 m b0).
    const double c1 = hbar * std::sqrt(derived.chi0) / (4.0 * mass * derived.b0);
    const double spin_factor = dense_power_element(spin.total(), spin.projection(), HalfInt{});
    result.sign = reduced > 0.0 ? 1 : -1;
    result.log_magnitude = 2.0 * std::log(c1) + std::log(std::abs(spin_factor)) +
                           std::log(hbar * hbar * k / box_side) + max_log +
                           std::log(std::abs(reduced));
    return result;
}

} // namespace majorana::oracle
