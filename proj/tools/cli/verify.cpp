#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "majorana/adiabatic_frame.hpp"
#include "majorana/errors.hpp"
#include "majorana/oracles.hpp"
#include "majorana/perturbation.hpp"

namespace majorana::cli {

namespace {

struct Check {
    std::string name;
    bool hard = true;
    double tolerance = 0.0;
    double measured = 0.0;
    bool pass = false;
    std::string detail;
};

TrapConfig rubidium(int two_f, int two_fz) {
    TrapConfig cfg;
    cfg.bias_field_gauss = 1.0;
    cfg.radial_gradient_gauss_per_cm = 100.0;
    cfg.g_factor = 0.5;
    cfg.mass_amu = 87.0;
    cfg.spin = SpinQuantum::make(two_f, two_fz);
    return cfg;
}

double max_abs(const SpinMatrix& m) { return m.cwiseAbs().maxCoeff(); }

Check check_ladder_powers() {
    Check c{"dense_power_element", true, 1e-10, 0.0, false, {}};
    double worst = 0.0;
    for (int two_f = 1; two_f <= 12; ++two_f) {
        const HalfInt f = HalfInt::from_twice(two_f);
        for (int two_fz = two_f; two_fz > 0; two_fz -= 2) {
            const SpinQuantum q = SpinQuantum::make(two_f, two_fz);
            for (int two_fzf = two_fz - 2; two_fzf >= -two_f; two_fzf -= 2) {
                const double dense = oracle::dense_power_element(f, q.projection(),
                                                                 HalfInt::from_twice(two_fzf));
                const double ladder = lowering_power_element(q, two_fzf);
                worst = std::max(worst, std::abs(dense - ladder) / std::abs(dense));
            }
        }
        for (int p = 1; 2 * p <= two_f + 1; ++p) {
            double closed = 0.0;
            double dense = 0.0;
            if (f.is_integer()) {
                closed = angular_factor_integer(f, p);
                dense = oracle::dense_power_element(f, HalfInt::from_int(p), HalfInt{});
            } else {
                closed = angular_factor_half_integer(f, p);
                dense = oracle::dense_power_element(f, HalfInt::from_twice(2 * p - 1),
                                                    HalfInt::from_twice(-1));
            }
            worst = std::max(worst, std::abs(dense * dense - closed) / closed);
        }
    }
    c.measured = worst;
    c.pass = worst < c.tolerance;
    c.detail = "F <= 6, every admissible p";
    return c;
}

Check check_diagonalization(std::mt19937_64& rng) {
    Check c{"rotation_matrix", true, 1e-10, 0.0, false, {}};
    const TrapConfig cfg = rubidium(4, 4);
    const double scale = 5.0 * cfg.bias_field_gauss / cfg.radial_gradient_gauss_per_cm * 1e-2;
    std::uniform_real_distribution<double> coord(-scale, scale);
    double worst = 0.0;
    for (int two_f : {1, 2, 3, 4, 6}) {
        const HalfInt f = HalfInt::from_twice(two_f);
        const SpinMatrices s = spin_matrices(f);
        for (int i = 0; i < 20; ++i) {
            const Position r{coord(rng), coord(rng), coord(rng)};
            const Eigen::Vector3d bhat = field_vector(cfg, r).normalized();
            const SpinMatrix u = rotation_matrix(cfg, f, r);
            const SpinMatrix proj = bhat.x() * s.fx + bhat.y() * s.fy + bhat.z() * s.fz;
            worst = std::max(worst, max_abs(u.adjoint() * proj * u - s.fz));
        }
    }
    c.measured = worst;
    c.pass = worst < c.tolerance;
    c.detail = "100 points, F in {1/2, 1, 3/2, 2, 3}";
    return c;
}

Check check_gauge(std::mt19937_64& rng) {
    Check c{"gauge_potential_fd", true, 1e-6, 0.0, false, {}};
    const TrapConfig cfg = rubidium(4, 4);
    const double scale = 5.0 * cfg.bias_field_gauss / cfg.radial_gradient_gauss_per_cm * 1e-2;
    std::uniform_real_distribution<double> coord(-scale, scale);
    const HalfInt f = HalfInt::from_int(2);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const Position r{coord(rng), coord(rng), coord(rng)};
        const OperatorVector analytic = gauge_potential(cfg, f, r).total();
        const OperatorVector fd =
            oracle::gauge_potential_fd(cfg, f, r, oracle::default_fd_step(cfg, r));
        double norm = 0.0;
        double diff = 0.0;
        for (int k = 0; k < 3; ++k) {
            norm = std::max(norm, max_abs(analytic[k]));
            diff = std::max(diff, max_abs(analytic[k] - fd[k]));
        }
        worst = std::max(worst, diff / norm);
    }
    c.measured = worst;
    c.pass = worst < c.tolerance;
    c.detail = "50 points, F = 2";
    return c;
}

Check check_overlap() {
    Check c{"numeric_overlap", true, 1e-8, 0.0, false, {}};
    const double b = 1e-6;
    const double box = 1e-2;
    double worst = 0.0;
    for (double kb : {0.0, 0.5, 1.0, 2.0, 3.0}) {
        const double k = kb / b;
        const double numeric = oracle::numeric_overlap(b, k, box);
        const double closed = plane_wave_overlap(b, k, box);
        worst = std::max(worst, std::abs(numeric - closed) / closed);
    }
    c.measured = worst;
    c.pass = worst < c.tolerance;
    c.detail = "k b in {0, 0.5, 1, 2, 3}";
    return c;
}

TrapConfig rubidium_at_chi0(double chi0) {
    TrapConfig cfg = rubidium(4, 4);
    cfg.bias_field_gauss = bias_field_for_chi0(cfg, chi0);
    return cfg;
}

Check check_closure_limit() {
    Check c{"second_order_sum closure self-test", true, 1e-10, 0.0, false, {}};
    const TrapConfig cfg = rubidium_at_chi0(1e-2);
    const DerivedParams d = derive_params(cfg);
    const double box = 1e-2;
    oracle::SecondOrderOptions opts;
    opts.closure_denominators = true;
    const auto sum = oracle::second_order_sum(d, cfg.spin, box, opts);
    const Amplitude closure = amplitude_integer(d, cfg.spin, box, 0);
    c.measured = std::abs(std::expm1(sum.log_magnitude - closure.log_magnitude));
    c.pass = c.measured < c.tolerance;
    c.detail = "all denominators -E0, chi0 = 0.01";
    return c;
}

std::vector<Check> check_second_order(double& slope) {
    std::vector<Check> checks;
    const double box = 1e-2;
    std::vector<double> log_chi;
    std::vector<double> log_dev;
    double previous = std::numeric_limits<double>::infinity();
    for (double chi0 : {1e-2, 3e-3, 1e-3}) {
        const TrapConfig cfg = rubidium_at_chi0(chi0);
        const DerivedParams d = derive_params(cfg);
        const auto exact = oracle::second_order_sum(d, cfg.spin, box);
        oracle::SecondOrderOptions opts;
        opts.closure_denominators = true;
        const auto closure = oracle::second_order_sum(d, cfg.spin, box, opts);
        const double ratio = exact.sign * closure.sign *
                             std::exp(exact.log_magnitude - closure.log_magnitude);
        const double deviation = std::abs(ratio - 1.0);

        Check c;
        c.name = "second_order_sum chi0=" + format_double(chi0);
        c.hard = false;
        c.tolerance = 1.0;
        c.measured = deviation;
        c.pass = ratio >= 0.5 && ratio <= 2.0 && deviation < previous;
        std::ostringstream detail;
        detail << "exact/closure=" << format_double(ratio) << " terms=" << exact.terms
               << " dominant_n=" << exact.dominant_n;
        c.detail = detail.str();
        checks.push_back(c);

        previous = deviation;
        log_chi.push_back(std::log(chi0));
        log_dev.push_back(std::log(deviation));
    }
    const double n = static_cast<double>(log_chi.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < log_chi.size(); ++i) {
        sx += log_chi[i];
        sy += log_dev[i];
        sxx += log_chi[i] * log_chi[i];
        sxy += log_chi[i] * log_dev[i];
    }
    slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return checks;
}

template <typename F>
Check guarded(const std::string& name, double tolerance, F&& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        return Check{name, true, tolerance, std::numeric_limits<double>::quiet_NaN(), false,
                     std::string("error: ") + e.what()};
    }
}

} // namespace

Report run_verification(bool fast) {
    std::mt19937_64 rng(20240611);
    std::vector<Check> checks;
    checks.push_back(guarded("dense_power_element", 1e-10, check_ladder_powers));
    checks.push_back(guarded("rotation_matrix", 1e-10, [&] { return check_diagonalization(rng); }));
    checks.push_back(guarded("gauge_potential_fd", 1e-6, [&] { return check_gauge(rng); }));
    checks.push_back(guarded("numeric_overlap", 1e-8, check_overlap));

    double slope = std::numeric_limits<double>::quiet_NaN();
    if (!fast) {
        checks.push_back(guarded("second_order_sum closure self-test", 1e-10, check_closure_limit));
        try {
            for (auto& c : check_second_order(slope)) {
                checks.push_back(std::move(c));
            }
        } catch (const std::exception& e) {
            checks.push_back(Check{"second_order_sum", false, 1.0,
                                   std::numeric_limits<double>::quiet_NaN(), false,
                                   std::string("error: ") + e.what()});
        }
    }

    Report report;
    report.meta.emplace_back("mode", fast ? "fast" : "full");
    if (!fast) {
        report.meta.emplace_back("second_order_fitted_slope", format_double(slope));
    }
    report.columns = {"oracle", "gate", "tolerance", "measured", "status", "detail"};
    std::ostringstream text;
    for (const auto& c : checks) {
        std::string status;
        if (c.hard) {
            status = c.pass ? "pass" : "fail";
            report.failed = report.failed || !c.pass;
        } else {
            status = c.pass ? "trend-ok" : "trend-violated";
        }
        report.rows.push_back({c.name, std::string(c.hard ? "hard" : "expectation"), c.tolerance,
                               c.measured, status, c.detail});
        text << (c.hard ? "[hard] " : "[trend] ") << c.name << ": measured "
             << format_double(c.measured) << " tolerance " << format_double(c.tolerance) << " -> "
             << status;
        if (!c.detail.empty()) {
            text << " (" << c.detail << ")";
        }
        text << '\n';
    }
    if (!fast) {
        text << "fitted slope d ln(deviation) / d ln(chi0): " << format_double(slope) << '\n';
    }
    text << (report.failed ? "verify: FAILED\n" : "verify: all hard checks passed\n");
    report.text = text.str();
    return report;
}

} // namespace majorana::cli
