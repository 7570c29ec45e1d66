#include <gtest/gtest.h>

#include <random>

#include "majorana/adiabatic_frame.hpp"
#include "majorana/constants.hpp"
#include "majorana/errors.hpp"
#include "majorana/oracles.hpp"
#include "majorana/perturbation.hpp"
#include "test_support.hpp"

using namespace majorana;
using majorana::testing::relative_error;

namespace {

HalfInt half(int twice) { return HalfInt::from_twice(twice); }

double max_abs(const SpinMatrix& m) { return m.cwiseAbs().maxCoeff(); }

double fd_error(const TrapConfig& cfg, HalfInt f, const Position& r, double h) {
    const OperatorVector analytic = gauge_potential(cfg, f, r).total();
    const OperatorVector fd = oracle::gauge_potential_fd(cfg, f, r, h);
    double norm = 0.0;
    double diff = 0.0;
    for (int k = 0; k < 3; ++k) {
        norm = std::max(norm, max_abs(analytic[k]));
        diff = std::max(diff, max_abs(analytic[k] - fd[k]));
    }
    return diff / norm;
}

double exact_over_closure(double chi0) {
    const TrapConfig cfg = majorana::testing::at_chi0(majorana::testing::rubidium(4, 4), chi0);
    const DerivedParams d = derive_params(cfg);
    const auto exact = oracle::second_order_sum(d, cfg.spin, 1e-2);
    oracle::SecondOrderOptions opts;
    opts.closure_denominators = true;
    const auto closure = oracle::second_order_sum(d, cfg.spin, 1e-2, opts);
    return exact.sign * closure.sign * std::exp(exact.log_magnitude - closure.log_magnitude);
}

} // namespace

TEST(DensePowerElement, KnownValues) {
    EXPECT_NEAR(oracle::dense_power_element(half(4), half(4), half(0)), 2.0 * std::sqrt(6.0), 1e-13);
    EXPECT_NEAR(oracle::dense_power_element(half(1), half(1), half(-1)), 1.0, 1e-15);
    const double e = oracle::dense_power_element(half(6), half(6), half(0));
    EXPECT_NEAR(e * e, 720.0, 1e-9);
    EXPECT_THROW(oracle::dense_power_element(half(4), half(0), half(2)), DomainError);
    EXPECT_THROW(oracle::dense_power_element(half(4), half(4), half(1)), DomainError);
    EXPECT_THROW(oracle::dense_power_element(half(4), half(6), half(0)), DomainError);
}

TEST(GaugePotentialFd, DefaultStepMeetsTolerance) {
    const TrapConfig cfg = majorana::testing::rubidium(2, 2);
    std::mt19937_64 rng(majorana::testing::property_seed + 13);
    const double scale = 5.0 * cfg.bias_field_tesla() / cfg.radial_gradient_tesla_per_m();
    std::uniform_real_distribution<double> coord(-scale, scale);
    for (int i = 0; i < 30; ++i) {
        const Position r{coord(rng), coord(rng), coord(rng)};
        EXPECT_LT(fd_error(cfg, half(2), r, oracle::default_fd_step(cfg, r)), 1e-6);
    }
}

TEST(GaugePotentialFd, TruncationThenCancellation) {
    const TrapConfig cfg = majorana::testing::rubidium(2, 2);
    const double length = cfg.bias_field_tesla() / cfg.radial_gradient_tesla_per_m();
    const Position r{0.7 * length, -0.4 * length, 0.0};
    const double coarse = fd_error(cfg, half(2), r, 1e-2 * length);
    const double mid = fd_error(cfg, half(2), r, 1e-3 * length);
    const double fine = fd_error(cfg, half(2), r, 1e-4 * length);
    EXPECT_LT(mid, coarse / 50.0);
    EXPECT_LT(fine, mid / 50.0);
    const double tiny = fd_error(cfg, half(2), r, 1e-12 * length);
    EXPECT_GT(tiny, fine);  // roundoff floor
    EXPECT_THROW(oracle::gauge_potential_fd(cfg, half(2), r, 0.0), DomainError);
}

TEST(GaugePotentialFd, OriginHasOnlyFirstTerm) {
    const TrapConfig cfg = majorana::testing::rubidium(2, 2);
    const Position origin{0, 0, 0};
    const OperatorVector fd =
        oracle::gauge_potential_fd(cfg, half(1), origin, oracle::default_fd_step(cfg, origin));
    const GaugePotential a = gauge_potential(cfg, half(1), origin);
    const double scale = max_abs(a.a1[0]);
    for (int k = 0; k < 3; ++k) {
        EXPECT_LT(max_abs(fd[k] - a.a1[k]), 1e-10 * scale);
    }
}

TEST(NumericOverlap, MatchesClosedForm) {
    const double b = 1e-6;
    const double box = 1e-2;
    EXPECT_LT(relative_error(oracle::numeric_overlap(b, 0.0, box),
                             2.0 * std::sqrt(constants::pi) * b / box),
              1e-8);
    EXPECT_LT(relative_error(oracle::numeric_overlap(b, 1.0 / b, box),
                             plane_wave_overlap(b, 1.0 / b, box)),
              1e-8);
    EXPECT_LT(relative_error(oracle::numeric_overlap(b, 1e6, box), 2.15009520699984e-4), 1e-8);
}

TEST(NumericOverlap, CutoffTail) {
    const double b = 1e-6;
    oracle::QuadratureSpec eight;
    eight.radial_cutoff = 8.0;
    oracle::QuadratureSpec twelve;
    twelve.radial_cutoff = 12.0;
    for (double kb : {0.0, 1.0, 2.0}) {
        const double a = oracle::numeric_overlap(b, kb / b, 1e-2, eight);
        const double c = oracle::numeric_overlap(b, kb / b, 1e-2, twelve);
        EXPECT_LT(relative_error(a, c), 1e-10);
    }
}

TEST(NumericOverlap, SpectralConvergence) {
    const double b = 1e-6;
    const double k = 2.0 / b;
    const double exact = plane_wave_overlap(b, k, 1e-2);
    double previous = std::numeric_limits<double>::infinity();
    bool reached_floor = false;
    for (int points = 16; points <= 256; points *= 2) {
        const double err =
            relative_error(oracle::numeric_overlap_on_grid(b, k, 1e-2, 10.0, points), exact);
        if (previous > 1e-12) {
            EXPECT_LT(err, previous / 10.0) << points;
        } else {
            reached_floor = true;
        }
        previous = err;
    }
    EXPECT_TRUE(reached_floor);
}

TEST(NumericOverlap, SpecValidation) {
    oracle::QuadratureSpec bad;
    bad.radial_cutoff = 6.0;
    EXPECT_THROW(oracle::numeric_overlap(1e-6, 0.0, 1e-2, bad), DomainError);
    bad = {};
    bad.grid_points = 100;
    EXPECT_THROW(oracle::numeric_overlap(1e-6, 0.0, 1e-2, bad), DomainError);
    EXPECT_THROW(oracle::numeric_overlap(-1e-6, 0.0, 1e-2), DomainError);
}

TEST(OrbitalElements, AnalyticMatchesQuadrature) {
    const double b_m = 1e-6;
    const double b_i = b_m / std::pow(2.0, 0.25);
    for (double kb : {0.5, 2.0, 4.0}) {
        const double k = kb / b_m;
        for (int n = 0; n <= 10; ++n) {
            const auto a = oracle::orbital_elements_analytic(b_i, b_m, k, n);
            const auto q = oracle::orbital_elements_quadrature(b_i, b_m, k, n);
            EXPECT_NEAR(a.p_minus_from_initial, q.p_minus_from_initial,
                        1e-9 * std::abs(oracle::orbital_elements_analytic(b_i, b_m, k, 0)
                                            .p_minus_from_initial))
                << "n=" << n;
            EXPECT_NEAR(a.plane_wave_overlap, q.plane_wave_overlap, 1e-9 * b_m) << "n=" << n;
        }
    }
}

TEST(SecondOrderSum, ClosureDenominatorsReproduceClosure) {
    int sign = 0;
    for (double chi0 : {0.3, 1e-2, 1e-3}) {
        const TrapConfig cfg = majorana::testing::at_chi0(majorana::testing::rubidium(4, 4), chi0);
        const DerivedParams d = derive_params(cfg);
        oracle::SecondOrderOptions opts;
        opts.closure_denominators = true;
        const auto sum = oracle::second_order_sum(d, cfg.spin, 1e-2, opts);
        const Amplitude closure = amplitude_integer(d, cfg.spin, 1e-2, 0);
        EXPECT_LT(std::abs(std::expm1(sum.log_magnitude - closure.log_magnitude)), 1e-10) << chi0;
        if (sign == 0) {
            sign = sum.sign;
        }
        EXPECT_EQ(sum.sign, sign);  // overall phase convention does not depend on chi0
    }
}

TEST(SecondOrderSum, ExactDenominatorsMatchReference) {
    // Reference ratios from a 60-digit evaluation of the same sum.
    EXPECT_LT(relative_error(exact_over_closure(0.3), 1.0067024848071), 1e-8);
    EXPECT_LT(relative_error(exact_over_closure(0.1), -2.3916063105611), 1e-8);
    EXPECT_LT(relative_error(exact_over_closure(1e-2), -7.86374893698844), 1e-8);
    EXPECT_LT(relative_error(exact_over_closure(3e-3), 8.22643076279884), 1e-8);
    EXPECT_LT(relative_error(exact_over_closure(1e-3), -25.2055448366362), 1e-8);
}

TEST(SecondOrderSum, DominantIntermediateState) {
    for (auto [chi0, dominant] : {std::pair{1e-2, 50}, {3e-3, 166}, {1e-3, 500}}) {
        const TrapConfig cfg = majorana::testing::at_chi0(majorana::testing::rubidium(4, 4), chi0);
        const auto r = oracle::second_order_sum(derive_params(cfg), cfg.spin, 1e-2);
        EXPECT_EQ(r.dominant_n, dominant);
        EXPECT_GT(r.terms, dominant);
    }
}

TEST(SecondOrderSum, TraceAndErrors) {
    const TrapConfig cfg = majorana::testing::at_chi0(majorana::testing::rubidium(4, 4), 1e-2);
    const DerivedParams d = derive_params(cfg);
    oracle::SecondOrderOptions opts;
    opts.trace_stride = 10;
    const auto r = oracle::second_order_sum(d, cfg.spin, 1e-2, opts);
    EXPECT_EQ(r.partial_sum_trace.size(), static_cast<std::size_t>((r.terms + 9) / 10));
    EXPECT_THROW(oracle::second_order_sum(d, SpinQuantum::make(2, 2), 1e-2), DomainError);
    EXPECT_THROW(oracle::second_order_sum(d, cfg.spin, 0.0), DomainError);
    opts.n_max = 5;
    EXPECT_THROW(oracle::second_order_sum(d, cfg.spin, 1e-2, opts), OracleFailure);
}
