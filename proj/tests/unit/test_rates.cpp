#include <gtest/gtest.h>

#include <random>

#include "majorana/constants.hpp"
#include "majorana/errors.hpp"
#include "majorana/rates.hpp"
#include "test_support.hpp"

using namespace majorana;
using majorana::testing::relative_error;

namespace {

double omega_i(const TrapConfig& cfg) {
    return surface_params(derive_params(cfg), cfg.spin.two_fz()).omega;
}

} // namespace

TEST(EscapeRateInteger, SpinOneAtUnitChi) {
    const TrapConfig cfg = majorana::testing::at_chi0(majorana::testing::rubidium(2, 2), 1.0);
    const RateBreakdown r = escape_rate_integer(cfg);
    EXPECT_EQ(r.p, 1);
    EXPECT_DOUBLE_EQ(r.chi_power, 1.0);
    EXPECT_DOUBLE_EQ(r.angular, 2.0);
    EXPECT_EQ(r.c_p, 1);
    EXPECT_NEAR(r.exponent, 2.0, 1e-12);
    // pi e^{-2}
    EXPECT_LT(relative_error(r.rate / omega_i(cfg), 0.425168331587636), 1e-11);
    EXPECT_FALSE(r.notes.empty());  // chi0 = 1 is outside the adiabatic regime
}

TEST(EscapeRateInteger, SpinTwoAtUnitChi) {
    const TrapConfig cfg = majorana::testing::at_chi0(majorana::testing::rubidium(4, 4), 1.0);
    const RateBreakdown r = escape_rate_integer(cfg);
    EXPECT_EQ(r.p, 2);
    EXPECT_NEAR(r.chi_power, 0.25, 1e-12);
    EXPECT_DOUBLE_EQ(r.angular, 24.0);
    EXPECT_EQ(r.c_p, Rational(3, 2));
    EXPECT_DOUBLE_EQ(r.c_p_squared, 2.25);
    EXPECT_NEAR(r.exponent, 2.0 * std::sqrt(2.0), 1e-12);
    // (pi/2)(1/4)(24)(9/4) e^{-2 sqrt 2}
    EXPECT_LT(relative_error(r.rate / omega_i(cfg), 1.25338170949188), 1e-11);
}

TEST(EscapeRateInteger, RubidiumUnderflowKeepsLogRate) {
    const RateBreakdown r = escape_rate_integer(majorana::testing::rubidium(2, 2));
    EXPECT_EQ(r.rate, 0.0);
    EXPECT_LT(std::abs(r.log_rate - (-15514.8414834366)), 1e-7);
}

TEST(EscapeRateInteger, PropertyDecreasesWithChi) {
    std::mt19937_64 rng(majorana::testing::property_seed + 2);
    std::uniform_real_distribution<double> log_chi(std::log(2e-3), std::log(0.5));
    for (int trial = 0; trial < 100; ++trial) {
        const int two_f = 2 * std::uniform_int_distribution<int>(1, 6)(rng);
        const int two_fz = 2 * std::uniform_int_distribution<int>(1, two_f / 2)(rng);
        const double chi = std::exp(log_chi(rng));
        const TrapConfig base = majorana::testing::rubidium(two_f, two_fz);
        const RateBreakdown high = escape_rate_integer(majorana::testing::at_chi0(base, chi));
        const RateBreakdown low = escape_rate_integer(majorana::testing::at_chi0(base, chi / 2));
        EXPECT_LT(low.log_rate, high.log_rate);
    }
}

TEST(EscapeRate, DispatchByParity) {
    EXPECT_THROW(escape_rate_integer(majorana::testing::rubidium(3, 3)), DispatchError);
    EXPECT_THROW(escape_rate_half_integer(majorana::testing::rubidium(4, 4)), DispatchError);
    EXPECT_EQ(escape_rate(majorana::testing::rubidium(3, 3)).p, 2);
    EXPECT_EQ(escape_rate(majorana::testing::rubidium(4, 2)).p, 1);
}

TEST(CSemiclassical, Values) {
    EXPECT_NEAR(c_semiclassical(HalfInt::from_twice(1)), constants::pi / 4.0, 1e-15);
    EXPECT_NEAR(c_semiclassical(HalfInt::from_twice(3)), 0.90689968211710893, 1e-15);
    EXPECT_NEAR(c_semiclassical(HalfInt::from_int(50)), 0.99668652491162027, 1e-15);
    EXPECT_GT(c_semiclassical(HalfInt::from_int(50)), 0.996);
    EXPECT_THROW(c_semiclassical(HalfInt::from_int(0)), DomainError);
}

TEST(EscapeRateHalfInteger, SpinHalfClosedForm) {
    // Atomic hydrogen: g = 2, B0 = 0.01 G, lambda = 1 G/cm.
    const TrapConfig cfg = majorana::testing::make_trap(0.01, 1.0, 2.0, 1.00794, 1, 1);
    const RateBreakdown r = escape_rate_half_integer(cfg);
    EXPECT_EQ(r.p, 1);
    EXPECT_DOUBLE_EQ(r.chi_power, 1.0);
    EXPECT_DOUBLE_EQ(r.angular, 1.0);
    EXPECT_EQ(r.c_p, 1);
    const double kb2 = r.k_f * r.k_f * r.b_i * r.b_i;
    EXPECT_LT(relative_error(kb2, 236.281383753449), 1e-12);
    const double closed = 0.5 * constants::pi * omega_i(cfg) * std::exp(-constants::pi * kb2 / 4.0);
    EXPECT_LT(relative_error(r.rate, closed), 1e-12);
    EXPECT_LT(relative_error(r.rate, 2.97665538557656e-78), 1e-11);
}

TEST(EscapeRateHalfInteger, ThreeHalvesAtUnitChi) {
    const TrapConfig cfg = majorana::testing::at_chi0(majorana::testing::rubidium(3, 3), 1.0);
    const RateBreakdown r = escape_rate_half_integer(cfg);
    EXPECT_EQ(r.p, 2);
    EXPECT_DOUBLE_EQ(r.angular, 12.0);
    EXPECT_EQ(r.c_p, Rational(5, 3));
    EXPECT_NEAR(r.chi_power, 0.25, 1e-12);
    EXPECT_NEAR(r.exponent, 0.90689968211710893 * 2.0 * std::sqrt(1.5), 1e-11);
}

TEST(EscapeRateMomentum, GroundStateReproducesInteger) {
    for (int two_f : {2, 4, 6}) {
        for (double chi : {0.3, 0.05, 1e-2}) {
            const TrapConfig cfg =
                majorana::testing::at_chi0(majorana::testing::rubidium(two_f, two_f), chi);
            const RateBreakdown ref = escape_rate_integer(cfg);
            const RateBreakdown mom = escape_rate_momentum(cfg, ground_state_density(ref.b_i));
            EXPECT_LT(relative_error(mom.rate, ref.rate), 1e-12);
            EXPECT_LT(std::abs(mom.log_rate - ref.log_rate), 1e-12 * std::abs(ref.log_rate) + 1e-14);
            EXPECT_NEAR(mom.density_weight, 1.0, 1e-14);
        }
    }
}

TEST(EscapeRateMomentum, VanishingDensityGivesZeroRate) {
    const TrapConfig cfg = majorana::testing::rubidium(4, 4);
    const double b = escape_rate_integer(cfg).b_i;
    MomentumDensity narrow = ground_state_density(b);
    narrow.log_ratio = nullptr;  // force evaluation of P(k_f), which underflows
    const RateBreakdown r = escape_rate_momentum(cfg, narrow);
    EXPECT_EQ(r.rate, 0.0);
}

TEST(EscapeRateMomentum, RejectsUnnormalizedDensity) {
    const TrapConfig cfg = majorana::testing::rubidium(4, 4);
    const double b = escape_rate_integer(cfg).b_i;
    MomentumDensity doubled = ground_state_density(b);
    auto inner = doubled.density;
    doubled.density = [inner](double k) { return 2.0 * inner(k); };
    EXPECT_THROW(escape_rate_momentum(cfg, doubled), ValidationError);
}

TEST(EscapeRateThermal, ExponentIsBoltzmannFactor) {
    const TrapConfig cfg = majorana::testing::rubidium(4, 4);
    const RateBreakdown r = escape_rate_thermal(cfg, 1e-6);
    EXPECT_LT(relative_error(r.exponent, 67.171381562584), 1e-12);
    const double direct = constants::hbar * constants::hbar * r.k_f * r.k_f /
                          (2.0 * cfg.mass_kg() * constants::boltzmann * 1e-6);
    EXPECT_LT(relative_error(r.exponent, direct), 1e-12);
    bool has_note = false;
    for (const auto& n : r.notes) {
        has_note = has_note || n.find("C_p") != std::string::npos;
    }
    EXPECT_TRUE(has_note);
    EXPECT_THROW(escape_rate_thermal(cfg, 0.0), ValidationError);
}

TEST(DensityNorm, GroundAndThermal) {
    EXPECT_NEAR(density_norm(ground_state_density(1e-6)), 1.0, 1e-10);
    EXPECT_NEAR(density_norm(thermal_density(87 * constants::atomic_mass_unit, 1e-6)), 1.0, 1e-10);
}
