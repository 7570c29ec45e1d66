#include "majorana/adiabatic_frame.hpp"

#include <cmath>
#include <complex>

#include <unsupported/Eigen/MatrixFunctions>

#include "majorana/constants.hpp"
#include "majorana/errors.hpp"

namespace majorana {

namespace c = constants;

namespace {

struct FieldSI {
    double b0;
    double lambda;
    double magnitude;
};

FieldSI field_si(const TrapConfig& cfg, const Position& r) {
    const double b0 = cfg.bias_field_tesla();
    const double lambda = cfg.radial_gradient_tesla_per_m();
    const double magnitude = std::hypot(b0, lambda * std::hypot(r.x(), r.y()));
    if (!(magnitude > 0.0) || !(b0 + magnitude > 0.0)) {
        throw SingularFrameError("bisector frame undefined where |B| = 0");
    }
    return {b0, lambda, magnitude};
}

SpinMatrix zero_like(const SpinMatrix& m) { return SpinMatrix::Zero(m.rows(), m.cols()); }

} // namespace

OperatorVector GaugePotential::total() const {
    return {a1[0] + a2[0] + a3[0], a1[1] + a2[1] + a3[1], a1[2] + a2[2] + a3[2]};
}

BisectorFrame bisector(const TrapConfig& cfg, const Position& r) {
    const auto [b0, lambda, b] = field_si(cfg, r);
    BisectorFrame f;
    f.alpha = std::sqrt((b0 + b) / (2.0 * b));
    f.beta = lambda / std::sqrt(2.0 * b * (b0 + b));
    f.n = {f.beta * r.x(), -f.beta * r.y(), f.alpha};
    return f;
}

SpinMatrix rotation_matrix(const TrapConfig& cfg, HalfInt total, const Position& r) {
    const BisectorFrame frame = bisector(cfg, r);
    const SpinMatrices s = spin_matrices(total);
    const SpinMatrix generator = frame.n.x() * s.fx + frame.n.y() * s.fy + frame.n.z() * s.fz;
    const SpinMatrix exponent = std::complex<double>(0.0, c::pi) * generator;
    return exponent.exp();
}

GaugePotential gauge_potential(const TrapConfig& cfg, HalfInt total, const Position& r) {
    const auto [b0, lambda, b] = field_si(cfg, r);
    const BisectorFrame frame = bisector(cfg, r);
    const SpinMatrices s = spin_matrices(total);
    const double x = r.x();
    const double y = r.y();

    // alpha beta = lambda / 2B
    const double ab = lambda / (2.0 * b);
    const double beta2 = frame.beta * frame.beta;
    // alpha grad beta - beta grad alpha = -lambda^3 rho_vec / (2 B^2 (B + B0)).
    // Only the in-plane components are nonzero; the sign follows from
    // differentiating alpha and beta directly (both fall off with rho).
    const double mixed = -lambda * lambda * lambda / (2.0 * b * b * (b + b0));

    GaugePotential a;
    const SpinMatrix zero = zero_like(s.fz);

    a.a1 = {2.0 * c::hbar * ab * s.fy, 2.0 * c::hbar * ab * s.fx, zero};
    a.a2 = {2.0 * c::hbar * beta2 * y * s.fz, -2.0 * c::hbar * beta2 * x * s.fz, zero};

    const SpinMatrix transverse = y * s.fx + x * s.fy;
    a.a3 = {2.0 * c::hbar * mixed * x * transverse, 2.0 * c::hbar * mixed * y * transverse, zero};
    return a;
}

CouplingStrengths coupling_strengths(const DerivedParams& derived) {
    const double unit = c::hbar * derived.omega0;
    return {unit * std::sqrt(derived.chi0) / 4.0, unit * derived.chi0 * derived.chi0 / 16.0};
}

} // namespace majorana
