#pragma once

#include <array>

#include <Eigen/Dense>

#include "majorana/spin_algebra.hpp"
#include "majorana/trap_model.hpp"

namespace majorana {

/// Unit vector n bisecting z and the local field direction, written as
/// n = (beta x, -beta y, alpha) with alpha^2 = (B0+B)/2B and
/// beta^2 = lambda^2 / (2B(B0+B)). SI: beta in 1/m.
struct BisectorFrame {
    Eigen::Vector3d n;
    double alpha = 0.0;
    double beta = 0.0;
};

/// Spin-operator-valued vector field: one SpinMatrix per Cartesian component.
using OperatorVector = std::array<SpinMatrix, 3>;

/// A = -i hbar U^dagger grad U split as A1 + A2 + A3 (units: kg m/s).
///   A1 = 2 hbar alpha beta (F_y grad x + F_x grad y)
///   A2 = 2 hbar beta^2 (y grad x - x grad y) F_z
///   A3 = 2 hbar (y F_x + x F_y)(alpha grad beta - beta grad alpha)
struct GaugePotential {
    OperatorVector a1;
    OperatorVector a2;
    OperatorVector a3;

    OperatorVector total() const;
};

struct CouplingStrengths {
    double v1_scale = 0.0; // J, hbar omega0 sqrt(chi0)/4
    double v2_scale = 0.0; // J, hbar omega0 chi0^2/16
};

/// Throws SingularFrameError if |B(r)| = 0.
BisectorFrame bisector(const TrapConfig& cfg, const Position& r);

/// U(r) = exp(i pi n(r).F) by dense matrix exponential.
SpinMatrix rotation_matrix(const TrapConfig& cfg, HalfInt total, const Position& r);

/// Closed-form gauge potential at r, keeping the exact |B(r)|.
GaugePotential gauge_potential(const TrapConfig& cfg, HalfInt total, const Position& r);

/// Prefactors of the F_z-lowering couplings with B replaced by B0.
CouplingStrengths coupling_strengths(const DerivedParams& derived);

} // namespace majorana
