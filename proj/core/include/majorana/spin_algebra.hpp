#pragma once

#include <compare>
#include <string>

#include <Eigen/Dense>

namespace majorana {

/// Largest supported 2F. Factorials of up to 2F fit the exact integer path.
inline constexpr int max_twice_spin = 24;

/// Exact half-integer stored as twice its value.
class HalfInt {
public:
    constexpr HalfInt() = default;

    static constexpr HalfInt from_twice(int twice) noexcept { return HalfInt(twice); }
    static constexpr HalfInt from_int(int value) noexcept { return HalfInt(2 * value); }

    constexpr int twice() const noexcept { return twice_; }
    constexpr double value() const noexcept { return 0.5 * twice_; }
    constexpr bool is_integer() const noexcept { return twice_ % 2 == 0; }

    constexpr HalfInt operator+(HalfInt o) const noexcept { return HalfInt(twice_ + o.twice_); }
    constexpr HalfInt operator-(HalfInt o) const noexcept { return HalfInt(twice_ - o.twice_); }
    constexpr HalfInt operator-() const noexcept { return HalfInt(-twice_); }
    constexpr auto operator<=>(const HalfInt&) const = default;

    /// "3/2", "-1/2", "2".
    std::string to_string() const;

private:
    constexpr explicit HalfInt(int twice) noexcept : twice_(twice) {}
    int twice_ = 0;
};

/// A (F, F_z) label. Construction validates range and parity.
class SpinQuantum {
public:
    /// Throws DomainError unless 1 <= two_f <= max_twice_spin,
    /// |two_fz| <= two_f and the parities agree.
    static SpinQuantum make(int two_f, int two_fz);

    constexpr HalfInt total() const noexcept { return f_; }
    constexpr HalfInt projection() const noexcept { return fz_; }
    constexpr int two_f() const noexcept { return f_.twice(); }
    constexpr int two_fz() const noexcept { return fz_.twice(); }
    constexpr bool integer_spin() const noexcept { return f_.is_integer(); }

    constexpr bool operator==(const SpinQuantum&) const = default;

private:
    constexpr SpinQuantum(HalfInt f, HalfInt fz) noexcept : f_(f), fz_(fz) {}
    HalfInt f_;
    HalfInt fz_;
};

/// Dense operator on the (2F+1)-dimensional multiplet, rows and columns
/// ordered by descending F_z: index 0 is F_z = F, index 2F is F_z = -F.
using SpinMatrix = Eigen::MatrixXcd;

struct SpinMatrices {
    SpinMatrix fx;
    SpinMatrix fy;
    SpinMatrix fz;
    SpinMatrix fplus;
    SpinMatrix fminus;

    Eigen::Index dim() const noexcept { return fz.rows(); }
};

/// Row/column of |F, m> in the descending-F_z basis.
Eigen::Index basis_index(HalfInt total, HalfInt m);

/// sqrt(F(F+1) - m(m-1)) = <m-1|F_-|m>. Requires m valid and m-1 >= -F.
double lowering_coefficient(HalfInt total, HalfInt m);

SpinMatrices spin_matrices(HalfInt total);

/// <F_zf|F_-^p|F_zi> with p = F_zi - F_zf, as the product of ladder steps.
double lowering_power_element(const SpinQuantum& initial, int two_fz_final);

/// |<0|F_-^p|p>|^2 = (F+p)!/(F-p)! for integer F, evaluated exactly.
double angular_factor_integer(HalfInt total, int p);

/// |<-1/2|F_-^p|p-1/2>|^2 = (F+1/2)(F+p-1/2)!/(F-p+1/2)! for half-integer F.
double angular_factor_half_integer(HalfInt total, int p);

} // namespace majorana
