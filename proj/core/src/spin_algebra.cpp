#include "majorana/spin_algebra.hpp"

#include <cmath>
#include <complex>
#include <cstdlib>

#include <boost/multiprecision/cpp_int.hpp>

#include "majorana/errors.hpp"

namespace majorana {

namespace {

using boost::multiprecision::cpp_int;

void require_total(HalfInt total) {
    if (total.twice() < 1 || total.twice() > max_twice_spin) {
        throw DomainError("spin F=" + total.to_string() + " outside supported range 1/2.." +
                          std::to_string(max_twice_spin / 2));
    }
}

bool valid_projection(HalfInt total, HalfInt m) {
    return std::abs(m.twice()) <= total.twice() && (total.twice() - m.twice()) % 2 == 0;
}

// lo * (lo+1) * ... * hi, empty product = 1.
cpp_int rising_product(int lo, int hi) {
    cpp_int out = 1;
    for (int k = lo; k <= hi; ++k) {
        out *= k;
    }
    return out;
}

} // namespace

std::string HalfInt::to_string() const {
    if (is_integer()) {
        return std::to_string(twice_ / 2);
    }
    return std::to_string(twice_) + "/2";
}

SpinQuantum SpinQuantum::make(int two_f, int two_fz) {
    if (two_f < 1 || two_f > max_twice_spin) {
        throw DomainError("two_f=" + std::to_string(two_f) + " outside 1.." +
                          std::to_string(max_twice_spin));
    }
    if (std::abs(two_fz) > two_f) {
        throw DomainError("|two_fz|=" + std::to_string(std::abs(two_fz)) + " exceeds two_f=" +
                          std::to_string(two_f));
    }
    if ((two_f - two_fz) % 2 != 0) {
        throw DomainError("two_f=" + std::to_string(two_f) + " and two_fz=" +
                          std::to_string(two_fz) + " differ in parity");
    }
    return SpinQuantum(HalfInt::from_twice(two_f), HalfInt::from_twice(two_fz));
}

Eigen::Index basis_index(HalfInt total, HalfInt m) {
    if (!valid_projection(total, m)) {
        throw DomainError("m=" + m.to_string() + " is not a projection of F=" + total.to_string());
    }
    return (total.twice() - m.twice()) / 2;
}

double lowering_coefficient(HalfInt total, HalfInt m) {
    require_total(total);
    if (!valid_projection(total, m)) {
        throw DomainError("m=" + m.to_string() + " is not a projection of F=" + total.to_string());
    }
    if (m.twice() - 2 < -total.twice()) {
        throw DomainError("F_- annihilates m=-F (F=" + total.to_string() + ")");
    }
    // 4 * (F(F+1) - m(m-1)) in integers
    const int tf = total.twice();
    const int tm = m.twice();
    const int quad = tf * (tf + 2) - tm * (tm - 2);
    return 0.5 * std::sqrt(static_cast<double>(quad));
}

SpinMatrices spin_matrices(HalfInt total) {
    require_total(total);
    const Eigen::Index dim = total.twice() + 1;

    SpinMatrices s;
    s.fz = SpinMatrix::Zero(dim, dim);
    s.fminus = SpinMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const HalfInt m = total - HalfInt::from_twice(2 * static_cast<int>(i));
        s.fz(i, i) = m.value();
        if (i + 1 < dim) {
            s.fminus(i + 1, i) = lowering_coefficient(total, m);
        }
    }
    s.fplus = s.fminus.adjoint();
    s.fx = 0.5 * (s.fplus + s.fminus);
    s.fy = std::complex<double>(0.0, -0.5) * (s.fplus - s.fminus);
    return s;
}

double lowering_power_element(const SpinQuantum& initial, int two_fz_final) {
    const HalfInt total = initial.total();
    const int delta = initial.two_fz() - two_fz_final;
    if (delta % 2 != 0) {
        throw DomainError("F_zi - F_zf is not an integer number of ladder steps");
    }
    if (delta <= 0) {
        throw DomainError("final projection must lie below the initial one");
    }
    if (two_fz_final < -total.twice()) {
        throw DomainError("final projection " + HalfInt::from_twice(two_fz_final).to_string() +
                          " below -F");
    }
    double element = 1.0;
    for (int tm = initial.two_fz(); tm > two_fz_final; tm -= 2) {
        element *= lowering_coefficient(total, HalfInt::from_twice(tm));
    }
    return element;
}

double angular_factor_integer(HalfInt total, int p) {
    require_total(total);
    if (!total.is_integer()) {
        throw DomainError("integer-spin angular factor requested for F=" + total.to_string());
    }
    const int f = total.twice() / 2;
    if (p < 1 || p > f) {
        throw DomainError("p=" + std::to_string(p) + " leaves the F=" + total.to_string() +
                          " multiplet");
    }
    // (F+p)!/(F-p)!
    return rising_product(f - p + 1, f + p).convert_to<double>();
}

double angular_factor_half_integer(HalfInt total, int p) {
    require_total(total);
    if (total.is_integer()) {
        throw DomainError("half-integer angular factor requested for F=" + total.to_string());
    }
    const int f_plus_half = (total.twice() + 1) / 2;
    if (p < 1 || p > f_plus_half) {
        throw DomainError("p=" + std::to_string(p) + " leaves the F=" + total.to_string() +
                          " multiplet");
    }
    // (F+1/2) (F+p-1/2)! / (F-p+1/2)!
    const cpp_int exact = f_plus_half * rising_product(f_plus_half - p + 1, f_plus_half + p - 1);
    return exact.convert_to<double>();
}

} // namespace majorana
