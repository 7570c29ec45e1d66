#include "majorana/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "majorana/constants.hpp"
#include "majorana/errors.hpp"

namespace majorana {

namespace c = constants;

namespace {

void require_steps(int p) {
    if (p < 1 || p > max_steps) {
        throw DomainError("p=" + std::to_string(p) + " outside 1.." + std::to_string(max_steps));
    }
}

Rational pow_rational(const Rational& base, int exponent) {
    Rational out = 1;
    for (int i = 0; i < exponent; ++i) {
        out *= base;
    }
    return out;
}

} // namespace

int StepSequence::total() const {
    int s = 0;
    for (int step : steps) {
        s += step;
    }
    return s;
}

int StepSequence::single_steps() const {
    return static_cast<int>(std::count(steps.begin(), steps.end(), 1));
}

int StepSequence::double_steps() const {
    return static_cast<int>(std::count(steps.begin(), steps.end(), 2));
}

std::vector<StepSequence> enumerate_step_sequences(int p) {
    require_steps(p);
    std::vector<StepSequence> out;
    std::vector<int> prefix;
    std::function<void(int)> extend = [&](int remaining) {
        if (remaining == 0) {
            out.push_back({prefix});
            return;
        }
        for (int step : {1, 2}) {
            if (step <= remaining) {
                prefix.push_back(step);
                extend(remaining - step);
                prefix.pop_back();
            }
        }
    };
    extend(p);
    return out;
}

Rational path_weight(const StepSequence& sequence) {
    Rational weight = 1;
    int partial = 0;
    for (std::size_t i = 0; i + 1 < sequence.steps.size(); ++i) {
        partial += sequence.steps[i];
        weight /= partial;
    }
    return weight;
}

std::vector<Rational> n_coefficients(int p) {
    require_steps(p);
    const int max_p2 = p / 2;
    // reach[s][q]: summed weight of partial paths landing on s with q double
    // steps, already divided by every intermediate partial sum below p.
    std::vector<std::vector<Rational>> reach(p + 1, std::vector<Rational>(max_p2 + 1, 0));
    reach[0][0] = 1;
    for (int s = 1; s <= p; ++s) {
        for (int q = 0; q <= max_p2; ++q) {
            Rational v = reach[s - 1][q];
            if (s >= 2 && q >= 1) {
                v += reach[s - 2][q - 1];
            }
            if (s < p) {
                v /= s;
            }
            reach[s][q] = v;
        }
    }
    return reach[p];
}

Rational n_coefficient(int p, int p2) {
    require_steps(p);
    if (p2 < 0 || p2 > p / 2) {
        throw DomainError("p2=" + std::to_string(p2) + " outside 0..floor(p/2) for p=" +
                          std::to_string(p));
    }
    return n_coefficients(p)[static_cast<std::size_t>(p2)];
}

std::vector<Rational> coherent_terms(int p, HalfInt fz_initial) {
    require_steps(p);
    const int two_fz = fz_initial.twice();
    if (two_fz != 2 * p && two_fz != 2 * p - 1) {
        throw DomainError("p=" + std::to_string(p) + " inconsistent with F_zi=" +
                          fz_initial.to_string() + " (need p = F_zi or F_zi + 1/2)");
    }
    const Rational inverse_fz(2, two_fz);
    const std::vector<Rational> n = n_coefficients(p);
    std::vector<Rational> terms;
    terms.reserve(n.size());
    for (std::size_t p2 = 0; p2 < n.size(); ++p2) {
        // (-1)^{p2} from the negative energy denominators times (-1)^{p2}
        // from reducing x_-^{2 p2} to p_-^{2 p2} on the plane wave.
        const int denominator_sign = p2 % 2 == 0 ? 1 : -1;
        const int orbital_sign = denominator_sign;
        terms.push_back(denominator_sign * orbital_sign * n[p2] *
                        pow_rational(inverse_fz, static_cast<int>(p2)));
    }
    return terms;
}

Rational c_factor(int p, HalfInt fz_initial) {
    Rational sum = 0;
    for (const Rational& term : coherent_terms(p, fz_initial)) {
        sum += term;
    }
    return sum;
}

double plane_wave_overlap(double b_i, double k_f, double box_side) {
    return std::exp(log_plane_wave_overlap(b_i, k_f, box_side));
}

double log_plane_wave_overlap(double b_i, double k_f, double box_side) {
    return std::log(2.0 * std::sqrt(c::pi) * b_i / box_side) - 0.5 * k_f * k_f * b_i * b_i;
}

double Amplitude::magnitude() const { return std::exp(log_magnitude); }

Amplitude amplitude_integer(const DerivedParams& derived, const SpinQuantum& spin,
                            double box_side, std::optional<int> only_p2) {
    if (!spin.integer_spin()) {
        throw DispatchError("amplitude_integer requires integer spin; F=" +
                            spin.total().to_string());
    }
    const SurfaceParams surface = surface_params(derived, spin.two_fz());
    const int p = spin.two_fz() / 2;
    const double k_f = final_wavenumber(derived, surface);

    Amplitude a;
    a.p = p;
    a.terms = coherent_terms(p, spin.projection());
    if (only_p2) {
        if (*only_p2 < 0 || *only_p2 > p / 2) {
            throw DomainError("only_p2 outside 0..floor(p/2)");
        }
        a.c_p = a.terms[static_cast<std::size_t>(*only_p2)];
    } else {
        a.c_p = 0;
        for (const Rational& t : a.terms) {
            a.c_p += t;
        }
    }

    const double chi0 = derived.chi0;
    const double spin_element = lowering_power_element(spin, 0);
    a.log_magnitude = std::log(c::hbar * derived.omega0) + p * std::log(std::sqrt(chi0) / 4.0) +
                      (p - 1) * std::log(chi0) + std::log(spin_element) +
                      p * std::log(derived.b0 * k_f) +
                      log_plane_wave_overlap(surface.b, k_f, box_side) +
                      std::log(a.c_p.convert_to<double>());
    return a;
}

std::string to_fraction_string(const Rational& value) {
    return boost::multiprecision::numerator(value).str() + "/" +
           boost::multiprecision::denominator(value).str();
}

} // namespace majorana
