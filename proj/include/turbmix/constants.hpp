#pragma once

#include <cmath>
#include <numbers>

namespace turbmix {

/// Gamma-function values entering the von Karman spectral constants.
/// Evaluated once and frozen; gamma_self_check() verifies the defining
/// identity so a broken libm shows up immediately in the test suite.
inline double gamma_five_sixths() {
    static const double g = std::tgamma(5.0 / 6.0);
    return g;
}

inline double gamma_one_third() {
    static const double g = std::tgamma(1.0 / 3.0);
    return g;
}

inline double gamma_seventeen_sixths() {
    static const double g = std::tgamma(17.0 / 6.0);
    return g;
}

/// k_e = sqrt(pi) Gamma(5/6) / Gamma(1/3): the constant relating the von
/// Karman peak wavenumber to the integral length scale.
inline double karman_wavenumber_constant() {
    static const double ke =
        std::sqrt(std::numbers::pi) * gamma_five_sixths() / gamma_one_third();
    return ke;
}

/// Relative residual of k_e^2 Gamma(1/3)^2 = pi Gamma(5/6)^2.
inline double gamma_self_check() {
    const double ke = karman_wavenumber_constant();
    const double lhs = ke * ke * gamma_one_third() * gamma_one_third();
    const double rhs = std::numbers::pi * gamma_five_sixths() * gamma_five_sixths();
    return std::abs(lhs / rhs - 1.0);
}

}  // namespace turbmix
