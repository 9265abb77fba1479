#include "turbmix/weighting.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "turbmix/constants.hpp"
#include "turbmix/quadrature.hpp"

namespace turbmix {

namespace {
constexpr double pi = std::numbers::pi;

void check_scales(double lambda, double l, bool allow_zero_l) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("lambda must be positive");
    if (!std::isfinite(l) || l < 0.0 || (l == 0.0 && !allow_zero_l))
        throw std::invalid_argument("length scale l out of range");
}
}  // namespace

double weight_von_karman(double lambda, double l) {
    check_scales(lambda, l, false);
    const double ke = karman_wavenumber_constant();
    const double pref = 55.0 / (18.0 * gamma_seventeen_sixths() * std::sqrt(pi));
    const double root =
        std::cbrt(std::pow(ke, 5.0) / (pi * lambda * lambda * l));
    const double expo = -ke * ke * l * l / (pi * lambda * lambda);
    if (expo < -745.0) return 0.0;
    return pref * root * std::exp(expo);
}

double weight_liepmann(double lambda, double l) {
    check_scales(lambda, l, true);
    const double expo = -l * l / (pi * lambda * lambda);
    if (expo < -745.0) return 0.0;
    return 2.0 / (pi * lambda) * std::exp(expo);
}

double modified_cutoff_length(double k_d) {
    if (!(k_d > 0.0)) throw std::invalid_argument("k_d must be positive");
    return std::sqrt(2.0 * pi) / k_d;
}

double weight_modified_von_karman(double lambda, double k_d, double l) {
    check_scales(lambda, l, false);
    if (!(k_d > 0.0) || !std::isfinite(k_d))
        throw std::invalid_argument("k_d must be positive and finite");
    if (l < modified_cutoff_length(k_d)) return 0.0;
    // bracket vanishes at the cut-off; clamp rounding residue so the
    // fractional power never sees a negative argument
    double bracket = l * l / pi - 2.0 / (k_d * k_d);
    if (bracket < 0.0) {
        if (bracket > -1e-15 * l * l / pi) bracket = 0.0;
        else return 0.0;
    }
    const double ke = karman_wavenumber_constant();
    const double pref = 55.0 * pi / (18.0 * gamma_seventeen_sixths());
    const double root = std::cbrt(std::pow(ke, 5.0) / (lambda * lambda));
    const double expo = -ke * ke / (lambda * lambda) * bracket;
    if (expo < -745.0) return 0.0;
    return pref * root / (l * l * l * l) * std::pow(bracket, 11.0 / 6.0) *
           std::exp(expo);
}

double weight(const SpectrumModel& model, double l) {
    switch (model.family) {
        case SpectrumFamily::VonKarman:
            return weight_von_karman(model.lambda, l);
        case SpectrumFamily::Liepmann:
            return weight_liepmann(model.lambda, l);
        case SpectrumFamily::ModifiedVonKarman:
            return weight_modified_von_karman(model.lambda, model.k_d, l);
        case SpectrumFamily::Gaussian:
            throw std::invalid_argument(
                "the Gaussian family has no weighting density");
    }
    throw std::logic_error("unknown spectrum family");
}

double weighting_mass(const SpectrumModel& model, double rel_tol) {
    model.validate();
    const double L = model.lambda;
    switch (model.family) {
        case SpectrumFamily::VonKarman: {
            // substitute l = t^3 near the origin: the l^(-1/3) singularity
            // becomes a bounded integrand proportional to t
            const double lc = 0.5 * L;
            auto near = [&](double t) {
                return 3.0 * t * t * weight_von_karman(L, t * t * t);
            };
            QuadratureResult head =
                integrate(near, 0.0, std::cbrt(lc), 0.0, rel_tol * 0.1);
            auto f = [&](double l) { return weight_von_karman(L, l); };
            QuadratureResult body = integrate(f, lc, 25.0 * L, 0.0, rel_tol * 0.1);
            return head.value + body.value;
        }
        case SpectrumFamily::Liepmann: {
            auto f = [&](double l) { return weight_liepmann(L, l); };
            return integrate(f, 0.0, 25.0 * L, 0.0, rel_tol * 0.1).value;
        }
        case SpectrumFamily::ModifiedVonKarman: {
            // substitute l^2 = pi (t^2 + 2/k_d^2): the Hoelder kink at the
            // cut-off becomes a smooth t^(11/3) zero
            const double kd = model.k_d;
            auto g = [&](double t) {
                const double l = std::sqrt(pi * (t * t + 2.0 / (kd * kd)));
                return weight_modified_von_karman(L, kd, l) * pi * t / l;
            };
            const double t_hi = std::sqrt(
                25.0 * L * 25.0 * L / pi);  // l(t_hi) > 25 L
            return integrate(g, 0.0, t_hi, 0.0, rel_tol * 0.1).value;
        }
        case SpectrumFamily::Gaussian:
            throw std::invalid_argument(
                "the Gaussian family has no weighting density");
    }
    throw std::logic_error("unknown spectrum family");
}

}  // namespace turbmix
