#include "turbmix/one_d_spectra.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "turbmix/constants.hpp"
#include "turbmix/quadrature.hpp"

namespace turbmix {

namespace {
constexpr double pi = std::numbers::pi;

void check_k1(double k1) {
    if (!std::isfinite(k1) || k1 < 0.0)
        throw std::invalid_argument("k1 must be finite and >= 0");
}

double gauss_decay(double k1, double l) {
    const double expo = -k1 * k1 * l * l / pi;
    return expo < -745.0 ? 0.0 : std::exp(expo);
}
}  // namespace

double gaussian_one_d_longitudinal(double u_t, double l, double k1) {
    return 2.0 * u_t * u_t * l / pi * gauss_decay(k1, l);
}

double gaussian_one_d_transverse_3d(double u_t, double l, double k1) {
    return u_t * u_t * l / pi * (1.0 + 2.0 * k1 * k1 * l * l / pi) *
           gauss_decay(k1, l);
}

double gaussian_one_d_transverse_2d(double u_t, double l, double k1) {
    return 4.0 * u_t * u_t * l * l * l * k1 * k1 / (pi * pi) *
           gauss_decay(k1, l);
}

double mixture_energy_spectrum_2d(const GaussianMixture& mix, double k) {
    const double ut2 = mix.model().u_t * mix.model().u_t;
    double sum = 0.0;
    for (const auto& c : mix.components()) {
        const double l = c.length_scale;
        sum += c.weight * 2.0 * ut2 * l * l * l * l * k * k * k / (pi * pi) *
               gauss_decay(k, l);
    }
    return sum;
}

double one_d_from_energy(const std::function<double(double)>& E,
                         VelocityComponent component, int dimension, double k1,
                         double scale_hint, double rel_tol) {
    check_k1(k1);
    if (dimension != 2 && dimension != 3)
        throw std::invalid_argument("dimension must be 2 or 3");
    if (!(scale_hint > 0.0))
        throw std::invalid_argument("scale_hint must be positive");

    // integrate in the shifted variable u = k - k1: the geometric factors
    // then evaluate without cancellation for any k1
    //   1 - k1^2/k^2      = u (2 k1 + u) / k^2
    //   sqrt(k^2 - k1^2)  = sqrt(u (2 k1 + u))
    std::function<double(double)> integrand;
    if (dimension == 3) {
        if (component == VelocityComponent::Longitudinal) {
            integrand = [&E, k1](double u) {
                const double k = k1 + u;
                return E(k) / k * u * (2.0 * k1 + u) / (k * k);
            };
        } else {
            integrand = [&E, k1](double u) {
                const double k = k1 + u;
                return 0.5 * E(k) / k * (1.0 + (k1 / k) * (k1 / k));
            };
        }
    } else {
        if (component == VelocityComponent::Longitudinal) {
            integrand = [&E, k1](double u) {
                const double k = k1 + u;
                return 4.0 / pi * E(k) * std::sqrt(u * (2.0 * k1 + u)) / (k * k);
            };
        } else {
            integrand = [&E, k1](double u) {
                const double root = std::sqrt(u * (2.0 * k1 + u));
                if (root == 0.0) return 0.0;
                const double k = k1 + u;
                return 4.0 * k1 * k1 / pi * E(k) / (k * k * root);
            };
        }
    }

    // the integrand vanishes (or is integrably singular) at u = 0; the
    // substitution u = t^2 regularizes the 2-D 1/sqrt endpoint
    auto sub = [&](double t) { return integrand(t * t) * 2.0 * t; };
    const double t_edge = std::sqrt(scale_hint);
    QuadratureResult head = integrate(sub, 0.0, t_edge, 0.0, rel_tol * 0.1);
    QuadratureResult tail =
        integrate_to_infinity(integrand, scale_hint, scale_hint, rel_tol);
    if (!head.converged) {
        std::ostringstream msg;
        msg << "one_d_from_energy quadrature did not converge; achieved error "
               "estimate " << head.error_estimate;
        throw std::runtime_error(msg.str());
    }
    return head.value + tail.value;
}

double one_d_from_energy(const SpectrumModel& model, VelocityComponent component,
                         double k1, double rel_tol) {
    model.validate();
    auto E = [&model](double k) { return energy_spectrum(model, k); };
    return one_d_from_energy(E, component, 3, k1, 1.0 / model.lambda, rel_tol);
}

double one_d_from_mixture(const GaussianMixture& mix, VelocityComponent component,
                          int dimension, double k1) {
    check_k1(k1);
    if (dimension != 2 && dimension != 3)
        throw std::invalid_argument("dimension must be 2 or 3");
    const double u_t = mix.model().u_t;
    double sum = 0.0;
    for (const auto& c : mix.components()) {
        if (c.weight == 0.0) continue;
        double e;
        if (component == VelocityComponent::Longitudinal)
            e = gaussian_one_d_longitudinal(u_t, c.length_scale, k1);
        else if (dimension == 3)
            e = gaussian_one_d_transverse_3d(u_t, c.length_scale, k1);
        else
            e = gaussian_one_d_transverse_2d(u_t, c.length_scale, k1);
        sum += c.weight * e;
    }
    return sum;
}

Eigen::ArrayXd one_d_from_mixture(const GaussianMixture& mix,
                                  VelocityComponent component, int dimension,
                                  const Eigen::Ref<const Eigen::ArrayXd>& k1) {
    Eigen::ArrayXd out(k1.size());
    for (Eigen::Index i = 0; i < k1.size(); ++i)
        out[i] = one_d_from_mixture(mix, component, dimension, k1[i]);
    return out;
}

double analytic_one_d_longitudinal(const SpectrumModel& model, double k1) {
    model.validate();
    check_k1(k1);
    const double ut2 = model.u_t * model.u_t;
    const double L = model.lambda;
    switch (model.family) {
        case SpectrumFamily::VonKarman: {
            const double kh = k1 * L / karman_wavenumber_constant();
            return 2.0 * ut2 * L / pi * std::pow(1.0 + kh * kh, -5.0 / 6.0);
        }
        case SpectrumFamily::Liepmann: {
            const double ks = k1 * L;
            return 2.0 * ut2 * L / pi / (1.0 + ks * ks);
        }
        case SpectrumFamily::Gaussian:
            return gaussian_one_d_longitudinal(model.u_t, L, k1);
        case SpectrumFamily::ModifiedVonKarman:
            throw std::invalid_argument(
                "no elementary closed form for the modified von Karman "
                "longitudinal spectrum; use one_d_from_energy");
    }
    throw std::logic_error("unknown spectrum family");
}

FrequencySpectrum frequency_map(const Eigen::Ref<const Eigen::ArrayXd>& k1,
                                const Eigen::Ref<const Eigen::ArrayXd>& density,
                                double u_0) {
    if (!(u_0 > 0.0)) throw std::invalid_argument("u_0 must be positive");
    if (k1.size() != density.size())
        throw std::invalid_argument("axis/density size mismatch");
    FrequencySpectrum out;
    out.frequency = u_0 / (2.0 * pi) * k1;
    out.psd = 2.0 * pi / u_0 * density;
    return out;
}

}  // namespace turbmix
