#include "turbmix/spectrum_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "turbmix/constants.hpp"
#include "turbmix/quadrature.hpp"

namespace turbmix {

namespace {

constexpr double pi = std::numbers::pi;

void check_wavenumber(double k) {
    if (!std::isfinite(k)) throw std::invalid_argument("wavenumber must be finite");
    if (k < 0.0) throw std::invalid_argument("wavenumber must be >= 0");
}

// kh^4 / (1 + kh^2)^(17/6); switches to the k^(-5/3) asymptote once the
// neglected (1 + kh^2) correction is below double precision.
double karman_shape(double kh) {
    if (kh > 1e9) return std::pow(kh, -5.0 / 3.0);
    const double kh2 = kh * kh;
    return kh2 * kh2 * std::pow(1.0 + kh2, -17.0 / 6.0);
}

}  // namespace

std::string family_name(SpectrumFamily family) {
    switch (family) {
        case SpectrumFamily::VonKarman: return "von_karman";
        case SpectrumFamily::Liepmann: return "liepmann";
        case SpectrumFamily::ModifiedVonKarman: return "modified_von_karman";
        case SpectrumFamily::Gaussian: return "gaussian";
    }
    throw std::logic_error("unknown spectrum family");
}

SpectrumFamily family_from_name(const std::string& name) {
    if (name == "von_karman") return SpectrumFamily::VonKarman;
    if (name == "liepmann") return SpectrumFamily::Liepmann;
    if (name == "modified_von_karman") return SpectrumFamily::ModifiedVonKarman;
    if (name == "gaussian") return SpectrumFamily::Gaussian;
    throw std::invalid_argument("unknown spectrum family: " + name);
}

SpectrumModel SpectrumModel::von_karman(double u_t, double lambda) {
    SpectrumModel m{SpectrumFamily::VonKarman, u_t, lambda};
    m.validate();
    return m;
}

SpectrumModel SpectrumModel::liepmann(double u_t, double lambda) {
    SpectrumModel m{SpectrumFamily::Liepmann, u_t, lambda};
    m.validate();
    return m;
}

SpectrumModel SpectrumModel::modified_von_karman(double u_t, double lambda,
                                                 double k_d) {
    SpectrumModel m{SpectrumFamily::ModifiedVonKarman, u_t, lambda, k_d};
    m.validate();
    return m;
}

SpectrumModel SpectrumModel::gaussian(double u_t, double lambda) {
    SpectrumModel m{SpectrumFamily::Gaussian, u_t, lambda};
    m.validate();
    return m;
}

void SpectrumModel::validate() const {
    if (!(u_t > 0.0) || !std::isfinite(u_t))
        throw std::invalid_argument("u_t must be positive and finite");
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("lambda must be positive and finite");
    if (family == SpectrumFamily::ModifiedVonKarman) {
        if (!(k_d > 0.0) || !std::isfinite(k_d))
            throw std::invalid_argument(
                "modified von Karman requires finite positive k_d");
    }
}

double TurbulenceIntensitySpec::turbulent_velocity() const {
    validate();
    return T_u * u_0;
}

void TurbulenceIntensitySpec::validate() const {
    if (T_u < 0.0 || !std::isfinite(T_u))
        throw std::invalid_argument("T_u must be >= 0");
    if (!(u_0 > 0.0) || !std::isfinite(u_0))
        throw std::invalid_argument("u_0 must be positive");
}

double energy_spectrum(const SpectrumModel& model, double k) {
    model.validate();
    check_wavenumber(k);
    const double ut2 = model.u_t * model.u_t;
    const double L = model.lambda;
    const double ks = k * L;
    switch (model.family) {
        case SpectrumFamily::VonKarman:
            return 55.0 / (9.0 * pi) * ut2 * L *
                   karman_shape(ks / karman_wavenumber_constant());
        case SpectrumFamily::Liepmann: {
            if (ks > 1e9) return 8.0 * ut2 * L / pi / (ks * ks);
            const double ks2 = ks * ks;
            return 8.0 * ut2 * L / pi * ks2 * ks2 / std::pow(1.0 + ks2, 3.0);
        }
        case SpectrumFamily::ModifiedVonKarman: {
            const double ratio = k / model.k_d;
            const double expo = -2.0 * ratio * ratio;
            if (expo < -745.0) return 0.0;  // graceful underflow, never NaN
            return 55.0 / (9.0 * pi) * ut2 * L *
                   karman_shape(ks / karman_wavenumber_constant()) *
                   std::exp(expo);
        }
        case SpectrumFamily::Gaussian: {
            const double expo = -ks * ks / pi;
            if (expo < -745.0) return 0.0;
            const double ks2 = ks * ks;
            return 4.0 * ut2 * L / (pi * pi * pi) * ks2 * ks2 * std::exp(expo);
        }
    }
    throw std::logic_error("unknown spectrum family");
}

Eigen::ArrayXd energy_spectrum(const SpectrumModel& model,
                               const Eigen::Ref<const Eigen::ArrayXd>& k) {
    Eigen::ArrayXd out(k.size());
    for (Eigen::Index i = 0; i < k.size(); ++i) out[i] = energy_spectrum(model, k[i]);
    return out;
}

double normalized_spectrum(const SpectrumModel& model, double k) {
    return 2.0 / (3.0 * model.u_t * model.u_t) * energy_spectrum(model, k);
}

Eigen::ArrayXd normalized_spectrum(const SpectrumModel& model,
                                   const Eigen::Ref<const Eigen::ArrayXd>& k) {
    return 2.0 / (3.0 * model.u_t * model.u_t) * energy_spectrum(model, k);
}

double normalized_spectrum_mass(const SpectrumModel& model, double rel_tol) {
    model.validate();
    const double L = model.lambda;
    auto e = [&](double k) { return normalized_spectrum(model, k); };
    // resolve the peak region exactly, then geometric panels + tail
    QuadratureResult head = integrate(e, 0.0, 10.0 / L, 0.0, rel_tol * 0.1);
    QuadratureResult tail = integrate_to_infinity(e, 10.0 / L, 10.0 / L, rel_tol);
    return head.value + tail.value;
}

double model_kinetic_energy(const SpectrumModel& model) {
    return 1.5 * model.u_t * model.u_t;
}

}  // namespace turbmix
