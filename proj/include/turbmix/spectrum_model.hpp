#pragma once

#include <Eigen/Core>
#include <limits>
#include <string>

namespace turbmix {

enum class SpectrumFamily { VonKarman, Liepmann, ModifiedVonKarman, Gaussian };

std::string family_name(SpectrumFamily family);
SpectrumFamily family_from_name(const std::string& name);

/// Parameters of an isotropic model energy spectrum. Wavenumbers are
/// angular (rad/m) everywhere; the public API never takes reduced
/// wavenumbers.
struct SpectrumModel {
    SpectrumFamily family = SpectrumFamily::VonKarman;
    double u_t = 1.0;     ///< mean turbulent velocity [m/s]
    double lambda = 1.0;  ///< integral length scale [m]
    /// Kolmogorov wavenumber [1/m]; meaningful for ModifiedVonKarman only.
    double k_d = std::numeric_limits<double>::infinity();

    static SpectrumModel von_karman(double u_t, double lambda);
    static SpectrumModel liepmann(double u_t, double lambda);
    static SpectrumModel modified_von_karman(double u_t, double lambda, double k_d);
    static SpectrumModel gaussian(double u_t, double lambda);

    /// Throws std::invalid_argument on violated parameter invariants.
    void validate() const;
};

/// Turbulence intensity relative to a mean flow; u_t = T_u * u_0.
struct TurbulenceIntensitySpec {
    double T_u = 0.0;  ///< turbulence intensity [-]
    double u_0 = 1.0;  ///< mean flow velocity [m/s]

    double turbulent_velocity() const;
    void validate() const;
};

/// Energy-spectrum function E(k) [m^3/s^2] of the model at wavenumber
/// k >= 0 [rad/m]. Rejects negative or non-finite k.
double energy_spectrum(const SpectrumModel& model, double k);
Eigen::ArrayXd energy_spectrum(const SpectrumModel& model,
                               const Eigen::Ref<const Eigen::ArrayXd>& k);

/// Normalized spectrum e(k) = 2/(3 u_t^2) E(k) [m]; integrates to one over
/// k in [0, inf) for the Gaussian and von Karman families.
double normalized_spectrum(const SpectrumModel& model, double k);
Eigen::ArrayXd normalized_spectrum(const SpectrumModel& model,
                                   const Eigen::Ref<const Eigen::ArrayXd>& k);

/// Numerical integral of e(k) over [0, inf).
double normalized_spectrum_mass(const SpectrumModel& model, double rel_tol = 1e-9);

/// Kinetic energy of the modeled (three-dimensional) turbulence,
/// k_t = 3/2 u_t^2. Used for synthesis amplitude calibration in both 2-D
/// and 3-D realizations, which keeps the axial one-dimensional spectrum of
/// a realization at the model level independent of the realization
/// dimension.
double model_kinetic_energy(const SpectrumModel& model);

}  // namespace turbmix
