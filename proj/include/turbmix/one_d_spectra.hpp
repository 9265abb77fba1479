#pragma once

#include <Eigen/Core>
#include <functional>

#include "turbmix/mixture.hpp"
#include "turbmix/spectrum_model.hpp"

namespace turbmix {

/// One-dimensional velocity spectra E_ii(k1) from an energy-spectrum
/// function E(k), for isotropic solenoidal turbulence.
///
/// 3-D reduction (from the spectrum tensor integrated over the transverse
/// wavenumber plane):
///   E_11(k1) =       int_{k1}^inf E(k)/k (1 - k1^2/k^2) dk
///   E_22(k1) = 1/2 * int_{k1}^inf E(k)/k (1 + k1^2/k^2) dk
///
/// 2-D reduction. In the plane the spectrum tensor of a solenoidal field
/// is Phi_ij(k) = E(k)/(pi k) (delta_ij - k_i k_j / k^2) with E(k) the
/// planar energy-spectrum function. Integrating over the transverse
/// wavenumber k2 (one-sided convention, int_0^inf E_ii dk1 = <v_i^2>):
///   E_11(k1) = 4/pi * int_{k1}^inf E(k) sqrt(k^2 - k1^2) / k^2 dk
///   E_22(k1) = 4 k1^2/pi * int_{k1}^inf E(k) / (k^2 sqrt(k^2 - k1^2)) dk
/// The axial spectrum E_11 of a Gaussian component is the same function
/// in 2-D and 3-D; the transverse spectrum differs.

enum class VelocityComponent { Longitudinal = 1, Transverse = 2 };

/// Closed forms for a single Gaussian component of length scale l.
double gaussian_one_d_longitudinal(double u_t, double l, double k1);
double gaussian_one_d_transverse_3d(double u_t, double l, double k1);
double gaussian_one_d_transverse_2d(double u_t, double l, double k1);

/// Planar energy-spectrum function realized by a mixture synthesized in
/// 2-D (per component: 2 u_t^2 l^4 k^3 / pi^2 * exp(-k^2 l^2 / pi)).
double mixture_energy_spectrum_2d(const GaussianMixture& mix, double k);

/// E_ii(k1) by quadrature of the reduced single integral. For dimension 3
/// the argument E is the usual energy-spectrum function; for dimension 2
/// it is the planar one. scale_hint is a characteristic wavenumber of E
/// (for panel sizing). Throws on quadrature non-convergence, reporting the
/// achieved error estimate.
double one_d_from_energy(const std::function<double(double)>& E,
                         VelocityComponent component, int dimension, double k1,
                         double scale_hint, double rel_tol = 1e-8);

/// Convenience overload for an analytic model (3-D reduction).
double one_d_from_energy(const SpectrumModel& model, VelocityComponent component,
                         double k1, double rel_tol = 1e-8);

/// Mixture path: sum of per-component closed forms; equals
/// one_d_from_energy applied to the reconstructed spectrum by linearity.
double one_d_from_mixture(const GaussianMixture& mix, VelocityComponent component,
                          int dimension, double k1);
Eigen::ArrayXd one_d_from_mixture(const GaussianMixture& mix,
                                  VelocityComponent component, int dimension,
                                  const Eigen::Ref<const Eigen::ArrayXd>& k1);

/// Exact longitudinal spectra of the analytic families (von Karman,
/// Liepmann, Gaussian); throws for the modified family which has no
/// elementary closed form here.
double analytic_one_d_longitudinal(const SpectrumModel& model, double k1);

/// Axis map k1 -> f = u_0 k1 / (2 pi) with density rescaled by 2 pi / u_0
/// so the integral over f equals the integral over k1.
struct FrequencySpectrum {
    Eigen::ArrayXd frequency;
    Eigen::ArrayXd psd;
};
FrequencySpectrum frequency_map(const Eigen::Ref<const Eigen::ArrayXd>& k1,
                                const Eigen::Ref<const Eigen::ArrayXd>& density,
                                double u_0);

}  // namespace turbmix
