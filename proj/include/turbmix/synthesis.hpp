#pragma once

#include <cstdint>
#include <vector>

#include "turbmix/field_grid.hpp"
#include "turbmix/mixture.hpp"

namespace turbmix {

/// Stochastic realization of a mixture spectrum: spatial white noise is
/// filtered per component with a Gaussian kernel, scaled to the component
/// amplitude, and the component streamfunctions are superposed with
/// square-root energy weights (independent noise makes expected energies
/// add). Velocity is the curl of the streamfunction, so every realization
/// is solenoidal to spectral rounding.
struct SynthesisSpec {
    GaussianMixture mixture;
    FieldGrid grid;
    double k_t = 0.0;    ///< target kinetic energy [m^2/s^2]
    double rho_0 = 1.0;  ///< mean density [kg/m^3]
    std::uint64_t seed = 0;
    int ensemble_count = 1;
    /// Test hook: scales every component amplitude (1 = calibrated).
    double amplitude_scale = 1.0;

    /// Enforces k_t > 0, rho_0 > 0 and correlation containment
    /// (min domain length >= 8 * largest mixture scale). Throws with the
    /// violated bound in the message.
    void validate() const;
};

/// Spec with k_t derived from the mixture's model (k_t = 3/2 u_t^2, the
/// kinetic energy of the modeled turbulence, for either grid dimension).
SynthesisSpec make_synthesis_spec(GaussianMixture mixture, FieldGrid grid,
                                  double rho_0, std::uint64_t seed,
                                  int ensemble_count);

/// Deterministic i.i.d. standard-normal samples, one per node.
ScalarField white_noise(const FieldGrid& grid, std::uint64_t seed);

/// Stateless seed split for (member, field component, mixture component).
std::uint64_t split_seed(std::uint64_t base, std::uint64_t member,
                         std::uint64_t field_component,
                         std::uint64_t mixture_component);

/// Circular convolution with the separable Gaussian kernel
/// G(r) = exp(-pi r^2 / (2 l^2)), carried out exactly in the DFT domain
/// and normalized as a Riemann sum of the continuous convolution (one
/// factor of the grid spacing per axis). The DC gain is therefore
/// gaussian_filter_dc_gain(grid, l) ~= (sqrt(2) l)^dimension, and filtered
/// unit white noise has normalized two-point correlation
/// exp(-pi r^2 / (4 l^2)). Throws if the kernel support exceeds an eighth
/// of the domain.
ScalarField gaussian_filter(const ScalarField& field, double l);
double gaussian_filter_dc_gain(const FieldGrid& grid, double l);

/// Per-component amplitude; for dimension 2 the result is independent of
/// the component length scale.
double component_amplitude(double l_m, double k_t, double rho_0, int dimension);

/// Streamfunction variance target for a component of scale l.
double streamfunction_variance_target(double l, double k_t, double rho_0,
                                      int dimension);

/// Amplitude from a variance target (the general amplitude relation).
double amplitude_from_variance(double variance, double l, double rho_0,
                               int dimension);

struct StreamfunctionRealization {
    std::vector<ScalarField> per_component;  ///< amplitude-scaled, unweighted
    ScalarField total;                       ///< sum of sqrt(w_m) * psi_m
};

/// One scalar streamfunction: psi_m = A_m * filter(noise_m, l_m) with the
/// lattice white noise carrying its (rho_0 h^d)^(-1/2) intensity factor,
/// and total = sum over m of sqrt(w_m) psi_m. field_component selects the
/// independent noise stream (0 in 2-D; 0..2 for the 3-D vector
/// streamfunction).
StreamfunctionRealization synthesize_streamfunction(const SynthesisSpec& spec,
                                                    int member,
                                                    int field_component);

/// Same superposition without retaining the per-component fields.
ScalarField synthesize_streamfunction_total(const SynthesisSpec& spec,
                                            int member, int field_component);

/// v = curl(psi): one scalar streamfunction in 2-D, three in 3-D.
/// Differentiation is spectral; the result is divergence-free to rounding.
VectorField curl_velocity(const std::vector<ScalarField>& psi);

/// Full velocity realization for one ensemble member.
VectorField synthesize_velocity(const SynthesisSpec& spec, int member);

/// max |div v| / max |v| with the divergence evaluated spectrally.
double max_spectral_divergence(const VectorField& v);

}  // namespace turbmix
