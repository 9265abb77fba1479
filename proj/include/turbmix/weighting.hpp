#pragma once

#include "turbmix/spectrum_model.hpp"

namespace turbmix {

/// Analytic densities f(l) over Gaussian-component length scales whose
/// continuous mixture of Gaussian spectra reproduces the target model
/// spectrum. Units: 1/m.

/// Von Karman weighting; diverges like l^(-1/3) for l -> 0 (integrable).
double weight_von_karman(double lambda, double l);

/// Liepmann weighting; half-Gaussian in l, finite at l = 0.
double weight_liepmann(double lambda, double l);

/// Modified von Karman weighting; identically zero below the cut-off
/// length sqrt(2 pi)/k_d and continuous at it.
double weight_modified_von_karman(double lambda, double k_d, double l);

/// Smallest length scale carrying weight for the modified family.
double modified_cutoff_length(double k_d);

/// Family dispatch. The Gaussian family has no weighting density (its
/// mixture is a point mass); requesting it throws.
double weight(const SpectrumModel& model, double l);

/// Numerical integral of f(l) over (0, inf). Equals the integral of the
/// normalized target spectrum e(k): exactly 1 for the von Karman and
/// Liepmann families, and 1 minus the dissipation-range deficit for the
/// modified family at finite k_d.
double weighting_mass(const SpectrumModel& model, double rel_tol = 1e-9);

}  // namespace turbmix
