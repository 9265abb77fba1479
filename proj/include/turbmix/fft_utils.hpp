#pragma once

#include <Eigen/Core>
#include <complex>

#include "turbmix/field_grid.hpp"

namespace turbmix {

/// Angular wavenumbers of an n-point periodic axis with spacing h, in DFT
/// bin order (0, 1, ..., n/2, -(n/2-1), ..., -1) * 2 pi / (n h).
Eigen::ArrayXd fft_wavenumbers(Eigen::Index n, double h);

/// Applies a per-bin multiplier in the DFT domain along one axis of a real
/// field, in place: every grid line along `axis` is transformed,
/// multiplied, and transformed back. Circular convolution along that axis.
void apply_axis_multiplier(ScalarField& field, int axis,
                           const Eigen::VectorXcd& multiplier);

/// Spectral derivative along an axis (multiplier i*k with the Nyquist bin
/// zeroed); exact for band-limited periodic data.
void differentiate_axis(ScalarField& field, int axis);

/// DFT of a sampled, periodically wrapped kernel profile given per-axis;
/// used as the transfer function of a circular convolution.
Eigen::VectorXcd kernel_transfer(const Eigen::ArrayXd& kernel_samples);

}  // namespace turbmix
