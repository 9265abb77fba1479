#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <string>
#include <vector>

#include "turbmix/field_grid.hpp"

namespace turbmix {

/// Line-averaged periodogram estimate of a one-dimensional velocity
/// spectrum on a periodic grid. One-sided convention: bins at k1 = q*dk,
/// q = 1..n/2, positive-frequency power doubled (the unpaired Nyquist bin
/// is not), the zero mode excluded. Each line's mean is removed before
/// transforming, so sum(density)*dk equals the per-line sample variance
/// averaged over lines and ensemble -- an exact identity of the estimator,
/// stored in sample_variance. No windowing: periodic fields need no taper.
struct SpectrumEstimate {
    Eigen::ArrayXd k1_axis;
    Eigen::ArrayXd density;
    Eigen::ArrayXd standard_error;
    int ensemble_count = 0;
    int component = 0;
    int axis = 0;
    double sample_variance = 0.0;
};

SpectrumEstimate estimate_one_d_spectrum(const std::vector<VectorField>& fields,
                                         int component, int axis);

/// Ensemble- and space-averaged circular two-point correlation of one
/// velocity component along an axis, normalized to one at lag zero. No
/// mean is subtracted (the synthesized fields are zero-mean in ensemble),
/// which keeps the estimator unbiased at long lags.
struct CorrelationEstimate {
    Eigen::ArrayXd lag;
    Eigen::ArrayXd value;
    int ensemble_count = 0;
};

CorrelationEstimate estimate_correlation(const std::vector<VectorField>& fields,
                                         int component, int axis, double max_lag);

/// Trapezoidal integral of the normalized correlation up to its first
/// negative crossing. Requires the correlation to decay below 0.05 within
/// the available lags; otherwise throws with a diagnostic.
double integral_length_scale(const CorrelationEstimate& correlation);

/// Delimited-text export with a metadata header. Optional u_0 > 0 adds a
/// frequency column under the frozen-turbulence map.
void write_spectrum_estimate(std::ostream& os, const SpectrumEstimate& est,
                             const std::string& metadata, double u_0 = 0.0);

}  // namespace turbmix
