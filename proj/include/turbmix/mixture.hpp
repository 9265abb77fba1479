#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <variant>
#include <vector>

#include "turbmix/spectrum_model.hpp"

namespace turbmix {

/// Geometric length-scale grid l_m = l_0 q^m, m = 0..M, with trapezoidal
/// widths. The widths telescope: sum(widths) = l_M - l_0 exactly.
struct LengthScaleGrid {
    Eigen::ArrayXd nodes;
    Eigen::ArrayXd widths;
};

LengthScaleGrid build_length_scale_grid(double l_0, double l_M, int M);

struct GridMeta {
    double l_0 = 0.0;
    double l_M = 0.0;
    int M = 0;
    double q = 1.0;
};

struct MixtureComponent {
    double length_scale = 0.0;  ///< l_m [m]
    double density = 0.0;       ///< f(l_m) [1/m]
    double width = 0.0;         ///< trapezoidal width [m]
    double weight = 0.0;        ///< w_m = f(l_m) * width [-]
};

/// Finite superposition of Gaussian spectra approximating a target model.
/// Immutable after construction; components are ordered by length scale.
class GaussianMixture {
public:
    GaussianMixture(SpectrumModel model, std::vector<MixtureComponent> components,
                    GridMeta meta);

    const SpectrumModel& model() const { return model_; }
    const std::vector<MixtureComponent>& components() const { return components_; }
    const GridMeta& grid_meta() const { return meta_; }
    double sum_weights() const;
    double max_length_scale() const;
    double min_length_scale() const;

    /// Copy with weights scaled so they sum to one.
    GaussianMixture renormalized() const;

private:
    SpectrumModel model_;
    std::vector<MixtureComponent> components_;
    GridMeta meta_;
};

/// Grid policy: either k-band driven or an explicit geometric grid.
/// Auto rule: l_M = 4 lambda; l_0 = 2 pi / (per_decade * k_max), clamped
/// up to the modified-family cut-off; M = ceil(per_decade *
/// log10(k_max/k_min)).
struct AutoGridPolicy {
    double k_min = 0.0;
    double k_max = 0.0;
    double per_decade = 5.0;
};

struct ExplicitGridPolicy {
    double l_0 = 0.0;
    double l_M = 0.0;
    int M = 0;
};

using GridPolicy = std::variant<AutoGridPolicy, ExplicitGridPolicy>;

/// Weights w_m = f(l_m) * width_m on the policy's grid. Zero-weight nodes
/// below the modified-family cut-off are dropped for the auto policy and
/// kept (with weight 0) for explicit grids. Throws if every weight is zero.
GaussianMixture discretize(const SpectrumModel& model, const GridPolicy& policy);

/// Mixture on caller-provided (length scale, width) nodes.
GaussianMixture mixture_from_nodes(
    const SpectrumModel& model,
    const std::vector<std::pair<double, double>>& nodes);

/// Sum of w_m E_G(k; l_m) with each component's Gaussian spectrum taking
/// its own length scale; linear in the weights.
double reconstruct_spectrum(const GaussianMixture& mix, double k);
Eigen::ArrayXd reconstruct_spectrum(const GaussianMixture& mix,
                                    const Eigen::Ref<const Eigen::ArrayXd>& k);

/// Plain-text mixture table: one header line naming the model and columns
/// (m, l_m, f_lm, dl_m, w_m), then one row per component.
void write_mixture(std::ostream& os, const GaussianMixture& mix);
GaussianMixture read_mixture(std::istream& is);

}  // namespace turbmix
