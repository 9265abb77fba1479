#pragma once

#include <Eigen/Core>
#include <array>
#include <vector>

namespace turbmix {

/// Uniform periodic lattice in 2 or 3 dimensions. Sample storage is
/// row-major with the last axis fastest.
struct FieldGrid {
    int dimension = 2;
    std::array<Eigen::Index, 3> n{1, 1, 1};  ///< samples per axis
    std::array<double, 3> h{0.0, 0.0, 0.0};  ///< spacing per axis [m]
    bool periodic = true;

    static FieldGrid uniform(int dimension, Eigen::Index n_per_axis, double h);

    Eigen::Index node_count() const;
    double domain_length(int axis) const { return static_cast<double>(n[axis]) * h[axis]; }
    double min_domain_length() const;
    Eigen::Index stride(int axis) const;

    void validate() const;
    bool operator==(const FieldGrid&) const = default;
};

struct ScalarField {
    FieldGrid grid;
    Eigen::ArrayXd values;
};

ScalarField make_scalar_field(const FieldGrid& grid);

struct VectorField {
    FieldGrid grid;
    std::vector<Eigen::ArrayXd> components;  ///< size == grid.dimension
};

}  // namespace turbmix
