#include "turbmix/field_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace turbmix {

FieldGrid FieldGrid::uniform(int dimension, Eigen::Index n_per_axis, double h) {
    FieldGrid g;
    g.dimension = dimension;
    for (int a = 0; a < dimension; ++a) {
        g.n[a] = n_per_axis;
        g.h[a] = h;
    }
    g.validate();
    return g;
}

Eigen::Index FieldGrid::node_count() const {
    Eigen::Index count = 1;
    for (int a = 0; a < dimension; ++a) count *= n[a];
    return count;
}

double FieldGrid::min_domain_length() const {
    double len = domain_length(0);
    for (int a = 1; a < dimension; ++a) len = std::min(len, domain_length(a));
    return len;
}

Eigen::Index FieldGrid::stride(int axis) const {
    Eigen::Index s = 1;
    for (int a = axis + 1; a < dimension; ++a) s *= n[a];
    return s;
}

void FieldGrid::validate() const {
    if (dimension != 2 && dimension != 3)
        throw std::invalid_argument("grid dimension must be 2 or 3");
    for (int a = 0; a < dimension; ++a) {
        if (n[a] < 8) throw std::invalid_argument("grid needs >= 8 samples per axis");
        if (!(h[a] > 0.0) || !std::isfinite(h[a]))
            throw std::invalid_argument("grid spacing must be positive");
    }
}

ScalarField make_scalar_field(const FieldGrid& grid) {
    grid.validate();
    return ScalarField{grid, Eigen::ArrayXd::Zero(grid.node_count())};
}

}  // namespace turbmix
