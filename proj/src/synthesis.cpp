#include "turbmix/synthesis.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "turbmix/fft_utils.hpp"

namespace turbmix {

namespace {
constexpr double pi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void check_dimension(int d) {
    if (d != 2 && d != 3) throw std::invalid_argument("dimension must be 2 or 3");
}

// Sampled kernel profile along one axis, wrapped over the periodic images.
Eigen::ArrayXd kernel_profile(Eigen::Index n, double h, double l) {
    const double L = static_cast<double>(n) * h;
    Eigen::ArrayXd g(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double x = static_cast<double>(j) * h;
        const double r = std::min(x, L - x);
        double sum = 0.0;
        for (int wrap = -2; wrap <= 2; ++wrap) {
            const double rr = r + wrap * L;
            const double expo = -pi * rr * rr / (2.0 * l * l);
            if (expo > -745.0) sum += std::exp(expo);
        }
        g[j] = sum;
    }
    return g;
}
}  // namespace

void SynthesisSpec::validate() const {
    grid.validate();
    if (!(k_t > 0.0)) throw std::invalid_argument("k_t must be positive");
    if (!(rho_0 > 0.0)) throw std::invalid_argument("rho_0 must be positive");
    if (ensemble_count < 1)
        throw std::invalid_argument("ensemble_count must be >= 1");
    const double l_max = mixture.max_length_scale();
    const double needed = 8.0 * l_max;
    if (grid.min_domain_length() < needed) {
        std::ostringstream msg;
        msg << "domain too small for correlation containment: need n*h >= 8*l_M = "
            << needed << " m, have " << grid.min_domain_length() << " m";
        throw std::invalid_argument(msg.str());
    }
    if (!(amplitude_scale > 0.0))
        throw std::invalid_argument("amplitude_scale must be positive");
}

SynthesisSpec make_synthesis_spec(GaussianMixture mixture, FieldGrid grid,
                                  double rho_0, std::uint64_t seed,
                                  int ensemble_count) {
    const double k_t = model_kinetic_energy(mixture.model());
    SynthesisSpec spec{std::move(mixture), grid, k_t, rho_0, seed, ensemble_count};
    spec.validate();
    return spec;
}

ScalarField white_noise(const FieldGrid& grid, std::uint64_t seed) {
    ScalarField field = make_scalar_field(grid);
    std::mt19937_64 engine(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (Eigen::Index i = 0; i < field.values.size(); ++i)
        field.values[i] = normal(engine);
    return field;
}

std::uint64_t split_seed(std::uint64_t base, std::uint64_t member,
                         std::uint64_t field_component,
                         std::uint64_t mixture_component) {
    std::uint64_t s = splitmix64(base);
    s = splitmix64(s ^ (0x517cc1b727220a95ULL + member));
    s = splitmix64(s ^ (0x2545f4914f6cdd1dULL + field_component));
    s = splitmix64(s ^ (0x9e3779b97f4a7c15ULL + mixture_component));
    return s;
}

ScalarField gaussian_filter(const ScalarField& field, double l) {
    field.grid.validate();
    if (!(l > 0.0)) throw std::invalid_argument("filter length must be positive");
    if (l > field.grid.min_domain_length() / 8.0) {
        std::ostringstream msg;
        msg << "kernel support exceeds domain: l = " << l << " m > domain/8 = "
            << field.grid.min_domain_length() / 8.0 << " m";
        throw std::invalid_argument(msg.str());
    }
    ScalarField out = field;
    for (int axis = 0; axis < field.grid.dimension; ++axis) {
        const Eigen::Index n = field.grid.n[axis];
        const double h = field.grid.h[axis];
        Eigen::ArrayXd profile = kernel_profile(n, h, l) * h;  // Riemann factor
        apply_axis_multiplier(out, axis, kernel_transfer(profile));
    }
    return out;
}

double gaussian_filter_dc_gain(const FieldGrid& grid, double l) {
    grid.validate();
    double gain = 1.0;
    for (int axis = 0; axis < grid.dimension; ++axis)
        gain *= kernel_profile(grid.n[axis], grid.h[axis], l).sum() * grid.h[axis];
    return gain;
}

double streamfunction_variance_target(double l, double k_t, double rho_0,
                                      int dimension) {
    check_dimension(dimension);
    if (!(l > 0.0) || !(k_t > 0.0) || !(rho_0 > 0.0))
        throw std::invalid_argument("variance target needs positive inputs");
    return std::pow(2.0, 4 - dimension) * l * l * k_t / (3.0 * pi);
}

double amplitude_from_variance(double variance, double l, double rho_0,
                               int dimension) {
    check_dimension(dimension);
    return std::sqrt(rho_0 * variance / std::pow(l, dimension));
}

double component_amplitude(double l_m, double k_t, double rho_0, int dimension) {
    check_dimension(dimension);
    if (!(l_m > 0.0) || !(k_t > 0.0) || !(rho_0 > 0.0))
        throw std::invalid_argument("component amplitude needs positive inputs");
    return std::sqrt(rho_0 / std::pow(l_m, dimension - 2) *
                     std::pow(2.0, 4 - dimension) * k_t / (3.0 * pi));
}

StreamfunctionRealization synthesize_streamfunction(const SynthesisSpec& spec,
                                                    int member,
                                                    int field_component) {
    spec.validate();
    const FieldGrid& grid = spec.grid;
    double cell = 1.0;
    for (int a = 0; a < grid.dimension; ++a) cell *= grid.h[a];
    // lattice representation of delta-correlated noise of intensity 1/rho_0
    const double noise_scale = 1.0 / std::sqrt(spec.rho_0 * cell);

    StreamfunctionRealization real;
    real.total = make_scalar_field(grid);
    const auto& comps = spec.mixture.components();
    real.per_component.reserve(comps.size());
    for (std::size_t m = 0; m < comps.size(); ++m) {
        const auto& c = comps[m];
        const std::uint64_t seed = split_seed(
            spec.seed, static_cast<std::uint64_t>(member),
            static_cast<std::uint64_t>(field_component), m);
        ScalarField psi = gaussian_filter(white_noise(grid, seed), c.length_scale);
        const double amp =
            spec.amplitude_scale *
            component_amplitude(c.length_scale, spec.k_t, spec.rho_0,
                                grid.dimension);
        psi.values *= amp * noise_scale;
        real.total.values += std::sqrt(c.weight) * psi.values;
        real.per_component.push_back(std::move(psi));
    }
    return real;
}

ScalarField synthesize_streamfunction_total(const SynthesisSpec& spec,
                                            int member, int field_component) {
    spec.validate();
    const FieldGrid& grid = spec.grid;
    double cell = 1.0;
    for (int a = 0; a < grid.dimension; ++a) cell *= grid.h[a];
    const double noise_scale = 1.0 / std::sqrt(spec.rho_0 * cell);
    ScalarField total = make_scalar_field(grid);
    const auto& comps = spec.mixture.components();
    for (std::size_t m = 0; m < comps.size(); ++m) {
        const auto& c = comps[m];
        if (c.weight == 0.0) continue;
        const std::uint64_t seed = split_seed(
            spec.seed, static_cast<std::uint64_t>(member),
            static_cast<std::uint64_t>(field_component), m);
        ScalarField psi = gaussian_filter(white_noise(grid, seed), c.length_scale);
        const double amp =
            spec.amplitude_scale *
            component_amplitude(c.length_scale, spec.k_t, spec.rho_0,
                                grid.dimension);
        total.values += std::sqrt(c.weight) * amp * noise_scale * psi.values;
    }
    return total;
}

VectorField curl_velocity(const std::vector<ScalarField>& psi) {
    if (psi.empty()) throw std::invalid_argument("curl needs a streamfunction");
    const FieldGrid& grid = psi.front().grid;
    grid.validate();
    VectorField v;
    v.grid = grid;
    if (grid.dimension == 2) {
        if (psi.size() != 1)
            throw std::invalid_argument("2-D curl takes one scalar streamfunction");
        ScalarField dy = psi[0];
        differentiate_axis(dy, 1);
        ScalarField dx = psi[0];
        differentiate_axis(dx, 0);
        v.components.push_back(dy.values);           // v_x = d psi / dy
        v.components.push_back(-dx.values);          // v_y = -d psi / dx
        return v;
    }
    if (psi.size() != 3)
        throw std::invalid_argument("3-D curl takes three streamfunction components");
    for (const auto& p : psi)
        if (!(p.grid == grid))
            throw std::invalid_argument("streamfunction components on mixed grids");
    auto d = [&](const ScalarField& f, int axis) {
        ScalarField out = f;
        differentiate_axis(out, axis);
        return out.values;
    };
    v.components.push_back(d(psi[2], 1) - d(psi[1], 2));  // v_x
    v.components.push_back(d(psi[0], 2) - d(psi[2], 0));  // v_y
    v.components.push_back(d(psi[1], 0) - d(psi[0], 1));  // v_z
    return v;
}

VectorField synthesize_velocity(const SynthesisSpec& spec, int member) {
    std::vector<ScalarField> psi;
    const int n_psi = spec.grid.dimension == 2 ? 1 : 3;
    psi.reserve(n_psi);
    for (int c = 0; c < n_psi; ++c)
        psi.push_back(synthesize_streamfunction_total(spec, member, c));
    return curl_velocity(psi);
}

double max_spectral_divergence(const VectorField& v) {
    const FieldGrid& grid = v.grid;
    if (static_cast<int>(v.components.size()) != grid.dimension)
        throw std::invalid_argument("component count must match dimension");
    ScalarField div = make_scalar_field(grid);
    double vmax = 0.0;
    for (int a = 0; a < grid.dimension; ++a) {
        ScalarField da{grid, v.components[a]};
        differentiate_axis(da, a);
        div.values += da.values;
        vmax = std::max(vmax, v.components[a].abs().maxCoeff());
    }
    if (vmax == 0.0) return 0.0;
    return div.values.abs().maxCoeff() / vmax;
}

}  // namespace turbmix
