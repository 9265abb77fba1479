#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "test_support.hpp"
#include "turbmix/estimation.hpp"
#include "turbmix/synthesis.hpp"
#include "turbmix/weighting.hpp"

using namespace turbmix;
using turbmix::testing::pi;

namespace {

VectorField wrap_component(const FieldGrid& grid, const Eigen::ArrayXd& values) {
    VectorField f;
    f.grid = grid;
    f.components.push_back(values);
    return f;
}

}  // namespace

TEST_CASE("pure sine concentrates its variance in one bin") {
    const FieldGrid grid = FieldGrid::uniform(2, 64, 0.25);
    const double L = grid.domain_length(0);
    const double A = 1.7;
    const int mode = 5;
    const double k0 = 2.0 * pi * mode / L;
    Eigen::ArrayXd v(grid.node_count());
    for (Eigen::Index i = 0; i < grid.n[0]; ++i)
        for (Eigen::Index j = 0; j < grid.n[1]; ++j)
            v[i * grid.n[1] + j] = A * std::sin(k0 * (i * grid.h[0]));
    const auto est = estimate_one_d_spectrum({wrap_component(grid, v)}, 0, 0);
    const double dk = 2.0 * pi / L;
    for (Eigen::Index b = 0; b < est.k1_axis.size(); ++b) {
        const double expected = (b + 1 == mode) ? A * A / 2.0 / dk : 0.0;
        CHECK(est.density[b] == doctest::Approx(expected).scale(A * A / dk).epsilon(1e-12));
    }
    CHECK(est.k1_axis[mode - 1] == doctest::Approx(k0).epsilon(1e-14));
}

TEST_CASE("Parseval identity of the estimator") {
    const FieldGrid grid = FieldGrid::uniform(2, 128, 0.1);
    std::vector<VectorField> fields;
    for (int e = 0; e < 3; ++e)
        fields.push_back(wrap_component(grid, white_noise(grid, 50 + e).values));
    const auto est = estimate_one_d_spectrum(fields, 0, 0);
    const double dk = 2.0 * pi / grid.domain_length(0);
    const double spectral_sum = est.density.sum() * dk;
    // independent recomputation of the per-line sample variance
    double var = 0.0;
    long lines = 0;
    for (const auto& f : fields) {
        const auto& v = f.components[0];
        const Eigen::Index n = grid.n[0], stride = grid.n[1];
        for (Eigen::Index line = 0; line < stride; ++line) {
            double mean = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) mean += v[line + j * stride];
            mean /= n;
            double s = 0.0;
            for (Eigen::Index j = 0; j < n; ++j)
                s += std::pow(v[line + j * stride] - mean, 2.0);
            var += s / n;
            ++lines;
        }
    }
    var /= lines;
    CHECK(spectral_sum == doctest::Approx(var).epsilon(1e-12));
    CHECK(est.sample_variance == doctest::Approx(var).epsilon(1e-12));
}

TEST_CASE("white noise has a flat spectrum within standard-error bands") {
    const FieldGrid grid = FieldGrid::uniform(2, 128, 0.1);
    std::vector<VectorField> fields;
    for (int e = 0; e < 20; ++e)
        fields.push_back(wrap_component(grid, white_noise(grid, 900 + e).values));
    const auto est = estimate_one_d_spectrum(fields, 0, 0);
    // the unpaired Nyquist bin holds half the one-sided level by
    // construction; flatness applies to the doubled interior bins
    const Eigen::Index interior = est.density.size() - 1;
    const double level = est.density.head(interior).mean();
    int within = 0;
    for (Eigen::Index b = 0; b < interior; ++b) {
        if (std::abs(est.density[b] - level) <= 3.0 * est.standard_error[b])
            ++within;
        CHECK(std::abs(est.density[b] - level) <= 5.0 * est.standard_error[b]);
    }
    CHECK(within >= static_cast<int>(0.9 * interior));
}

TEST_CASE("standard error shrinks like the square root of the ensemble") {
    const FieldGrid grid = FieldGrid::uniform(2, 64, 0.1);
    auto collect = [&](int count, int seed0) {
        std::vector<VectorField> fields;
        for (int e = 0; e < count; ++e)
            fields.push_back(
                wrap_component(grid, white_noise(grid, seed0 + e).values));
        return estimate_one_d_spectrum(fields, 0, 0);
    };
    const auto small = collect(10, 100);
    const auto large = collect(20, 300);
    const double ratio =
        small.standard_error.mean() / large.standard_error.mean();
    CHECK(ratio == doctest::Approx(std::sqrt(2.0)).epsilon(0.2));
}

TEST_CASE("correlation estimate is one at zero lag and unbiased on sines") {
    const FieldGrid grid = FieldGrid::uniform(2, 64, 0.5);
    const double L = grid.domain_length(0);
    Eigen::ArrayXd v(grid.node_count());
    for (Eigen::Index i = 0; i < grid.n[0]; ++i)
        for (Eigen::Index j = 0; j < grid.n[1]; ++j)
            v[i * grid.n[1] + j] = std::cos(2.0 * pi * 3.0 * (i * grid.h[0]) / L);
    const auto corr = estimate_correlation({wrap_component(grid, v)}, 0, 0, L / 2.0);
    CHECK(corr.value[0] == 1.0);
    for (Eigen::Index r = 0; r < corr.lag.size(); ++r)
        CHECK(corr.value[r] ==
              doctest::Approx(std::cos(2.0 * pi * 3.0 * corr.lag[r] / L))
                  .scale(1.0).epsilon(1e-12));
}

TEST_CASE("integral length scale of an exact exponential") {
    CorrelationEstimate corr;
    const double lambda = 0.4;
    const int n = 4000;
    corr.lag = Eigen::ArrayXd::LinSpaced(n, 0.0, 10.0 * lambda);
    corr.value = (-corr.lag / lambda).exp();
    corr.ensemble_count = 1;
    CHECK(integral_length_scale(corr) == doctest::Approx(lambda).epsilon(0.01));
}

TEST_CASE("non-decaying correlation is rejected with a diagnostic") {
    CorrelationEstimate corr;
    corr.lag = Eigen::ArrayXd::LinSpaced(100, 0.0, 1.0);
    corr.value = Eigen::ArrayXd::Ones(100);
    CHECK_THROWS_WITH_AS(integral_length_scale(corr),
                         doctest::Contains("non-decaying"), std::runtime_error);
}

TEST_CASE("single-component field halves its correlation at the design lag") {
    const double l = 0.008;
    const FieldGrid grid = FieldGrid::uniform(2, 128, 0.001);
    const SpectrumModel li = SpectrumModel::liepmann(1.0, l);
    const auto mix = mixture_from_nodes(li, {{l, 1.0 / weight_liepmann(l, l)}});
    SynthesisSpec spec = make_synthesis_spec(mix, grid, 1.0, 4711, 50);
    std::vector<VectorField> fields;
    for (int member = 0; member < spec.ensemble_count; ++member)
        fields.push_back(synthesize_velocity(spec, member));
    // longitudinal correlation of v1 along the x axis
    const auto corr = estimate_correlation(fields, 0, 0, 0.05);
    const double r_half = 2.0 * l * std::sqrt(std::log(2.0) / pi);
    const double idx = r_half / grid.h[0];
    const Eigen::Index i0 = static_cast<Eigen::Index>(idx);
    const double t = idx - static_cast<double>(i0);
    const double measured = (1.0 - t) * corr.value[i0] + t * corr.value[i0 + 1];
    CHECK(measured == doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("estimated spectra are isotropic across axes") {
    const double lambda = 0.008;
    const SpectrumModel vk = SpectrumModel::von_karman(1.0, lambda);
    const auto mix = discretize(vk, ExplicitGridPolicy{lambda / 5.0, 2.0 * lambda, 8});
    const FieldGrid grid = FieldGrid::uniform(2, 128, 0.001);
    SynthesisSpec spec = make_synthesis_spec(mix, grid, 1.0, 2718, 40);
    std::vector<VectorField> fields;
    for (int member = 0; member < spec.ensemble_count; ++member)
        fields.push_back(synthesize_velocity(spec, member));
    const auto ex = estimate_one_d_spectrum(fields, 0, 0);  // v1 along x
    const auto ey = estimate_one_d_spectrum(fields, 1, 1);  // v2 along y
    int within = 0;
    int band = 0;
    for (Eigen::Index b = 3; b < ex.density.size() / 2; ++b) {
        ++band;
        if (std::abs(ex.density[b] - ey.density[b]) <=
            2.0 * (ex.standard_error[b] + ey.standard_error[b]))
            ++within;
    }
    CHECK(within >= static_cast<int>(0.9 * band));
}

TEST_CASE("estimator input validation") {
    const FieldGrid g1 = FieldGrid::uniform(2, 64, 0.1);
    const FieldGrid g2 = FieldGrid::uniform(2, 32, 0.1);
    std::vector<VectorField> mixed;
    mixed.push_back(wrap_component(g1, white_noise(g1, 1).values));
    mixed.push_back(wrap_component(g2, white_noise(g2, 2).values));
    CHECK_THROWS_AS(estimate_one_d_spectrum(mixed, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(estimate_one_d_spectrum({}, 0, 0), std::invalid_argument);
    std::vector<VectorField> one;
    one.push_back(wrap_component(g1, white_noise(g1, 3).values));
    CHECK_THROWS_AS(estimate_one_d_spectrum(one, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(estimate_correlation(one, 0, 0, 100.0), std::invalid_argument);
}

TEST_CASE("spectrum estimate export carries metadata and frequency column") {
    const FieldGrid grid = FieldGrid::uniform(2, 64, 0.1);
    const auto est = estimate_one_d_spectrum(
        {wrap_component(grid, white_noise(grid, 5).values)}, 0, 0);
    std::ostringstream os;
    write_spectrum_estimate(os, est, "grid=64x64 seed=5", 80.0);
    const std::string text = os.str();
    CHECK(text.find("turbmix spectrum estimate") != std::string::npos);
    CHECK(text.find("frequency[Hz]") != std::string::npos);
    CHECK(text.find("sample_variance=") != std::string::npos);
}
