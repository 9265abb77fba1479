#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "turbmix/one_d_spectra.hpp"
#include "turbmix/quadrature.hpp"

using namespace turbmix;
using turbmix::testing::one_d_direct_plane_quadrature;
using turbmix::testing::pi;

TEST_CASE("longitudinal spectrum at zero recovers the length-scale identity") {
    const double u_t = 1.4, lambda = 0.33;
    const SpectrumModel vk = SpectrumModel::von_karman(u_t, lambda);
    const double e11 = one_d_from_energy(vk, VelocityComponent::Longitudinal, 0.0);
    CHECK(e11 == doctest::Approx(2.0 / pi * u_t * u_t * lambda).epsilon(1e-4));
    // same identity for Liepmann and Gaussian
    for (auto family : {SpectrumFamily::Liepmann, SpectrumFamily::Gaussian}) {
        SpectrumModel m{family, u_t, lambda};
        CHECK(one_d_from_energy(m, VelocityComponent::Longitudinal, 0.0) ==
              doctest::Approx(2.0 / pi * u_t * u_t * lambda).epsilon(1e-6));
    }
}

TEST_CASE("reduced integral equals the analytic closed forms") {
    const SpectrumModel vk = SpectrumModel::von_karman(1.0, 1.0);
    const SpectrumModel li = SpectrumModel::liepmann(1.0, 1.0);
    for (double k1 : {0.0, 0.5, 1.0, 5.0, 50.0}) {
        CHECK(one_d_from_energy(vk, VelocityComponent::Longitudinal, k1) ==
              doctest::Approx(analytic_one_d_longitudinal(vk, k1)).epsilon(1e-7));
        CHECK(one_d_from_energy(li, VelocityComponent::Longitudinal, k1) ==
              doctest::Approx(analytic_one_d_longitudinal(li, k1)).epsilon(1e-7));
    }
}

TEST_CASE("reduced integral agrees with the brute-force plane quadrature") {
    const SpectrumModel vk = SpectrumModel::von_karman(1.0, 1.0);
    for (double k1 : {0.0, 1.0, 5.0}) {
        for (int comp : {1, 2}) {
            const auto c = comp == 1 ? VelocityComponent::Longitudinal
                                     : VelocityComponent::Transverse;
            const double reduced = one_d_from_energy(vk, c, k1);
            const double direct = one_d_direct_plane_quadrature(vk, comp, k1);
            CHECK(std::abs(reduced / direct - 1.0) <= 1e-3);
        }
    }
}

TEST_CASE("zero spectrum gives zero one-dimensional spectra") {
    auto zero = [](double) { return 0.0; };
    CHECK(one_d_from_energy(zero, VelocityComponent::Longitudinal, 3, 1.0, 1.0) ==
          0.0);
    CHECK(one_d_from_energy(zero, VelocityComponent::Transverse, 2, 0.5, 1.0) ==
          0.0);
}

TEST_CASE("Gaussian closed forms match quadrature tightly") {
    const double u_t = 1.0, l = 0.7;
    const SpectrumModel g = SpectrumModel::gaussian(u_t, l);
    auto E = [&](double k) { return energy_spectrum(g, k); };
    for (double k1 : {0.0, 1.0, 3.0, 8.0}) {
        CHECK(gaussian_one_d_longitudinal(u_t, l, k1) ==
              doctest::Approx(one_d_from_energy(E, VelocityComponent::Longitudinal,
                                                3, k1, 1.0 / l, 1e-11))
                  .epsilon(1e-8));
        CHECK(gaussian_one_d_transverse_3d(u_t, l, k1) ==
              doctest::Approx(one_d_from_energy(E, VelocityComponent::Transverse,
                                                3, k1, 1.0 / l, 1e-11))
                  .epsilon(1e-8));
    }
}

TEST_CASE("mixture path equals the energy path by linearity") {
    const SpectrumModel vk = SpectrumModel::von_karman(1.0, 1.0);
    const auto mix = discretize(vk, ExplicitGridPolicy{0.2, 4.0, 10});
    auto E_mix = [&](double k) { return reconstruct_spectrum(mix, k); };
    for (int i = 0; i < 20; ++i) {
        const double k1 = 0.05 * std::pow(10.0, 2.5 * i / 19.0);
        const double closed =
            one_d_from_mixture(mix, VelocityComponent::Longitudinal, 3, k1);
        const double quad = one_d_from_energy(
            E_mix, VelocityComponent::Longitudinal, 3, k1, 1.0, 1e-10);
        CHECK(closed == doctest::Approx(quad).epsilon(1e-6));
    }
}

TEST_CASE("axial spectrum is dimension independent, transverse is not") {
    const SpectrumModel vk = SpectrumModel::von_karman(1.0, 1.0);
    const auto mix = discretize(vk, ExplicitGridPolicy{0.2, 4.0, 10});
    auto E3 = [&](double k) { return reconstruct_spectrum(mix, k); };
    auto E2 = [&](double k) { return mixture_energy_spectrum_2d(mix, k); };
    for (double k1 : {0.0, 0.4, 1.3, 5.0}) {
        // closed-form mixture path: same expression in 2-D and 3-D
        CHECK(one_d_from_mixture(mix, VelocityComponent::Longitudinal, 2, k1) ==
              one_d_from_mixture(mix, VelocityComponent::Longitudinal, 3, k1));
        // quadrature over the respective energy-spectrum functions
        const double e3 = one_d_from_energy(
            E3, VelocityComponent::Longitudinal, 3, k1, 1.0, 1e-10);
        const double e2 = one_d_from_energy(
            E2, VelocityComponent::Longitudinal, 2, k1, 1.0, 1e-10);
        CHECK(e2 == doctest::Approx(e3).epsilon(1e-6));
        if (k1 > 0.0) {
            const double t3 =
                one_d_from_mixture(mix, VelocityComponent::Transverse, 3, k1);
            const double t2 =
                one_d_from_mixture(mix, VelocityComponent::Transverse, 2, k1);
            CHECK(t3 != doctest::Approx(t2).epsilon(1e-3));
            CHECK(one_d_from_energy(E2, VelocityComponent::Transverse, 2, k1,
                                    1.0, 1e-10) ==
                  doctest::Approx(t2).epsilon(1e-6));
        }
    }
    // the 2-D transverse spectrum vanishes at k1 = 0
    CHECK(one_d_from_mixture(mix, VelocityComponent::Transverse, 2, 0.0) == 0.0);
}

TEST_CASE("transverse to longitudinal ratio approaches 4/3") {
    const SpectrumModel vk = SpectrumModel::von_karman(1.0, 1.0);
    const double k1 = 1e3;
    const double r = one_d_from_energy(vk, VelocityComponent::Transverse, k1) /
                     one_d_from_energy(vk, VelocityComponent::Longitudinal, k1);
    CHECK(r == doctest::Approx(4.0 / 3.0).epsilon(0.02));
}

TEST_CASE("energy consistency of the one-dimensional reduction") {
    // the three component variances integrate to twice the kinetic energy:
    // 1/2 int [E_11 + 2 E_22] dk1 = int E(k) dk = 3/2 u_t^2
    const SpectrumModel vk = SpectrumModel::von_karman(1.0, 1.0);
    auto sum11_22 = [&](double k1) {
        return one_d_from_energy(vk, VelocityComponent::Longitudinal, k1, 1e-9) +
               2.0 * one_d_from_energy(vk, VelocityComponent::Transverse, k1, 1e-9);
    };
    const double lhs = 0.5 * integrate_to_infinity(sum11_22, 0.0, 1.0, 1e-7).value;
    const double rhs = 1.5;  // total energy at u_t = 1
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-3));
}

TEST_CASE("mixture longitudinal spectrum against the analytic target") {
    const SpectrumModel vk = SpectrumModel::von_karman(1.0, 1.0);
    const auto mix = discretize(vk, ExplicitGridPolicy{0.2, 4.0, 10});
    // faithful through the energy-containing range; the missing scales
    // outside [l_0, l_M] show up at the band edges
    for (int i = 0; i < 25; ++i) {
        const double k1 = 0.0628 * std::pow(1.5 / 0.0628, i / 24.0);
        const double ratio =
            one_d_from_mixture(mix, VelocityComponent::Longitudinal, 3, k1) /
            analytic_one_d_longitudinal(vk, k1);
        CHECK(ratio > 0.93);
        CHECK(ratio < 1.01);
    }
    // characterization at the top of the band: the truncated small scales
    // integrate to roughly half the analytic level
    const double top = one_d_from_mixture(mix, VelocityComponent::Longitudinal,
                                          3, 2.0 * pi) /
                       analytic_one_d_longitudinal(vk, 2.0 * pi);
    CHECK(top == doctest::Approx(0.534).epsilon(0.05));
}

TEST_CASE("frequency map") {
    Eigen::ArrayXd k1 = Eigen::ArrayXd::LinSpaced(200, 0.0, 400.0);
    Eigen::ArrayXd dens(200);
    for (Eigen::Index i = 0; i < 200; ++i)
        dens[i] = std::exp(-k1[i] / 50.0);
    const auto fs = frequency_map(k1, dens, 100.0);
    CHECK(fs.frequency[199] == doctest::Approx(100.0 * 400.0 / (2.0 * pi)));
    // integral preservation under the axis change (same trapezoid rule)
    double ik = 0.0, iff = 0.0;
    for (Eigen::Index i = 1; i < 200; ++i) {
        ik += 0.5 * (dens[i] + dens[i - 1]) * (k1[i] - k1[i - 1]);
        iff += 0.5 * (fs.psd[i] + fs.psd[i - 1]) *
               (fs.frequency[i] - fs.frequency[i - 1]);
    }
    CHECK(iff == doctest::Approx(ik).epsilon(1e-10));

    Eigen::ArrayXd one(1), val(1);
    one << 2.0 * pi;
    val << 1.0;
    CHECK(frequency_map(one, val, 100.0).frequency[0] ==
          doctest::Approx(100.0).epsilon(1e-14));
    CHECK_THROWS_AS(frequency_map(one, val, 0.0), std::invalid_argument);
}

TEST_CASE("benchmark band maps into the resolved wavenumber range") {
    // Lambda = 8 mm; a mean flow of 80 m/s puts 100 Hz .. 10 kHz exactly
    // onto the two-decade band the default grid resolves
    const double lambda = 0.008, u_0 = 80.0;
    const double k_max = 2.0 * pi / lambda, k_min = k_max / 100.0;
    const double f_lo = u_0 * k_min / (2.0 * pi);
    const double f_hi = u_0 * k_max / (2.0 * pi);
    CHECK(f_lo <= 100.0 + 1e-9);
    CHECK(f_hi >= 10000.0 - 1e-9);
}

TEST_CASE("input validation") {
    const SpectrumModel vk = SpectrumModel::von_karman(1.0, 1.0);
    CHECK_THROWS_AS(one_d_from_energy(vk, VelocityComponent::Longitudinal, -1.0),
                    std::invalid_argument);
    const SpectrumModel mv = SpectrumModel::modified_von_karman(1.0, 1.0, 10.0);
    CHECK_THROWS_AS(analytic_one_d_longitudinal(mv, 1.0), std::invalid_argument);
    auto E = [](double k) { return std::exp(-k); };
    CHECK_THROWS_AS(one_d_from_energy(E, VelocityComponent::Longitudinal, 4, 0.0, 1.0),
                    std::invalid_argument);
}
