#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "turbmix/constants.hpp"
#include "turbmix/spectrum_model.hpp"

using namespace turbmix;
using turbmix::testing::pi;

TEST_CASE("karman wavenumber constant") {
    const double ke = karman_wavenumber_constant();
    // high-precision reference: sqrt(pi) * 1.1287870299081260 / 2.6789385347077476
    CHECK(ke == doctest::Approx(0.7468342002221868).epsilon(1e-13));
    CHECK(ke > 0.74);
    CHECK(ke < 0.75);
    CHECK(gamma_self_check() < 1e-12);
}

TEST_CASE("energy spectrum basics") {
    const SpectrumModel vk = SpectrumModel::von_karman(1.3, 0.37);
    const SpectrumModel li = SpectrumModel::liepmann(1.3, 0.37);
    const SpectrumModel mv = SpectrumModel::modified_von_karman(1.3, 0.37, 50.0);
    const SpectrumModel ga = SpectrumModel::gaussian(1.3, 0.37);

    for (const auto& m : {vk, li, mv, ga}) {
        CHECK(energy_spectrum(m, 0.0) == 0.0);
        CHECK_THROWS_AS(energy_spectrum(m, -1.0), std::invalid_argument);
        CHECK_THROWS_AS(energy_spectrum(m, std::nan("")), std::invalid_argument);
        CHECK_THROWS_AS(energy_spectrum(m, INFINITY), std::invalid_argument);
    }
    CHECK_THROWS_AS(SpectrumModel::von_karman(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(SpectrumModel::von_karman(1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(SpectrumModel::modified_von_karman(1.0, 1.0, INFINITY),
                    std::invalid_argument);
}

TEST_CASE("von Karman peak sits at reduced wavenumber sqrt(12/5)") {
    const SpectrumModel vk = SpectrumModel::von_karman(0.9, 0.37);
    const double ke = karman_wavenumber_constant();
    double best_k = 0.0, best_e = 0.0;
    for (int i = 0; i <= 4000; ++i) {
        const double kh = 1.0 + 1.2 * i / 4000.0;
        const double k = kh * ke / vk.lambda;
        const double e = energy_spectrum(vk, k);
        if (e > best_e) {
            best_e = e;
            best_k = kh;
        }
    }
    CHECK(best_k == doctest::Approx(std::sqrt(12.0 / 5.0)).epsilon(1e-3));
}

TEST_CASE("inertial-range decay approaches -5/3 law") {
    const SpectrumModel vk = SpectrumModel::von_karman(1.0, 1.0);
    const double ke = karman_wavenumber_constant();
    const double k = 1e3 * ke;  // reduced wavenumber 1e3
    const double ratio = energy_spectrum(vk, 2.0 * k) / energy_spectrum(vk, k);
    CHECK(ratio == doctest::Approx(std::pow(2.0, -5.0 / 3.0)).epsilon(0.01));
}

TEST_CASE("modified von Karman approaches von Karman for huge k_d") {
    const double lambda = 0.37;
    const SpectrumModel vk = SpectrumModel::von_karman(1.1, lambda);
    const SpectrumModel mv =
        SpectrumModel::modified_von_karman(1.1, lambda, 1e9 / lambda);
    const double k = karman_wavenumber_constant() / lambda;  // reduced k = 1
    CHECK(energy_spectrum(mv, k) ==
          doctest::Approx(energy_spectrum(vk, k)).epsilon(1e-9));
}

TEST_CASE("modified von Karman underflows to zero, never NaN") {
    const SpectrumModel mv = SpectrumModel::modified_von_karman(1.0, 1.0, 1e-3);
    const double e = energy_spectrum(mv, 1e6);
    CHECK(e == 0.0);
    CHECK(std::isfinite(energy_spectrum(mv, 1e300)));
}

TEST_CASE("normalized spectrum integrates to one") {
    const SpectrumModel ga = SpectrumModel::gaussian(2.0, 0.013);
    CHECK(normalized_spectrum_mass(ga) == doctest::Approx(1.0).epsilon(1e-8));
    const SpectrumModel vk = SpectrumModel::von_karman(2.0, 0.013);
    CHECK(normalized_spectrum_mass(vk) == doctest::Approx(1.0).epsilon(1e-6));
    const SpectrumModel li = SpectrumModel::liepmann(2.0, 0.013);
    CHECK(normalized_spectrum_mass(li) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("normalized spectrum is 2/3 of energy spectrum at unit u_t") {
    const SpectrumModel vk = SpectrumModel::von_karman(1.0, 0.7);
    for (double k : {0.1, 1.0, 7.3}) {
        CHECK(normalized_spectrum(vk, k) ==
              doctest::Approx(2.0 / 3.0 * energy_spectrum(vk, k)).epsilon(1e-14));
    }
}

TEST_CASE("total energy equals 3/2 u_t^2") {
    for (auto family : {SpectrumFamily::Gaussian, SpectrumFamily::VonKarman,
                        SpectrumFamily::Liepmann}) {
        SpectrumModel m{family, 1.7, 0.021};
        const double total = 1.5 * m.u_t * m.u_t * normalized_spectrum_mass(m);
        const double tol = family == SpectrumFamily::Gaussian ? 1e-8 : 1e-4;
        CHECK(total == doctest::Approx(1.5 * 1.7 * 1.7).epsilon(tol));
    }
}

TEST_CASE("low-wavenumber k^4 law") {
    const double lambda = 0.37;
    for (auto family : {SpectrumFamily::VonKarman, SpectrumFamily::Liepmann,
                        SpectrumFamily::ModifiedVonKarman,
                        SpectrumFamily::Gaussian}) {
        SpectrumModel m{family, 1.0, lambda, 100.0 / lambda};
        const double k1 = 1e-4 / lambda, k2 = 1e-5 / lambda;
        const double r1 = energy_spectrum(m, k1) / std::pow(k1, 4.0);
        const double r2 = energy_spectrum(m, k2) / std::pow(k2, 4.0);
        CHECK(r1 > 0.0);
        CHECK(std::abs(r1 / r2 - 1.0) < 1e-3);
    }
}

TEST_CASE("scale equivariance") {
    const double k = 3.1, lambda = 0.21, kd_lambda = 80.0;
    for (auto family : {SpectrumFamily::VonKarman, SpectrumFamily::Liepmann,
                        SpectrumFamily::ModifiedVonKarman,
                        SpectrumFamily::Gaussian}) {
        SpectrumModel base{family, 1.4, lambda, kd_lambda / lambda};
        const double ref = energy_spectrum(base, k);
        for (double s : {0.5, 2.0, 10.0}) {
            SpectrumModel scaled{family, 1.4, s * lambda, kd_lambda / (s * lambda)};
            CHECK(energy_spectrum(scaled, k / s) ==
                  doctest::Approx(s * ref).epsilon(1e-12));
        }
    }
}

TEST_CASE("non-negativity over random parameters") {
    std::uint64_t state = 42;
    auto next = [&]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(state >> 11) / 9007199254740992.0;
    };
    for (int trial = 0; trial < 200; ++trial) {
        SpectrumModel m;
        const int f = static_cast<int>(next() * 4);
        m.family = static_cast<SpectrumFamily>(f);
        m.u_t = 0.1 + 5.0 * next();
        m.lambda = std::pow(10.0, -4.0 + 6.0 * next());
        m.k_d = std::pow(10.0, 4.0 * next()) / m.lambda;
        const double k = std::pow(10.0, -6.0 + 12.0 * next()) / m.lambda;
        CHECK(energy_spectrum(m, k) >= 0.0);
    }
}

TEST_CASE("turbulence intensity conversion") {
    TurbulenceIntensitySpec ti{0.05, 20.0};
    CHECK(ti.turbulent_velocity() == doctest::Approx(1.0).epsilon(1e-15));
    const double ut2 = std::pow(ti.turbulent_velocity(), 2.0);
    CHECK(ut2 == doctest::Approx(std::pow(0.05 * 20.0, 2.0)).epsilon(1e-15));
    CHECK_THROWS_AS((TurbulenceIntensitySpec{-0.1, 1.0}.validate()),
                    std::invalid_argument);
    CHECK_THROWS_AS((TurbulenceIntensitySpec{0.1, 0.0}.validate()),
                    std::invalid_argument);
}

TEST_CASE("array overloads match scalar path") {
    const SpectrumModel vk = SpectrumModel::von_karman(1.0, 0.5);
    Eigen::ArrayXd k(4);
    k << 0.0, 0.3, 2.0, 40.0;
    const Eigen::ArrayXd e = energy_spectrum(vk, k);
    for (Eigen::Index i = 0; i < k.size(); ++i)
        CHECK(e[i] == energy_spectrum(vk, k[i]));
}
