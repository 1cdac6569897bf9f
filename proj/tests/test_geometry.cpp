#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dce/geometry.hpp"

using namespace dce;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE_BEGIN("geometry");

TEST_CASE("omega_parallel evaluates n pi / l") {
    CHECK(omega_parallel(1, kPi) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(omega_parallel(3, 1.0) == doctest::Approx(3.0 * kPi).epsilon(1e-14));
}

TEST_CASE("omega_parallel halves when the length doubles") {
    for (int n : {1, 2, 5}) {
        for (double l : {0.3, 1.0, 7.5}) {
            CHECK(omega_parallel(n, 2.0 * l) ==
                  doctest::Approx(0.5 * omega_parallel(n, l)).epsilon(1e-14));
        }
    }
}

TEST_CASE("omega_parallel rejects bad input") {
    CHECK_THROWS_AS(omega_parallel(0, 1.0), ConfigError);
    CHECK_THROWS_AS(omega_parallel(1, 0.0), ConfigError);
    CHECK_THROWS_AS(omega_parallel(1, -2.0), ConfigError);
}

TEST_CASE("omega_total reduces to omega_parallel on the interval") {
    const Geometry g = Geometry::interval(1.0);
    CHECK(omega_total(ModeIndex{2, 0, 0}, g, 1.0) == doctest::Approx(2.0 * kPi).epsilon(1e-14));
}

TEST_CASE("omega_total composes transverse and longitudinal parts") {
    const Geometry g = Geometry::slab(1.0, 1.0, 1.0);
    // Omega_perp = pi sqrt(2), Omega_par = pi  ->  pi sqrt(3)
    CHECK(omega_total(ModeIndex{1, 1, 1}, g, 1.0) ==
          doctest::Approx(kPi * std::sqrt(3.0)).epsilon(1e-14));
}

TEST_CASE("wide transverse walls recover the pure 1D frequency") {
    const Geometry g = Geometry::slab(1.0, 1e9, 1e9);
    CHECK(omega_total(ModeIndex{3, 1, 1}, g, 1.0) ==
          doctest::Approx(omega_parallel(3, 1.0)).epsilon(1e-12));
}

TEST_CASE("omega_total rejects mismatched mode and geometry") {
    CHECK_THROWS_AS(omega_total(ModeIndex{1, 1, 1}, Geometry::interval(1.0), 1.0), ConfigError);
    CHECK_THROWS_AS(omega_total(ModeIndex{1, 0, 0}, Geometry::slab(1.0, 1.0, 1.0), 1.0),
                    ConfigError);
}

TEST_CASE("delta_omega_sq vanishes for the unperturbed cavity") {
    for (int n : {1, 2, 7}) CHECK(delta_omega_sq(n, 1.0, 1.0) == 0.0);
}

TEST_CASE("delta_omega_sq direct value") {
    // l_t = 1/sqrt(2): 1/l_t^2 - 1 = 1, so the shift is pi^2
    CHECK(delta_omega_sq(1, 1.0 / std::sqrt(2.0), 1.0) ==
          doctest::Approx(kPi * kPi).epsilon(1e-13));
    CHECK_THROWS_AS(delta_omega_sq(1, 0.0, 1.0), ConfigError);
}

TEST_CASE("xi linearizes to -2 eps sin(2 w1 t) at small amplitude") {
    // oracle: Taylor expansion of l0^2/l^2 - 1 for l = l0 (1 + eps sin)
    const double eps = 1e-4;
    const double omega1 = kPi;
    const double l0 = 1.0;
    double worst = 0.0;
    for (int k = 0; k <= 200; ++k) {
        const double t = 2.0 * static_cast<double>(k) / 200.0;
        const double s = std::sin(2.0 * omega1 * t);
        const double l_t = l0 * (1.0 + eps * s);
        const double xi = l0 * l0 / (l_t * l_t) - 1.0;
        worst = std::max(worst, std::fabs(xi + 2.0 * eps * s));
    }
    // remainder 3 x^2 - 4 x^3 + ... peaks at 3 eps^2 (1 + 4 eps / 3 + ...)
    CHECK(worst <= 3.0 * eps * eps * (1.0 + 2.0 * eps));
}

TEST_CASE("build_spectrum truncates the interval basis by frequency") {
    const ModeSpectrum s = build_spectrum(Geometry::interval(1.0), 3.5 * kPi);
    REQUIRE(s.size() == 3);
    CHECK(s.basis[0].n == 1);
    CHECK(s.basis[1].n == 2);
    CHECK(s.basis[2].n == 3);
}

TEST_CASE("build_spectrum rejects an empty basis") {
    CHECK_THROWS_AS(build_spectrum(Geometry::interval(1.0), 0.5 * kPi), ConfigError);
}

TEST_CASE("slab basis includes the corner mode at the ceiling") {
    const double ceiling = kPi * std::sqrt(3.0) * (1.0 + 1e-12);
    const ModeSpectrum s = build_spectrum(Geometry::slab(1.0, 1.0, 1.0), ceiling);
    REQUIRE(s.size() >= 1);
    const ModeIndex& top = s.basis.back();
    CHECK(top == ModeIndex{1, 1, 1});
    CHECK(s.omega0.back() == doctest::Approx(kPi * std::sqrt(3.0)).epsilon(1e-13));
}

TEST_CASE("build_spectrum is order-stable and bit-identical across calls") {
    const Geometry g = Geometry::slab(1.3, 0.9, 1.1);
    const ModeSpectrum s1 = build_spectrum(g, 22.0);
    const ModeSpectrum s2 = build_spectrum(g, 22.0);
    REQUIRE(s1.size() == s2.size());
    for (std::size_t i = 0; i < s1.size(); ++i) {
        CHECK(s1.basis[i] == s2.basis[i]);
        CHECK(s1.omega0[i] == s2.omega0[i]);   // bit-identical
    }
    for (std::size_t i = 1; i < s1.size(); ++i) CHECK(s1.omega0[i] >= s1.omega0[i - 1]);
}

TEST_CASE("frequencies increase with n at fixed transverse index") {
    const Geometry g = Geometry::slab(1.0, 2.0, 3.0);
    for (int n = 1; n < 12; ++n)
        CHECK(omega_total(ModeIndex{n + 1, 2, 1}, g, 1.0) >
              omega_total(ModeIndex{n, 2, 1}, g, 1.0));
}

TEST_CASE("build_spectrum_count extends the basis deterministically") {
    const Geometry g = Geometry::interval(2.0);
    const ModeSpectrum s = build_spectrum_count(g, 12);
    REQUIRE(s.size() == 12);
    for (std::size_t i = 0; i < 12; ++i) CHECK(s.basis[i].n == static_cast<int>(i) + 1);
}

TEST_SUITE_END();
