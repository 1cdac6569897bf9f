#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "dce/oracle.hpp"
#include "dce/response.hpp"

using namespace dce;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE_BEGIN("oracle");

TEST_CASE("time-domain double integral vanishes for a static boundary") {
    const Geometry g = Geometry::interval(1.0);
    const Trajectory still = Trajectory::gaussian_displacement(1.0, 0.0, 1.0, 5.0, 10.0);
    const TimeDomainResult td = n_timedomain(ModeIndex{1, 0, 0}, still, g, 4);
    CHECK(td.n_squeeze == 0.0);
    CHECK(td.n_accel == 0.0);
}

TEST_CASE("time-domain and spectral evaluations agree on a rigid translation") {
    const Geometry g = Geometry::interval(1.0);
    const std::size_t K = 4;
    const ModeSpectrum basis = build_spectrum_count(g, K);
    const GeometricMatrices gm = geometric_matrices(basis);
    // broadband pulse keeps every pair frequency alive
    const double tau = 2.8 / (basis.omega0[2] + basis.omega0[3]);
    const double T = 40.0 * tau;
    const Trajectory traj =
        Trajectory::gaussian_displacement(1.0, 1e-3, tau, 0.5 * T, T, 65537);

    for (std::size_t i = 0; i < K; ++i) {
        const double spectral =
            n_squeeze(basis.basis[i], traj, basis) + n_accel(basis.basis[i], traj, gm, basis).value;
        const TimeDomainResult td = n_timedomain(basis.basis[i], traj, g, K);
        const double timedomain = td.n_squeeze + td.n_accel;
        CHECK(std::fabs(spectral - timedomain) <= 1e-6 * std::max(spectral, timedomain));
        CHECK(td.imag_residual <= 1e-12);
    }
}

TEST_CASE("time-domain kernel is real for a breathing cavity too") {
    const Geometry g = Geometry::interval(1.0);
    const Trajectory traj = Trajectory::harmonic_length(1.0, 1e-3, kPi, 100.0 / kPi, 16385);
    const TimeDomainResult td = n_timedomain(ModeIndex{1, 0, 0}, traj, g, 4);
    CHECK(td.imag_residual <= 1e-12);
    CHECK(td.n_squeeze > 0.0);
}

TEST_CASE("free oscillator scatters into itself") {
    auto zero = [](double) { return 0.0; };
    const ScatteringResult r = scattering_n(zero, 1.7, 0.0, 25.0);
    CHECK(r.beta_sq <= 1e-20);
    CHECK(r.alpha_sq == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.wronskian_drift <= 1e-9);
}

TEST_CASE("sech-squared bump is reflectionless at every probed frequency") {
    const double nu = 1.0, T = 80.0;
    const Trajectory traj = Trajectory::sech_squared_bump(1.0, nu, 0.5 * T, T);
    auto profile = [&traj](double t) { return traj.bump(t); };
    for (double ratio : {0.5, 1.0, 2.0, 5.0}) {
        const ScatteringResult r = scattering_n(profile, ratio * nu, 0.0, T);
        CHECK(r.n_exact <= 1e-8);
        CHECK(r.normalization_residual <= 1e-6);
    }
}

TEST_CASE("the Born residual of the reflectionless bump stays nonzero") {
    // first-order value 4 pi^2 / sinh^2(pi W / nu): exponentially small, not zero
    const double nu = 1.0, T = 80.0;
    const Trajectory traj = Trajectory::sech_squared_bump(1.0, nu, 0.5 * T, T, 1.0, 131073);
    for (double w0 : {1.0, 2.0}) {
        const double born =
            std::norm(traj.windowed_ft(Trajectory::Series::DeltaOmegaSq, 2.0 * w0)) /
            (4.0 * w0 * w0);
        const double closed = 4.0 * kPi * kPi / std::pow(std::sinh(kPi * w0 / nu), 2);
        CHECK(born == doctest::Approx(closed).epsilon(1e-3));
        CHECK(born > 0.0);
    }
}

TEST_CASE("scattering approaches the first-order value as the bump amplitude shrinks") {
    // gaussian frequency bump: N_Born = A^2 tau^2 2 pi exp(-4 W^2 tau^2) / (4 W^2)
    const double tau = 0.5, w0 = 1.0, T = 30.0, tc = 15.0;
    auto born = [&](double A) {
        const double ft = A * tau * std::sqrt(2.0 * kPi) * std::exp(-2.0 * w0 * w0 * tau * tau);
        return ft * ft / (4.0 * w0 * w0);
    };
    auto exact = [&](double A) {
        auto profile = [&](double t) {
            const double u = (t - tc) / tau;
            return A * std::exp(-0.5 * u * u);
        };
        return scattering_n(profile, w0, 0.0, T).n_exact;
    };
    const double err_full = std::fabs(exact(0.1) - born(0.1)) / born(0.1);
    const double err_half = std::fabs(exact(0.05) - born(0.05)) / born(0.05);
    CHECK(err_half <= 0.7 * err_full);   // error shrinks linearly with amplitude
    CHECK(err_half <= 0.05);
}

TEST_CASE("fock space enumerates states by total occupation then lexicographically") {
    const FockSpace space(build_spectrum_count(Geometry::interval(1.0), 2), 2);
    REQUIRE(space.dimension() == 6);
    CHECK(space.states()[0] == std::vector<int>{0, 0});
    CHECK(space.states()[1] == std::vector<int>{0, 1});
    CHECK(space.states()[2] == std::vector<int>{1, 0});
    CHECK(space.states()[3] == std::vector<int>{0, 2});
    CHECK(space.states()[4] == std::vector<int>{1, 1});
    CHECK(space.states()[5] == std::vector<int>{2, 0});
}

TEST_CASE("H1 acting on the vacuum populates only the 0- and 2-particle sectors") {
    const Geometry g = Geometry::interval(1.0);
    const std::size_t K = 2;
    const ModeSpectrum basis = build_spectrum_count(g, K);
    const GeometricMatrices gm = geometric_matrices(basis);
    const FockSpace space(basis, 4);
    const Trajectory traj = Trajectory::harmonic_length(1.0, 1e-2, kPi, 10.0);
    const double t = 3.7;

    std::vector<std::complex<double>> vacuum(space.dimension(), {0.0, 0.0});
    vacuum[0] = {1.0, 0.0};
    std::vector<std::complex<double>> h1psi;
    space.apply_h1(traj, t, vacuum, h1psi);

    const Matrix M = coupling_matrix(gm, traj, t);
    const Matrix S = s_matrix(M, basis.omega0);

    for (std::size_t s = 0; s < space.dimension(); ++s) {
        int total = 0;
        for (int k : space.states()[s]) total += k;
        if (total != 0 && total != 2) CHECK(std::abs(h1psi[s]) <= 1e-15);
    }
    // pair amplitude = i S_ab exp(i (W_a + W_b) t)
    const std::size_t idx_11 = 4;   // |1,1>
    const std::complex<double> expected_pair =
        std::complex<double>(0.0, 1.0) * S(0, 1) *
        std::polar(1.0, (basis.omega0[0] + basis.omega0[1]) * t);
    CHECK(std::abs(h1psi[idx_11] - expected_pair) <= 1e-12 * std::abs(expected_pair));
    // double-occupation amplitude = sqrt(2) DeltaOmega^2_a/(4 W_a) exp(2 i W_a t)
    const double dos = delta_omega_sq_at(traj, basis.basis[0], t);
    const std::complex<double> expected_20 =
        std::sqrt(2.0) * dos / (4.0 * basis.omega0[0]) * std::polar(1.0, 2.0 * basis.omega0[0] * t);
    const std::size_t idx_20 = 5;   // |2,0>
    CHECK(std::abs(h1psi[idx_20] - expected_20) <= 1e-12 * std::abs(expected_20));
}

TEST_CASE("vacuum persists in a static cavity") {
    const Geometry g = Geometry::interval(1.0);
    const Trajectory still = Trajectory::gaussian_displacement(1.0, 0.0, 0.5, 3.0, 6.0);
    const FockResult r = fock_propagate(still, g, 2, 4);
    CHECK(r.mean_occupation[0] == 0.0);
    CHECK(r.mean_occupation[1] == 0.0);
    CHECK(r.norm_drift <= 1e-12);
}

TEST_CASE("fock propagation matches perturbation theory at quadratic order") {
    const Geometry g = Geometry::interval(1.0);
    const std::size_t K = 2;
    const ModeSpectrum basis = build_spectrum_count(g, K);
    const GeometricMatrices gm = geometric_matrices(basis);
    const double tau = 2.8 / (basis.omega0[0] + basis.omega0[1]);
    const double T = 40.0 * tau;
    const std::size_t samples = 65537;

    auto deviation = [&](double amplitude) {
        const Trajectory traj =
            Trajectory::gaussian_displacement(1.0, amplitude, tau, 0.5 * T, T, samples);
        const FockResult fock = fock_propagate(traj, g, K, 6, 1e-12);
        CHECK(fock.norm_drift <= 1e-8);
        double worst = 0.0;
        for (std::size_t i = 0; i < K; ++i) {
            const double pert = n_accel(basis.basis[i], traj, gm, basis).value;
            worst = std::max(worst, std::fabs(fock.mean_occupation[i] - pert) / pert);
        }
        return worst;
    };
    const double dev_full = deviation(0.02);
    const double dev_half = deviation(0.01);
    CHECK(dev_full / dev_half >= 3.5);   // quadratic-order dominance
    CHECK(dev_full <= 0.05);
}

TEST_CASE("truncation leakage trips the guard when n_max is too small") {
    const Geometry g = Geometry::interval(1.0);
    const Trajectory traj = Trajectory::gaussian_displacement(1.0, 0.3, 0.3, 3.0, 6.0, 16385);
    CHECK_THROWS_AS(fock_propagate(traj, g, 2, 2), GuardError);
}

TEST_SUITE_END();
