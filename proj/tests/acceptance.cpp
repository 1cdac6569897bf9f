// Acceptance suite: each criterion prints one PASS/FAIL line with the
// observed value, the pinned tolerance, and the wall time.  Exit status is
// the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "dce/oracle.hpp"
#include "dce/response.hpp"
#include "dce/scenario.hpp"
#include "dce/statics.hpp"
#include "overlap_oracle.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double rel_err(double got, double ref) { return std::fabs(got - ref) / std::fabs(ref); }

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// 1. resonant cavity: spectral N1 within 5% of (eps w1 T)^2 / 4 = 2.5e-3
Outcome resonant_cavity() {
    const double l0 = 1.0, eps = 1e-3, omega1 = kPi, T = 100.0 / omega1;
    const dce::Geometry g = dce::Geometry::interval(l0);
    const dce::Trajectory traj = dce::Trajectory::harmonic_length(l0, eps, omega1, T, 16385);
    const dce::ModeSpectrum basis = dce::build_spectrum(g, 1.5 * kPi);
    const double n1 = dce::n_squeeze(dce::ModeIndex{1, 0, 0}, traj, basis);
    const double ref = dce::resonant_n1(eps, omega1, T).value;
    const double err = rel_err(n1, ref);
    return {err <= 0.05,
            "N1 = " + fmt(n1) + ", reference " + fmt(ref) + ", deviation " + fmt(100.0 * err) +
                "% (limit 5%)"};
}

// 2. single-mirror energy closure within 1% of a^2/(16 sqrt(pi) tau^3)
Outcome energy_closure() {
    const double a = 1e-3, tau = 1.0, T = 20.0;
    const dce::Trajectory traj =
        dce::Trajectory::gaussian_displacement(1.0, a, tau, 0.5 * T, T, 32769);
    const dce::RadiationResult rad = dce::radiation_spectrum(traj, 12.0, 481, 12.0);
    const double ref = a * a / (16.0 * std::sqrt(kPi) * tau * tau * tau);
    const double err = rel_err(rad.energy, ref);
    return {err <= 0.01,
            "integral W N(W) dW = " + fmt(rad.energy) + ", (1/12pi) int eta_ddot^2 = " + fmt(ref) +
                ", deviation " + fmt(100.0 * err) + "% (limit 1%)"};
}

// 3. Ford-Vilenkin factor 2 within 1% on the same gaussian scenario
Outcome ford_vilenkin_factor() {
    const double a = 1e-3, tau = 1.0, T = 20.0;
    const dce::Trajectory traj =
        dce::Trajectory::gaussian_displacement(1.0, a, tau, 0.5 * T, T, 32769);
    const double one_side = dce::radiated_energy(traj);
    const double both_sides = dce::ford_vilenkin_energy(traj, 16.0, 4097);
    const double err = rel_err(2.0 * one_side, both_sides);
    return {err <= 0.01,
            "2 x one-side = " + fmt(2.0 * one_side) + ", (6pi)^-1 int V_dot^2 = " +
                fmt(both_sides) + ", deviation " + fmt(100.0 * err) + "% (limit 1%)"};
}

// 4. spectral vs time-domain double integral, K = 10, relative 1e-6
Outcome oracle_equivalence() {
    const dce::Geometry g = dce::Geometry::interval(1.0);
    const std::size_t K = 10;
    const double a = 1e-3, tau = 0.04, T = 4.0;
    const dce::Trajectory traj =
        dce::Trajectory::gaussian_displacement(1.0, a, tau, 0.5 * T, T, 131073);
    const dce::ModeSpectrum basis = dce::build_spectrum_count(g, K);
    const dce::GeometricMatrices gm = dce::geometric_matrices(basis);

    double worst = 0.0;
    for (std::size_t i = 0; i < K; ++i) {
        const double spectral = dce::n_squeeze(basis.basis[i], traj, basis) +
                                dce::n_accel(basis.basis[i], traj, gm, basis).value;
        const dce::TimeDomainResult td = dce::n_timedomain(basis.basis[i], traj, g, K, 4);
        worst = std::max(worst, rel_err(spectral, td.n_squeeze + td.n_accel));
    }
    return {worst <= 1e-6, "max per-mode relative deviation " + fmt(worst) +
                               " over 10 modes (limit 1e-6), rigid translation"};
}

// 5. reflectionless sech^2: exact N <= 1e-8, Born residual recorded
Outcome reflectionless() {
    const double nu = 1.0, T = 80.0;
    const dce::Trajectory traj = dce::Trajectory::sech_squared_bump(1.0, nu, 0.5 * T, T);
    auto profile = [&traj](double t) { return traj.bump(t); };
    double worst = 0.0;
    std::string born;
    for (double ratio : {0.5, 1.0, 2.0, 5.0}) {
        const double w0 = ratio * nu;
        const dce::ScatteringResult sc = dce::scattering_n(profile, w0, 0.0, T);
        worst = std::max(worst, sc.n_exact);
        const double residual =
            std::norm(traj.windowed_ft(dce::Trajectory::Series::DeltaOmegaSq, 2.0 * w0)) /
            (4.0 * w0 * w0);
        born += (born.empty() ? "" : " ") + fmt(residual);
        if (sc.normalization_residual > 1e-6) return {false, "Bogoliubov normalization lost"};
    }
    return {worst <= 1e-8, "max exact N = " + fmt(worst) +
                               " (limit 1e-8); Born-level residuals at {0.5,1,2,5}nu: " + born};
}

// 6. Fock propagation: deviation from perturbation theory shrinks >= 4x
//    when the amplitude halves
Outcome fock_crosscheck() {
    const dce::Geometry g = dce::Geometry::interval(1.0);
    const std::size_t K = 2;
    const dce::ModeSpectrum basis = dce::build_spectrum_count(g, K);
    const dce::GeometricMatrices gm = dce::geometric_matrices(basis);
    const double tau = 2.8 / (basis.omega0[0] + basis.omega0[1]);
    const double T = 40.0 * tau;

    double norm_drift = 0.0;
    auto deviation = [&](double amplitude) {
        const dce::Trajectory traj =
            dce::Trajectory::gaussian_displacement(1.0, amplitude, tau, 0.5 * T, T, 65537);
        const dce::FockResult fock = dce::fock_propagate(traj, g, K, 6, 1e-12);
        norm_drift = std::max(norm_drift, fock.norm_drift);
        double worst = 0.0;
        for (std::size_t i = 0; i < K; ++i) {
            const double pert = dce::n_accel(basis.basis[i], traj, gm, basis).value;
            worst = std::max(worst, std::fabs(fock.mean_occupation[i] - pert) / pert);
        }
        return worst;
    };
    const double dev_full = deviation(0.08);
    const double dev_half = deviation(0.04);
    const double ratio = dev_full / dev_half;
    return {ratio >= 4.0 && norm_drift <= 1e-8,
            "relative deviation " + fmt(dev_full) + " -> " + fmt(dev_half) +
                " under amplitude halving: factor " + fmt(ratio) +
                " (limit 4); norm drift " + fmt(norm_drift)};
}

// 7. closed-form coupling matrix vs direct overlap quadrature, n, m <= 8
Outcome coupling_oracle() {
    const dce::ModeSpectrum basis = dce::build_spectrum_count(dce::Geometry::interval(1.0), 8);
    const dce::GeometricMatrices gm = dce::geometric_matrices(basis);
    const double l = 1.13, l_dot = 0.067, eta_dot = 0.029;

    double worst_rel = 0.0, worst_asym = 0.0, scale = 0.0;
    dce::Matrix quad(8, 8);
    for (int n = 1; n <= 8; ++n)
        for (int m = 1; m <= 8; ++m) {
            quad(n - 1, m - 1) = dce::testing::overlap_m_entry(n, m, l, l_dot, eta_dot);
            scale = std::max(scale, std::fabs(quad(n - 1, m - 1)));
        }
    for (int n = 1; n <= 8; ++n)
        for (int m = 1; m <= 8; ++m) {
            const double closed =
                l_dot / l * gm.G(n - 1, m - 1) + eta_dot / l * gm.A(n - 1, m - 1);
            if (n != m)
                worst_rel = std::max(worst_rel,
                                     std::fabs(quad(n - 1, m - 1) - closed) / std::fabs(closed));
            worst_asym =
                std::max(worst_asym, std::fabs(quad(n - 1, m - 1) + quad(m - 1, n - 1)) / scale);
        }
    return {worst_rel <= 1e-8 && worst_asym <= 1e-12,
            "max relative gap " + fmt(worst_rel) + " (limit 1e-8), antisymmetry residual " +
                fmt(worst_asym) + " (limit 1e-12)"};
}

// 8. statics: finite part, force magnitude, parabolic growth exponent
Outcome statics_sector() {
    const double lambda = 400.0 * kPi;
    const dce::RegularizedEnergy e = dce::zero_point_energy(1.0, lambda);
    const double err_finite = rel_err(e.finite_part, -kPi / 24.0);
    const double force = dce::casimir_force(1.0, lambda);
    const double err_force = rel_err(std::fabs(force), kPi / 24.0);
    const dce::ParabolicStrength p = dce::parabolic_strength(1.0, lambda);
    const double err_exp = std::fabs(p.growth_exponent - 2.0);
    const bool pass = err_finite <= 0.01 && err_force <= 0.01 && err_exp <= 0.1 && force < 0.0;
    return {pass, "finite part " + fmt(e.finite_part) + " vs -pi/24 (" + fmt(100.0 * err_finite) +
                      "%), force " + fmt(force) + " vs -pi/24 (" + fmt(100.0 * err_force) +
                      "%), parabolic exponent " + fmt(p.growth_exponent) + " (2 +- 0.1)"};
}

// 9. property suite through the verify driver with its exit-code contract
Outcome property_suite() {
    dce::ScenarioConfig cfg;
    cfg.out_dir =
        (std::filesystem::temp_directory_path() / "dce_acceptance_verify").string();
    std::ostringstream log;
    const int rc = dce::run_verify(cfg, log);
    std::string lines = log.str();
    for (char& c : lines)
        if (c == '\n') c = ';';
    return {rc == 0, "verify exit code " + std::to_string(rc) + ": " + lines};
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double time_limit_s;   // 0 = no pinned runtime
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "resonant-cavity-N1", resonant_cavity, 10.0},
        {2, "single-mirror-energy-closure", energy_closure, 30.0},
        {3, "ford-vilenkin-factor-2", ford_vilenkin_factor, 0.0},
        {4, "spectral-vs-timedomain", oracle_equivalence, 60.0},
        {5, "reflectionless-scattering", reflectionless, 0.0},
        {6, "fock-propagation", fock_crosscheck, 300.0},
        {7, "coupling-matrix-oracle", coupling_oracle, 0.0},
        {8, "statics-casimir", statics_sector, 0.0},
        {9, "property-suite-verify", property_suite, 0.0},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool pass = out.pass;
        std::string timing = fmt(seconds) + " s";
        if (c.time_limit_s > 0.0) {
            timing += " (limit " + fmt(c.time_limit_s) + " s)";
            pass = pass && seconds < c.time_limit_s;
        }
        if (!pass) ++failures;
        std::printf("[%d] %s %-28s %s  [%s]\n", c.id, pass ? "PASS" : "FAIL", c.name,
                    out.detail.c_str(), timing.c_str());
        std::fflush(stdout);
    }
    if (failures > 0) std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures;
}
