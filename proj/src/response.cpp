#include "dce/response.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

#include "dce/quadrature.hpp"

namespace dce {

namespace {

constexpr double kPi = std::numbers::pi;

// deterministic parallel map: slot i always receives f(i)
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            f(i);
        }
    };
    std::vector<std::thread> pool;
    const unsigned use = std::min<unsigned>(threads, static_cast<unsigned>(n));
    pool.reserve(use);
    for (unsigned k = 0; k < use; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

} // namespace

double delta_omega_sq_at(const Trajectory& traj, const ModeIndex& mode, double t) {
    if (traj.has_frequency_bump()) return traj.bump(t);
    const TrajectoryState s = traj.eval(t);
    return delta_omega_sq(mode.n, s.l, traj.rest_length());
}

std::complex<double> delta_omega_sq_ft(const Trajectory& traj, const ModeIndex& mode,
                                       double omega) {
    if (traj.has_frequency_bump()) return traj.windowed_ft(Trajectory::Series::DeltaOmegaSq, omega);
    const double w_par = omega_parallel(mode.n, traj.rest_length());
    return w_par * w_par * traj.windowed_ft(Trajectory::Series::Xi, omega);
}

double n_squeeze(const ModeIndex& mode, const Trajectory& traj, const ModeSpectrum& spectrum) {
    const double w0 = spectrum.omega0[spectrum.index_of(mode)];
    const std::complex<double> z = delta_omega_sq_ft(traj, mode, 2.0 * w0);
    return std::norm(z) / (4.0 * w0 * w0);
}

AccelResult n_accel(const ModeIndex& mode, const Trajectory& traj, const GeometricMatrices& gm,
                    const ModeSpectrum& sum_basis) {
    const std::size_t K = sum_basis.size();
    if (gm.A.rows() != K) throw ConfigError("n_accel: matrix/basis size mismatch");
    const std::size_t i = sum_basis.index_of(mode);
    const double w_i = sum_basis.omega0[i];
    const double w_top = sum_basis.omega0[K - 1];

    AccelResult r;
    for (std::size_t j = 0; j < K; ++j) {
        if (j == i) continue;
        const double a_ij = gm.A(i, j);
        const double g_ij = gm.G(i, j);
        if (a_ij == 0.0 && g_ij == 0.0) continue;   // different transverse sector
        const double w_j = sum_basis.omega0[j];
        const double omega = w_i + w_j;
        const std::complex<double> s_ft =
            0.5 * s_weight(w_i, w_j) *
            (g_ij * traj.windowed_ft(Trajectory::Series::LdotOverL, omega) +
             a_ij * traj.windowed_ft(Trajectory::Series::EtaDotOverL, omega));
        const double term = std::norm(s_ft);
        r.value += term;
        if (w_j > 0.5 * w_top) r.tail += term;
    }
    return r;
}

CreationSpectrum spectrum_full(const Trajectory& traj, const Geometry& geometry,
                               double omega_max, std::size_t K, double omega_cut,
                               unsigned threads) {
    if (std::fabs(geometry.l0 - traj.rest_length()) > 1e-12 * geometry.l0)
        throw ConfigError("spectrum_full: geometry l0 and trajectory rest length differ");

    const ModeSpectrum report = build_spectrum(geometry, omega_max);
    if (K < report.size())
        throw ConfigError("spectrum_full: K = " + std::to_string(K) +
                          " smaller than the reported basis (" + std::to_string(report.size()) +
                          " modes below omega_max)");
    const ModeSpectrum sum_basis = build_spectrum_count(geometry, K);
    const GeometricMatrices gm = geometric_matrices(sum_basis);

    CreationSpectrum out;
    out.omega_max = omega_max;
    out.sum_truncation = K;
    out.omega_cut = omega_cut;
    out.modes.resize(report.size());

    parallel_for(report.size(), threads, [&](std::size_t i) {
        ModeCreation mc;
        mc.mode = report.basis[i];
        mc.omega0 = report.omega0[i];
        mc.n_squeeze = n_squeeze(mc.mode, traj, report);
        const AccelResult ar = n_accel(mc.mode, traj, gm, sum_basis);
        mc.n_accel = ar.value;
        mc.accel_tail = ar.tail;
        mc.n_total = mc.n_squeeze + mc.n_accel;
        out.modes[i] = mc;
    });

    for (const ModeCreation& mc : out.modes) {
        const double weight = omega_cut > 0.0 ? std::exp(-mc.omega0 / omega_cut) : 1.0;
        out.total_squeeze += weight * mc.n_squeeze;
        out.total_accel += weight * mc.n_accel;
        out.accel_tail += weight * mc.accel_tail;
        if (mc.accel_tail > 0.01 * mc.n_accel && mc.n_accel > 0.0)
            out.warnings.push_back("accel-tail: mode " + mc.mode.label() +
                                   " last-octave share exceeds 1% of N^A; increase K");
    }
    out.total = out.total_squeeze + out.total_accel;

    const Trajectory::RestReport rest = traj.rest_report();
    if (!rest.ok)
        out.warnings.push_back("rest-condition: window ends away from rest (eta end " +
                               std::to_string(rest.eta_end) + ", l end deviation " +
                               std::to_string(rest.l_end_dev) + ")");
    return out;
}

namespace {

// Simpson integral plus the share contributed by the last octave of the grid
struct TailedIntegral {
    double value;
    double tail_fraction;
};

TailedIntegral simpson_with_tail(const std::vector<double>& y, double h) {
    TailedIntegral r{simpson(y, h), 0.0};
    const std::size_t half = y.size() / 2;
    std::vector<double> tail_part(y.begin() + static_cast<std::ptrdiff_t>(half), y.end());
    if (tail_part.size() >= 5 && r.value != 0.0)
        r.tail_fraction = std::fabs(simpson(tail_part, h) / r.value);
    return r;
}

} // namespace

namespace {

double density_with_tail(const Trajectory& traj, double omega_a, double omega_b_max,
                         std::size_t n_b, double* tail_fraction) {
    if (omega_a < 0.0) throw ConfigError("single_mirror_density: omega_a must be >= 0");
    if (omega_b_max <= 0.0) throw ConfigError("single_mirror_density: omega_b_max must be > 0");
    if (n_b < 9) throw ConfigError("single_mirror_density: n_b too small");
    if (n_b % 2 == 0) ++n_b;
    const double h = omega_b_max / static_cast<double>(n_b - 1);
    const WindowedFT& eta_ft = traj.transform(Trajectory::Series::Eta);
    std::vector<double> integrand(n_b);
    for (std::size_t k = 0; k < n_b; ++k) {
        const double w_b = static_cast<double>(k) * h;
        integrand[k] = w_b * std::norm(eta_ft(omega_a + w_b));
    }
    const TailedIntegral ti = simpson_with_tail(integrand, h);
    if (tail_fraction != nullptr) *tail_fraction = ti.tail_fraction;
    return omega_a * ti.value / (kPi * kPi);
}

} // namespace

double single_mirror_density(const Trajectory& traj, double omega_a, double omega_b_max,
                             std::size_t n_b) {
    double tail_fraction = 0.0;
    const double density = density_with_tail(traj, omega_a, omega_b_max, n_b, &tail_fraction);
    if (density > 0.0 && tail_fraction > 1e-3)
        throw GuardError("tail-bound", "omega_b_max = " + std::to_string(omega_b_max) +
                                           " leaves a last-octave share of " +
                                           std::to_string(tail_fraction) +
                                           " (> 0.1%) in the W_b integral");
    return density;
}

RadiationResult radiation_spectrum(const Trajectory& traj, double omega_a_max,
                                   std::size_t n_omega, double omega_b_max) {
    if (omega_a_max <= 0.0) throw ConfigError("radiation_spectrum: omega_a_max must be > 0");
    if (n_omega < 9) throw ConfigError("radiation_spectrum: n_omega too small");
    if (n_omega % 2 == 0) ++n_omega;
    const double h = omega_a_max / static_cast<double>(n_omega - 1);
    // put the W_b grid on the same step so every eta~(W_a + W_b) query lands
    // on a cached frequency
    const auto n_b = static_cast<std::size_t>(std::llround(omega_b_max / h)) + 1;

    RadiationResult out;
    out.omega.resize(n_omega);
    out.density.resize(n_omega);
    std::vector<double> energy_integrand(n_omega);
    for (std::size_t k = 0; k < n_omega; ++k) {
        const double w_a = static_cast<double>(k) * h;
        out.omega[k] = w_a;
        // per-density tails are judged on the energy integral below: a
        // density at roundoff level has a meaningless tail fraction
        out.density[k] = density_with_tail(traj, w_a, omega_b_max, n_b, nullptr);
        energy_integrand[k] = w_a * out.density[k];
    }
    const TailedIntegral ti = simpson_with_tail(energy_integrand, h);
    out.energy = ti.value;
    out.tail_fraction = ti.tail_fraction;
    if (out.energy > 0.0 && out.tail_fraction > 1e-3)
        throw GuardError("tail-bound",
                         "omega_a_max = " + std::to_string(omega_a_max) +
                             " leaves a last-octave share of " + std::to_string(out.tail_fraction) +
                             " (> 0.1%) in the energy integral");
    return out;
}

double radiated_energy(const Trajectory& traj, std::string* warning) {
    const std::size_t n = traj.sample_count();
    const double dt = traj.dt();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double dd = traj.eta_ddot(static_cast<double>(i) * dt);
        y[i] = dd * dd;
    }
    const double full = simpson(y, dt);
    if (warning != nullptr && traj.profile() == Profile::Custom) {
        // second differences amplify sample noise; flag when halving the grid
        // moves the integral
        std::vector<double> coarse;
        for (std::size_t i = 0; i < n; i += 2) coarse.push_back(y[i]);
        if (coarse.size() >= 5) {
            const double half = simpson(coarse, 2.0 * dt);
            if (full != 0.0 && std::fabs(half - full) > 1e-3 * std::fabs(full))
                *warning = "derivative-noise: eta_ddot from sampled data shifts by " +
                           std::to_string(std::fabs(half - full) / std::fabs(full)) +
                           " under grid halving";
        }
    }
    return full / (12.0 * kPi);
}

double ford_vilenkin_energy(const Trajectory& traj, double omega_max, std::size_t n_points) {
    if (omega_max <= 0.0) throw ConfigError("ford_vilenkin_energy: omega_max must be > 0");
    if (n_points < 9) throw ConfigError("ford_vilenkin_energy: n_points too small");
    if (n_points % 2 == 0) ++n_points;
    const double h = omega_max / static_cast<double>(n_points - 1);
    const WindowedFT& eta_ft = traj.transform(Trajectory::Series::Eta);
    std::vector<double> y(n_points);
    for (std::size_t k = 0; k < n_points; ++k) {
        const double w = static_cast<double>(k) * h;
        y[k] = w * w * w * w * std::norm(eta_ft(w));
    }
    const TailedIntegral ti = simpson_with_tail(y, h);
    if (ti.value > 0.0 && ti.tail_fraction > 1e-3)
        throw GuardError("tail-bound", "omega_max = " + std::to_string(omega_max) +
                                           " leaves a last-octave share of " +
                                           std::to_string(ti.tail_fraction) +
                                           " in the Parseval integral");
    return ti.value / (6.0 * kPi * kPi);
}

ResonantN1 resonant_n1(double epsilon, double omega1, double T) {
    if (omega1 <= 0.0 || T <= 0.0) throw ConfigError("resonant_n1: omega1, T must be > 0");
    ResonantN1 r;
    const double x = epsilon * omega1 * T;
    r.value = 0.25 * x * x;
    r.small_amplitude_ok = std::fabs(x) <= 0.3;
    r.long_window_ok = omega1 * T >= 10.0;
    return r;
}

} // namespace dce
