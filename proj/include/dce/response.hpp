#pragma once

#include <complex>
#include <string>
#include <vector>

#include "dce/coupling.hpp"
#include "dce/geometry.hpp"
#include "dce/trajectory.hpp"

namespace dce {

/// Per-mode creation record.  N_total = N_squeeze + N_accel exactly; the two
/// contributions decouple at this order.
struct ModeCreation {
    ModeIndex mode;
    double omega0 = 0.0;
    double n_squeeze = 0.0;
    double n_accel = 0.0;
    double n_total = 0.0;
    double accel_tail = 0.0;   // last-octave share of the beta sum
};

struct CreationSpectrum {
    std::vector<ModeCreation> modes;
    double omega_max = 0.0;        // reporting ceiling
    std::size_t sum_truncation = 0; // size K of the beta-sum basis
    double omega_cut = 0.0;        // exponential cutoff; 0 = raw sum
    double total_squeeze = 0.0;    // cutoff-weighted mode sums
    double total_accel = 0.0;
    double total = 0.0;
    double accel_tail = 0.0;
    std::vector<std::string> warnings;
};

/// Mode frequency-squared shift at time t.  Length profiles shift only the
/// longitudinal part; bump profiles carry DeltaOmega^2 directly.
double delta_omega_sq_at(const Trajectory& traj, const ModeIndex& mode, double t);

/// Windowed transform of the shift, exact through the factorization
/// DeltaOmega^2_n(t) = (n pi / l0)^2 xi(t).
std::complex<double> delta_omega_sq_ft(const Trajectory& traj, const ModeIndex& mode,
                                       double omega);

/// Squeezing contribution
///     N^S = |F[DeltaOmega^2_a](2 W_a)|^2 / (4 W_a^2) .
double n_squeeze(const ModeIndex& mode, const Trajectory& traj, const ModeSpectrum& spectrum);

struct AccelResult {
    double value = 0.0;
    double tail = 0.0;   // contribution of the last frequency octave
};

/// Acceleration contribution
///     N^A = sum_b |F[S_ab](W_a + W_b)|^2
/// over the truncated basis, with a last-octave tail estimate.
AccelResult n_accel(const ModeIndex& mode, const Trajectory& traj, const GeometricMatrices& gm,
                    const ModeSpectrum& sum_basis);

/// Full spectrum: every mode below omega_max, beta sums truncated at K >= the
/// reported basis size, totals optionally weighted by exp(-W/omega_cut).
CreationSpectrum spectrum_full(const Trajectory& traj, const Geometry& geometry,
                               double omega_max, std::size_t K, double omega_cut = 0.0,
                               unsigned threads = 1);

/// Single-mirror spectral density
///     N(W_a) = (1/pi^2) W_a int_0^inf dW_b W_b |eta~(W_a + W_b)|^2 ,
/// the W_b integral truncated at omega_b_max with a 0.1% tail guard.
double single_mirror_density(const Trajectory& traj, double omega_a, double omega_b_max,
                             std::size_t n_b = 1025);

struct RadiationResult {
    std::vector<double> omega;     // W_a grid
    std::vector<double> density;   // N(W_a)
    double energy = 0.0;           // int W_a N(W_a) dW_a over the grid
    double tail_fraction = 0.0;    // last-octave share of the energy integral
};

/// Density on a uniform W_a grid plus the frequency-integrated energy.
RadiationResult radiation_spectrum(const Trajectory& traj, double omega_a_max,
                                   std::size_t n_omega, double omega_b_max);

/// Time-domain radiated energy (one-sided):  E = (1/12 pi) int eta_ddot^2 dt.
/// Custom profiles get a derivative-noise warning through `warning`.
double radiated_energy(const Trajectory& traj, std::string* warning = nullptr);

/// Both-sides total via the spectral route:
///     E = (1/6 pi^2) int_0^omega_max w^4 |eta~(w)|^2 dw ,
/// equal to (1/6 pi) int eta_ddot^2 dt by Parseval.
double ford_vilenkin_energy(const Trajectory& traj, double omega_max, std::size_t n_points = 2049);

/// Closed-form resonant reference N1 = (epsilon omega1 T)^2 / 4 with its
/// validity flags; a reference value, not a production path.
struct ResonantN1 {
    double value = 0.0;
    bool small_amplitude_ok = true;  // epsilon omega1 T << 1
    bool long_window_ok = true;      // omega1 T >> 1
};
ResonantN1 resonant_n1(double epsilon, double omega1, double T);

} // namespace dce
