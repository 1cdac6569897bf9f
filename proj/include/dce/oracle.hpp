#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "dce/coupling.hpp"
#include "dce/geometry.hpp"
#include "dce/trajectory.hpp"

namespace dce {

/// Direct 2D quadrature of the double-integral form of the particle number:
/// both kernels integrated over [0, T] x [0, T] with composite Gauss-Legendre
/// panels.  Independent of the spectral path: different grid, different rule,
/// couplings evaluated pointwise from the trajectory.
struct TimeDomainResult {
    double n_squeeze = 0.0;
    double n_accel = 0.0;
    double imag_residual = 0.0;   // |Im| / |value| of the Hermitian kernels
};

TimeDomainResult n_timedomain(const ModeIndex& mode, const Trajectory& traj,
                              const Geometry& geometry, std::size_t K,
                              std::size_t panels_per_period = 3);

/// Bogoliubov coefficients of the decoupled oscillator
///     x'' + (W0^2 + DeltaOmega^2(t)) x = 0
/// from adaptive integration across the window: x = exp(-i W0 t) before,
/// x -> alpha exp(-i W0 t) + beta exp(+i W0 t) after.  N_exact = |beta|^2.
struct ScatteringResult {
    double alpha_sq = 0.0;
    double beta_sq = 0.0;
    double n_exact = 0.0;            // = beta_sq
    double wronskian_drift = 0.0;    // relative drift of the conserved Wronskian
    double normalization_residual = 0.0; // | |alpha|^2 - |beta|^2 - 1 |
};

ScatteringResult scattering_n(const std::function<double(double)>& delta_omega_sq_profile,
                              double omega0, double t0, double t1, double rtol = 1e-12);

/// Convenience overload: profile and window taken from the trajectory.
ScatteringResult scattering_n(const Trajectory& traj, const ModeIndex& mode,
                              const ModeSpectrum& spectrum, double rtol = 1e-12);

/// Truncated Fock space over K modes with total occupation <= n_max,
/// states ordered by total occupation then lexicographically.
class FockSpace {
public:
    FockSpace(ModeSpectrum spectrum, int n_max);

    std::size_t dimension() const noexcept { return states_.size(); }
    int n_max() const noexcept { return n_max_; }
    const ModeSpectrum& spectrum() const noexcept { return spectrum_; }
    const std::vector<std::vector<int>>& states() const noexcept { return states_; }

    /// out = H1(t) psi in the interaction picture,
    /// H1 = (1/2) DeltaOmega^2_a q_a^2 + q_a M_ab p_b.
    void apply_h1(const Trajectory& traj, double t, const std::vector<std::complex<double>>& psi,
                  std::vector<std::complex<double>>& out) const;

    /// <N_a> per mode for a state vector.
    std::vector<double> mean_occupation(const std::vector<std::complex<double>>& psi) const;

    /// population of the outermost occupation shell (total == n_max)
    double boundary_population(const std::vector<std::complex<double>>& psi) const;

private:
    struct Triplet {
        std::size_t to, from;
        double value;
    };
    using Op = std::vector<Triplet>;

    std::size_t pair_slot(std::size_t a, std::size_t b) const;

    ModeSpectrum spectrum_;
    GeometricMatrices gm_;
    int n_max_ = 0;
    std::vector<std::vector<int>> states_;
    std::vector<Op> annihilate_sq_;   // a_a a_a          per mode
    std::vector<Op> create_sq_;       // a+_a a+_a        per mode
    std::vector<Op> pair_annihilate_; // a_a a_b          per unordered pair
    std::vector<Op> pair_create_;     // a+_a a+_b        per unordered pair
    std::vector<Op> hop_;             // a+_a a_b         per ordered pair
};

/// Propagate the vacuum through the window with d|psi>/dt = -i H1(t) |psi>
/// and read off <N_a> at T.
struct FockResult {
    std::vector<double> mean_occupation;
    double norm_drift = 0.0;
    double boundary_population = 0.0;
    std::size_t dimension = 0;
};

FockResult fock_propagate(const Trajectory& traj, const Geometry& geometry, std::size_t K,
                          int n_max, double rtol = 1e-11);

} // namespace dce
