#pragma once

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "dce/errors.hpp"

namespace dce {

enum class Profile { HarmonicLength, GaussianDisplacement, SechSquaredBump, Custom };

/// Boundary state at one instant: displacement eta, cavity length l, and
/// their time derivatives.
struct TrajectoryState {
    double eta = 0.0;
    double l = 0.0;
    double eta_dot = 0.0;
    double l_dot = 0.0;
};

/// Windowed Fourier transform of one sampled series on [0, T]:
///
///     F[phi](omega) = int_0^T phi(t) exp(+i omega t) dt
///
/// evaluated by composite Simpson on the sample grid.  The sign convention
/// is fixed for reproducibility; only |F|^2 enters the particle numbers.
/// Queries above the grid's resolvable frequency (fewer than 20 samples per
/// period) throw a GuardError instead of returning an aliased value.
class WindowedFT {
public:
    WindowedFT(std::vector<double> values, double dt);

    std::complex<double> operator()(double omega) const;

    double dt() const noexcept { return dt_; }
    double duration() const noexcept { return dt_ * static_cast<double>(values_.size() - 1); }
    std::size_t size() const noexcept { return values_.size(); }
    const std::vector<double>& values() const noexcept { return values_; }

    /// Largest omega the sampling guard admits: 2 pi / (20 dt).
    double max_resolved_omega() const noexcept;

private:
    std::vector<double> values_;
    double dt_;
    mutable std::mutex mutex_;
    mutable std::map<double, std::complex<double>> cache_;
};

/// Boundary motion on [0, T]: eta(t) (rigid displacement) and l(t) (cavity
/// length), both at rest outside the window.  Analytic profiles evaluate
/// exactly; Custom profiles interpolate uniform samples cubically with
/// centered-difference derivatives.
class Trajectory {
public:
    /// l(t) = l0 [1 + epsilon sin(2 omega1 t)], eta = 0.
    static Trajectory harmonic_length(double l0, double epsilon, double omega1, double T,
                                      std::size_t samples = 0);

    /// eta(t) = a exp(-(t - t_center)^2 / (2 tau^2)), l = l0.
    static Trajectory gaussian_displacement(double l0, double a, double tau, double t_center,
                                            double T, std::size_t samples = 0);

    /// Direct frequency-squared profile (boundaries at rest):
    /// DeltaOmega^2(t) = scale * 2 nu^2 / cosh^2(nu (t - t_center)), windowed
    /// to [0, T].  scale = 1 is the reflectionless shape.
    static Trajectory sech_squared_bump(double l0, double nu, double t_center, double T,
                                        double scale = 1.0, std::size_t samples = 0);

    /// Uniformly sampled (t, eta, l) columns; t must start at 0.
    static Trajectory from_samples(std::vector<double> t, std::vector<double> eta,
                                   std::vector<double> l);

    Profile profile() const noexcept { return profile_; }
    double duration() const noexcept { return T_; }
    double rest_length() const noexcept { return l0_; }
    std::size_t sample_count() const noexcept { return n_; }
    double dt() const noexcept { return dt_; }
    double max_resolved_omega() const noexcept;

    /// State at time t in [0, T]; throws ConfigError outside the window.
    TrajectoryState eval(double t) const;

    /// Second derivative of eta; analytic where possible, second differences
    /// for Custom.
    double eta_ddot(double t) const;

    bool has_frequency_bump() const noexcept { return profile_ == Profile::SechSquaredBump; }
    /// DeltaOmega^2(t) of a SechSquaredBump trajectory.
    double bump(double t) const;

    /// Scalar series available for transforming.
    enum class Series { Eta, Xi, LdotOverL, EtaDotOverL, DeltaOmegaSq };

    const WindowedFT& transform(Series series) const;
    std::complex<double> windowed_ft(Series series, double omega) const;

    /// Bound on |F_infinite - F_window| for any omega: the L1 mass of the
    /// analytic profile's tails outside [0, T].  Zero for profiles defined
    /// on the window itself (HarmonicLength, Custom).
    double window_truncation_bound(Series series) const;

    /// How well the ends of the window satisfy the rest condition
    /// eta = 0, l = l0.  A harmonic window cut mid-cycle reports ok = false
    /// with the end deviation rather than failing construction.
    struct RestReport {
        double eta_start = 0.0, eta_end = 0.0;
        double l_start_dev = 0.0, l_end_dev = 0.0;
        bool ok = true;
    };
    RestReport rest_report() const;

    /// Minimum odd sample count whose grid resolves omega under the
    /// 20-samples-per-period guard.
    static std::size_t min_samples_for(double T, double omega);

private:
    Trajectory() = default;
    void build_grid();
    std::vector<double> series_values(Series series) const;

    Profile profile_ = Profile::Custom;
    double l0_ = 1.0;
    double T_ = 0.0;
    std::size_t n_ = 0;
    double dt_ = 0.0;

    // analytic parameters (meaning depends on profile)
    double eps_ = 0.0, omega1_ = 0.0;            // HarmonicLength
    double a_ = 0.0, tau_ = 0.0, t_center_ = 0.0; // GaussianDisplacement
    double nu_ = 0.0, bump_scale_ = 1.0;          // SechSquaredBump

    // sampled values (always populated; authoritative for Custom)
    std::vector<double> eta_vals_, l_vals_;
    std::vector<double> eta_dot_vals_, l_dot_vals_, eta_ddot_vals_; // Custom only

    // copies of a Trajectory share the transform cache (all inputs immutable)
    struct TransformCache {
        std::mutex mutex;
        std::map<Series, std::shared_ptr<WindowedFT>> map;
    };
    std::shared_ptr<TransformCache> cache_ = std::make_shared<TransformCache>();
};

} // namespace dce
