#include "dce/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dce/quadrature.hpp"

namespace dce {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kSamplesPerPeriod = 20;   // aliasing guard threshold
constexpr double kRestTolFactor = 1e-12;

std::size_t make_odd(std::size_t n) { return (n % 2 == 0) ? n + 1 : n; }

} // namespace

// ---------------------------------------------------------------------------
// WindowedFT

WindowedFT::WindowedFT(std::vector<double> values, double dt)
    : values_(std::move(values)), dt_(dt) {
    if (values_.size() < 5) throw ConfigError("WindowedFT: need at least 5 samples");
    if (dt_ <= 0.0) throw ConfigError("WindowedFT: dt must be > 0");
}

double WindowedFT::max_resolved_omega() const noexcept {
    return kTwoPi / (kSamplesPerPeriod * dt_);
}

std::complex<double> WindowedFT::operator()(double omega) const {
    if (omega < 0.0) throw ConfigError("WindowedFT: omega must be >= 0 (real series)");
    if (omega > max_resolved_omega()) {
        const auto needed = static_cast<std::size_t>(
            std::ceil(kSamplesPerPeriod * duration() * omega / kTwoPi)) + 1;
        throw GuardError("sampling-guard",
                         "omega = " + std::to_string(omega) + " exceeds the grid's resolvable " +
                         std::to_string(max_resolved_omega()) + "; minimal compliant grid has " +
                         std::to_string(make_odd(needed)) + " samples");
    }
    {
        std::lock_guard lock(mutex_);
        auto it = cache_.find(omega);
        if (it != cache_.end()) return it->second;
    }
    const std::complex<double> value = fourier_simpson(values_, dt_, omega);
    std::lock_guard lock(mutex_);
    cache_.emplace(omega, value);
    return value;
}

// ---------------------------------------------------------------------------
// Trajectory factories

Trajectory Trajectory::harmonic_length(double l0, double epsilon, double omega1, double T,
                                       std::size_t samples) {
    if (l0 <= 0.0) throw ConfigError("harmonic_length: l0 must be > 0");
    if (omega1 <= 0.0) throw ConfigError("harmonic_length: omega1 must be > 0");
    if (T <= 0.0) throw ConfigError("harmonic_length: T must be > 0");
    if (std::fabs(epsilon) >= 1.0)
        throw ConfigError("harmonic_length: |epsilon| must stay < 1 to keep l > 0");
    Trajectory traj;
    traj.profile_ = Profile::HarmonicLength;
    traj.l0_ = l0;
    traj.T_ = T;
    traj.eps_ = epsilon;
    traj.omega1_ = omega1;
    if (samples == 0) {
        const double periods = T * (2.0 * omega1) / kTwoPi;
        samples = std::max<std::size_t>(4097, static_cast<std::size_t>(96.0 * periods) + 1);
    }
    traj.n_ = make_odd(samples);
    traj.build_grid();
    return traj;
}

Trajectory Trajectory::gaussian_displacement(double l0, double a, double tau, double t_center,
                                             double T, std::size_t samples) {
    if (l0 <= 0.0) throw ConfigError("gaussian_displacement: l0 must be > 0");
    if (tau <= 0.0) throw ConfigError("gaussian_displacement: tau must be > 0");
    if (T <= 0.0) throw ConfigError("gaussian_displacement: T must be > 0");
    if (t_center <= 0.0 || t_center >= T)
        throw ConfigError("gaussian_displacement: t_center must lie inside (0, T)");
    Trajectory traj;
    traj.profile_ = Profile::GaussianDisplacement;
    traj.l0_ = l0;
    traj.T_ = T;
    traj.a_ = a;
    traj.tau_ = tau;
    traj.t_center_ = t_center;
    if (samples == 0)
        samples = std::max<std::size_t>(4097, static_cast<std::size_t>(64.0 * T / tau) + 1);
    traj.n_ = make_odd(samples);
    traj.build_grid();
    return traj;
}

Trajectory Trajectory::sech_squared_bump(double l0, double nu, double t_center, double T,
                                         double scale, std::size_t samples) {
    if (l0 <= 0.0) throw ConfigError("sech_squared_bump: l0 must be > 0");
    if (nu <= 0.0) throw ConfigError("sech_squared_bump: nu must be > 0");
    if (T <= 0.0) throw ConfigError("sech_squared_bump: T must be > 0");
    if (t_center <= 0.0 || t_center >= T)
        throw ConfigError("sech_squared_bump: t_center must lie inside (0, T)");
    Trajectory traj;
    traj.profile_ = Profile::SechSquaredBump;
    traj.l0_ = l0;
    traj.T_ = T;
    traj.nu_ = nu;
    traj.t_center_ = t_center;
    traj.bump_scale_ = scale;
    if (samples == 0)
        samples = std::max<std::size_t>(4097, static_cast<std::size_t>(64.0 * T * nu) + 1);
    traj.n_ = make_odd(samples);
    traj.build_grid();
    return traj;
}

Trajectory Trajectory::from_samples(std::vector<double> t, std::vector<double> eta,
                                    std::vector<double> l) {
    const std::size_t n = t.size();
    if (n < 5) throw ConfigError("from_samples: need at least 5 rows");
    if (eta.size() != n || l.size() != n)
        throw ConfigError("from_samples: t, eta, l must have equal length");
    if (std::fabs(t.front()) > 1e-12 * std::fabs(t.back()))
        throw ConfigError("from_samples: t must start at 0 (row 1)");
    const double dt = (t.back() - t.front()) / static_cast<double>(n - 1);
    if (dt <= 0.0) throw ConfigError("from_samples: t must be strictly increasing");
    for (std::size_t i = 1; i < n; ++i) {
        const double step = t[i] - t[i - 1];
        if (step <= 0.0)
            throw ConfigError("from_samples: t not strictly increasing at row " +
                              std::to_string(i + 1));
        if (std::fabs(step - dt) > 1e-9 * dt)
            throw ConfigError("from_samples: non-uniform grid at row " + std::to_string(i + 1) +
                              " (step " + std::to_string(step) + ", expected " +
                              std::to_string(dt) + ")");
    }
    for (std::size_t i = 0; i < n; ++i)
        if (l[i] <= 0.0)
            throw ConfigError("from_samples: l <= 0 at row " + std::to_string(i + 1));

    const double l0 = l.front();
    double eta_scale = 0.0;
    for (double e : eta) eta_scale = std::max(eta_scale, std::fabs(e));
    const double eta_tol = kRestTolFactor * std::max(eta_scale, l0);
    const double l_tol = kRestTolFactor * l0;
    if (std::fabs(eta.front()) > eta_tol || std::fabs(l.front() - l0) > l_tol)
        throw ConfigError("from_samples: rest condition violated at row 1");
    if (std::fabs(eta.back()) > eta_tol || std::fabs(l.back() - l0) > l_tol)
        throw ConfigError("from_samples: rest condition violated at row " + std::to_string(n));

    Trajectory traj;
    traj.profile_ = Profile::Custom;
    traj.l0_ = l0;
    traj.T_ = t.back();
    traj.n_ = n;
    traj.dt_ = dt;
    traj.eta_vals_ = std::move(eta);
    traj.l_vals_ = std::move(l);

    // centered differences, one-sided second-order stencils at the ends
    auto differentiate = [dt, n](const std::vector<double>& y) {
        std::vector<double> d(n);
        d[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * dt);
        for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i - 1]) / (2.0 * dt);
        d[n - 1] = (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]) / (2.0 * dt);
        return d;
    };
    traj.eta_dot_vals_ = differentiate(traj.eta_vals_);
    traj.l_dot_vals_ = differentiate(traj.l_vals_);
    traj.eta_ddot_vals_ = differentiate(traj.eta_dot_vals_);
    return traj;
}

// ---------------------------------------------------------------------------
// evaluation

void Trajectory::build_grid() {
    dt_ = T_ / static_cast<double>(n_ - 1);
    eta_vals_.resize(n_);
    l_vals_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        const TrajectoryState s = eval(static_cast<double>(i) * dt_);
        eta_vals_[i] = s.eta;
        l_vals_[i] = s.l;
    }
}

TrajectoryState Trajectory::eval(double t) const {
    if (t < -1e-12 * T_ || t > T_ * (1.0 + 1e-12))
        throw ConfigError("Trajectory::eval: t = " + std::to_string(t) + " outside [0, " +
                          std::to_string(T_) + "]");
    t = std::clamp(t, 0.0, T_);

    TrajectoryState s;
    switch (profile_) {
    case Profile::HarmonicLength: {
        const double phase = 2.0 * omega1_ * t;
        s.eta = 0.0;
        s.eta_dot = 0.0;
        s.l = l0_ * (1.0 + eps_ * std::sin(phase));
        s.l_dot = 2.0 * eps_ * omega1_ * l0_ * std::cos(phase);
        return s;
    }
    case Profile::GaussianDisplacement: {
        const double u = (t - t_center_) / tau_;
        const double g = std::exp(-0.5 * u * u);
        s.eta = a_ * g;
        s.eta_dot = -a_ * u / tau_ * g;
        s.l = l0_;
        s.l_dot = 0.0;
        return s;
    }
    case Profile::SechSquaredBump:
        s.eta = 0.0;
        s.eta_dot = 0.0;
        s.l = l0_;
        s.l_dot = 0.0;
        return s;
    case Profile::Custom:
        break;
    }

    // Custom: 4-point Lagrange interpolation on the uniform grid
    const double x = t / dt_;
    const auto n = static_cast<std::ptrdiff_t>(n_);
    std::ptrdiff_t i1 = static_cast<std::ptrdiff_t>(std::floor(x));
    i1 = std::clamp<std::ptrdiff_t>(i1, 1, n - 3);
    const double u = x - static_cast<double>(i1);
    const double c0 = -u * (u - 1.0) * (u - 2.0) / 6.0;
    const double c1 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
    const double c2 = -(u + 1.0) * u * (u - 2.0) / 2.0;
    const double c3 = (u + 1.0) * u * (u - 1.0) / 6.0;
    auto interp = [&](const std::vector<double>& y) {
        return c0 * y[i1 - 1] + c1 * y[i1] + c2 * y[i1 + 1] + c3 * y[i1 + 2];
    };
    s.eta = interp(eta_vals_);
    s.l = interp(l_vals_);
    s.eta_dot = interp(eta_dot_vals_);
    s.l_dot = interp(l_dot_vals_);
    return s;
}

double Trajectory::eta_ddot(double t) const {
    if (t < -1e-12 * T_ || t > T_ * (1.0 + 1e-12))
        throw ConfigError("Trajectory::eta_ddot: t outside [0, T]");
    t = std::clamp(t, 0.0, T_);
    switch (profile_) {
    case Profile::HarmonicLength:
    case Profile::SechSquaredBump:
        return 0.0;
    case Profile::GaussianDisplacement: {
        const double u = (t - t_center_) / tau_;
        return a_ * (u * u - 1.0) / (tau_ * tau_) * std::exp(-0.5 * u * u);
    }
    case Profile::Custom:
        break;
    }
    const double x = t / dt_;
    const auto n = static_cast<std::ptrdiff_t>(n_);
    std::ptrdiff_t i1 = std::clamp<std::ptrdiff_t>(
        static_cast<std::ptrdiff_t>(std::floor(x)), 1, n - 3);
    const double u = x - static_cast<double>(i1);
    const double c0 = -u * (u - 1.0) * (u - 2.0) / 6.0;
    const double c1 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
    const double c2 = -(u + 1.0) * u * (u - 2.0) / 2.0;
    const double c3 = (u + 1.0) * u * (u - 1.0) / 6.0;
    return c0 * eta_ddot_vals_[i1 - 1] + c1 * eta_ddot_vals_[i1] + c2 * eta_ddot_vals_[i1 + 1] +
           c3 * eta_ddot_vals_[i1 + 2];
}

double Trajectory::bump(double t) const {
    if (profile_ != Profile::SechSquaredBump)
        throw ConfigError("Trajectory::bump: not a SechSquaredBump profile");
    if (t < -1e-12 * T_ || t > T_ * (1.0 + 1e-12))
        throw ConfigError("Trajectory::bump: t outside [0, T]");
    const double c = std::cosh(nu_ * (t - t_center_));
    return bump_scale_ * 2.0 * nu_ * nu_ / (c * c);
}

double Trajectory::max_resolved_omega() const noexcept {
    return kTwoPi / (kSamplesPerPeriod * dt_);
}

std::size_t Trajectory::min_samples_for(double T, double omega) {
    const auto needed =
        static_cast<std::size_t>(std::ceil(kSamplesPerPeriod * T * omega / kTwoPi)) + 1;
    return make_odd(std::max<std::size_t>(needed, 5));
}

// ---------------------------------------------------------------------------
// series + transforms

std::vector<double> Trajectory::series_values(Series series) const {
    std::vector<double> v(n_);
    switch (series) {
    case Series::Eta:
        return eta_vals_;
    case Series::Xi:
        for (std::size_t i = 0; i < n_; ++i) {
            const double r = l0_ / l_vals_[i];
            v[i] = r * r - 1.0;
        }
        return v;
    case Series::LdotOverL:
        for (std::size_t i = 0; i < n_; ++i) {
            const TrajectoryState s = eval(static_cast<double>(i) * dt_);
            v[i] = s.l_dot / s.l;
        }
        return v;
    case Series::EtaDotOverL:
        for (std::size_t i = 0; i < n_; ++i) {
            const TrajectoryState s = eval(static_cast<double>(i) * dt_);
            v[i] = s.eta_dot / s.l;
        }
        return v;
    case Series::DeltaOmegaSq:
        if (!has_frequency_bump())
            throw ConfigError("Trajectory: DeltaOmegaSq series exists only for bump profiles");
        for (std::size_t i = 0; i < n_; ++i) v[i] = bump(static_cast<double>(i) * dt_);
        return v;
    }
    throw ConfigError("Trajectory: unknown series");
}

const WindowedFT& Trajectory::transform(Series series) const {
    {
        std::lock_guard lock(cache_->mutex);
        auto it = cache_->map.find(series);
        if (it != cache_->map.end()) return *it->second;
    }
    auto ft = std::make_shared<WindowedFT>(series_values(series), dt_);
    std::lock_guard lock(cache_->mutex);
    auto [it, inserted] = cache_->map.emplace(series, std::move(ft));
    return *it->second;
}

std::complex<double> Trajectory::windowed_ft(Series series, double omega) const {
    return transform(series)(omega);
}

double Trajectory::window_truncation_bound(Series series) const {
    const double d0 = t_center_;
    const double d1 = T_ - t_center_;
    switch (profile_) {
    case Profile::GaussianDisplacement: {
        if (series == Series::Eta) {
            // int_{d}^{inf} a exp(-u^2/2tau^2) du per side
            const double c = std::fabs(a_) * tau_ * std::sqrt(std::numbers::pi / 2.0);
            return c * (std::erfc(d0 / (std::sqrt(2.0) * tau_)) +
                        std::erfc(d1 / (std::sqrt(2.0) * tau_)));
        }
        if (series == Series::EtaDotOverL) {
            // int_{d}^{inf} a u/tau^2 exp(-u^2/2tau^2) du = a exp(-d^2/2tau^2)
            return std::fabs(a_) / l0_ *
                   (std::exp(-0.5 * d0 * d0 / (tau_ * tau_)) +
                    std::exp(-0.5 * d1 * d1 / (tau_ * tau_)));
        }
        return 0.0;
    }
    case Profile::SechSquaredBump:
        if (series == Series::DeltaOmegaSq)
            // int_{d}^{inf} 2 nu^2 sech^2(nu u) du = 2 nu (1 - tanh(nu d))
            return std::fabs(bump_scale_) * 2.0 * nu_ *
                   ((1.0 - std::tanh(nu_ * d0)) + (1.0 - std::tanh(nu_ * d1)));
        return 0.0;
    case Profile::HarmonicLength:
    case Profile::Custom:
        return 0.0;   // the window is the definition
    }
    return 0.0;
}

Trajectory::RestReport Trajectory::rest_report() const {
    RestReport r;
    const TrajectoryState s0 = eval(0.0);
    const TrajectoryState s1 = eval(T_);
    r.eta_start = std::fabs(s0.eta);
    r.eta_end = std::fabs(s1.eta);
    r.l_start_dev = std::fabs(s0.l - l0_);
    r.l_end_dev = std::fabs(s1.l - l0_);
    double eta_scale = 0.0;
    for (double e : eta_vals_) eta_scale = std::max(eta_scale, std::fabs(e));
    const double eta_tol = kRestTolFactor * std::max(eta_scale, l0_);
    const double l_tol = kRestTolFactor * l0_;
    r.ok = r.eta_start <= eta_tol && r.eta_end <= eta_tol && r.l_start_dev <= l_tol &&
           r.l_end_dev <= l_tol;
    return r;
}

} // namespace dce
