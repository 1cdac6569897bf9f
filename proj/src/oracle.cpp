#include "dce/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>

#include <boost/numeric/odeint.hpp>

#include "dce/quadrature.hpp"
#include "dce/response.hpp"

namespace dce {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t panels_for(double T, double omega, std::size_t per_period) {
    const double periods = T * omega / kTwoPi;
    return std::max<std::size_t>(16, static_cast<std::size_t>(std::ceil(periods)) * per_period);
}

// 2D Gauss-Legendre quadrature of f(t) f(t') exp(i omega (t' - t)) over the
// window, evaluated as a literal double sum
std::complex<double> double_integral(const std::vector<double>& f, const PanelRule& rule,
                                     double omega) {
    const std::size_t m = rule.nodes.size();
    std::vector<std::complex<double>> with_phase(m), with_conj_phase(m);
    for (std::size_t k = 0; k < m; ++k) {
        const std::complex<double> phase = std::polar(1.0, omega * rule.nodes[k]);
        with_phase[k] = rule.weights[k] * f[k] * phase;          // t' factor
        with_conj_phase[k] = rule.weights[k] * f[k] * std::conj(phase); // t factor
    }
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < m; ++j) {
        std::complex<double> row{0.0, 0.0};
        for (std::size_t k = 0; k < m; ++k) row += with_conj_phase[j] * with_phase[k];
        acc += row;
    }
    return acc;
}

} // namespace

TimeDomainResult n_timedomain(const ModeIndex& mode, const Trajectory& traj,
                              const Geometry& geometry, std::size_t K,
                              std::size_t panels_per_period) {
    if (panels_per_period < 2)
        throw ConfigError("n_timedomain: need at least 2 panels per period");
    const ModeSpectrum basis = build_spectrum_count(geometry, K);
    const GeometricMatrices gm = geometric_matrices(basis);
    const std::size_t i = basis.index_of(mode);
    const double w_i = basis.omega0[i];
    const double T = traj.duration();

    TimeDomainResult result;

    // squeezing kernel at 2 W_a
    {
        const double omega = 2.0 * w_i;
        const PanelRule rule = gl_panels(0.0, T, panels_for(T, omega, panels_per_period));
        std::vector<double> f(rule.nodes.size());
        for (std::size_t k = 0; k < rule.nodes.size(); ++k)
            f[k] = delta_omega_sq_at(traj, mode, rule.nodes[k]);
        const std::complex<double> val = double_integral(f, rule, omega);
        result.n_squeeze = val.real() / (4.0 * w_i * w_i);
        if (std::abs(val) > 0.0)
            result.imag_residual = std::max(result.imag_residual,
                                            std::fabs(val.imag()) / std::abs(val));
    }

    // acceleration kernel, summed over the truncated basis
    for (std::size_t j = 0; j < K; ++j) {
        if (j == i) continue;
        const double a_ij = gm.A(i, j);
        const double g_ij = gm.G(i, j);
        if (a_ij == 0.0 && g_ij == 0.0) continue;
        const double w_j = basis.omega0[j];
        const double omega = w_i + w_j;
        const double weight = 0.5 * s_weight(w_i, w_j);
        const PanelRule rule = gl_panels(0.0, T, panels_for(T, omega, panels_per_period));
        std::vector<double> s_vals(rule.nodes.size());
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            const TrajectoryState st = traj.eval(rule.nodes[k]);
            s_vals[k] = weight * (g_ij * st.l_dot / st.l + a_ij * st.eta_dot / st.l);
        }
        const std::complex<double> val = double_integral(s_vals, rule, omega);
        result.n_accel += val.real();
        if (std::abs(val) > 0.0)
            result.imag_residual = std::max(result.imag_residual,
                                            std::fabs(val.imag()) / std::abs(val));
    }
    return result;
}

// ---------------------------------------------------------------------------
// scattering

namespace {

using ScatterState = std::array<std::complex<double>, 2>;

struct OscillatorRhs {
    const std::function<double(double)>* profile;
    double omega0_sq;

    void operator()(const ScatterState& x, ScatterState& dxdt, double t) const {
        dxdt[0] = x[1];
        dxdt[1] = -(omega0_sq + (*profile)(t)) * x[0];
    }
};

} // namespace

ScatteringResult scattering_n(const std::function<double(double)>& delta_omega_sq_profile,
                              double omega0, double t0, double t1, double rtol) {
    if (omega0 <= 0.0) throw ConfigError("scattering_n: omega0 must be > 0");
    if (t1 <= t0) throw ConfigError("scattering_n: empty window");

    namespace ode = boost::numeric::odeint;
    ScatterState x;
    x[0] = std::polar(1.0, -omega0 * t0);
    x[1] = std::complex<double>(0.0, -omega0) * x[0];

    const std::complex<double> w0 =
        x[1] * std::conj(x[0]) - x[0] * std::conj(x[1]);   // conserved Wronskian
    double max_drift = 0.0;
    auto observer = [&](const ScatterState& s, double) {
        const std::complex<double> w = s[1] * std::conj(s[0]) - s[0] * std::conj(s[1]);
        max_drift = std::max(max_drift, std::abs(w - w0) / std::abs(w0));
    };

    OscillatorRhs rhs{&delta_omega_sq_profile, omega0 * omega0};
    auto stepper = ode::make_controlled(1e-14, rtol, ode::runge_kutta_fehlberg78<ScatterState>());
    ode::integrate_adaptive(stepper, rhs, x, t0, t1, (t1 - t0) / 1000.0, observer);

    const std::complex<double> i_unit{0.0, 1.0};
    const std::complex<double> alpha =
        0.5 * (x[0] + i_unit * x[1] / omega0) * std::polar(1.0, +omega0 * t1);
    const std::complex<double> beta =
        0.5 * (x[0] - i_unit * x[1] / omega0) * std::polar(1.0, -omega0 * t1);

    ScatteringResult r;
    r.alpha_sq = std::norm(alpha);
    r.beta_sq = std::norm(beta);
    r.n_exact = r.beta_sq;
    r.wronskian_drift = max_drift;
    r.normalization_residual = std::fabs(r.alpha_sq - r.beta_sq - 1.0);
    if (r.normalization_residual > 1e-6)
        throw GuardError("bogoliubov-normalization",
                         "| |alpha|^2 - |beta|^2 - 1 | = " +
                             std::to_string(r.normalization_residual) + " exceeds 1e-6");
    return r;
}

ScatteringResult scattering_n(const Trajectory& traj, const ModeIndex& mode,
                              const ModeSpectrum& spectrum, double rtol) {
    const double w0 = spectrum.omega0[spectrum.index_of(mode)];
    std::function<double(double)> profile = [&traj, mode](double t) {
        return delta_omega_sq_at(traj, mode, t);
    };
    return scattering_n(profile, w0, 0.0, traj.duration(), rtol);
}

// ---------------------------------------------------------------------------
// Fock propagation

FockSpace::FockSpace(ModeSpectrum spectrum, int n_max)
    : spectrum_(std::move(spectrum)), n_max_(n_max) {
    if (n_max_ < 2) throw ConfigError("FockSpace: n_max must be >= 2");
    const std::size_t K = spectrum_.size();
    if (K == 0) throw ConfigError("FockSpace: empty mode basis");

    // states ordered by total occupation, then lexicographically
    std::vector<int> occ(K, 0);
    for (int total = 0; total <= n_max_; ++total) {
        std::function<void(std::size_t, int)> emit = [&](std::size_t slot, int remaining) {
            if (slot + 1 == K) {
                occ[slot] = remaining;
                states_.push_back(occ);
                return;
            }
            for (int k = 0; k <= remaining; ++k) {
                occ[slot] = k;
                emit(slot + 1, remaining - k);
            }
        };
        emit(0, total);
    }
    if (states_.size() > 50'000)
        throw ConfigError("FockSpace: dimension " + std::to_string(states_.size()) +
                          " beyond desk scale");

    std::map<std::vector<int>, std::size_t> index;
    for (std::size_t s = 0; s < states_.size(); ++s) index[states_[s]] = s;
    auto lookup = [&](const std::vector<int>& key) -> std::ptrdiff_t {
        auto it = index.find(key);
        return it == index.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
    };

    gm_ = geometric_matrices(spectrum_);

    annihilate_sq_.resize(K);
    create_sq_.resize(K);
    pair_annihilate_.resize(K * (K - 1) / 2);
    pair_create_.resize(K * (K - 1) / 2);
    hop_.resize(K * K);

    for (std::size_t s = 0; s < states_.size(); ++s) {
        const std::vector<int>& n = states_[s];
        std::vector<int> m;
        for (std::size_t a = 0; a < K; ++a) {
            if (n[a] >= 2) {   // a_a a_a
                m = n;
                m[a] -= 2;
                annihilate_sq_[a].push_back(
                    {static_cast<std::size_t>(lookup(m)), s,
                     std::sqrt(static_cast<double>(n[a]) * (n[a] - 1))});
            }
            m = n;             // a+_a a+_a (dropped when it leaves the shell)
            m[a] += 2;
            if (auto to = lookup(m); to >= 0)
                create_sq_[a].push_back({static_cast<std::size_t>(to), s,
                                         std::sqrt(static_cast<double>(n[a] + 1) * (n[a] + 2))});
            for (std::size_t b = 0; b < K; ++b) {
                if (a == b) continue;
                if (n[b] >= 1) {   // a+_a a_b
                    m = n;
                    --m[b];
                    ++m[a];
                    if (auto to = lookup(m); to >= 0)
                        hop_[a * K + b].push_back(
                            {static_cast<std::size_t>(to), s,
                             std::sqrt(static_cast<double>(n[b]) * (n[a] + 1))});
                }
                if (a < b) {
                    if (n[a] >= 1 && n[b] >= 1) {   // a_a a_b
                        m = n;
                        --m[a];
                        --m[b];
                        pair_annihilate_[pair_slot(a, b)].push_back(
                            {static_cast<std::size_t>(lookup(m)), s,
                             std::sqrt(static_cast<double>(n[a]) * n[b])});
                    }
                    m = n;   // a+_a a+_b
                    ++m[a];
                    ++m[b];
                    if (auto to = lookup(m); to >= 0)
                        pair_create_[pair_slot(a, b)].push_back(
                            {static_cast<std::size_t>(to), s,
                             std::sqrt(static_cast<double>(n[a] + 1) * (n[b] + 1))});
                }
            }
        }
    }
}

std::size_t FockSpace::pair_slot(std::size_t a, std::size_t b) const {
    if (a > b) std::swap(a, b);
    const std::size_t K = spectrum_.size();
    return a * K - a * (a + 1) / 2 + (b - a - 1);
}

void FockSpace::apply_h1(const Trajectory& traj, double t,
                         const std::vector<std::complex<double>>& psi,
                         std::vector<std::complex<double>>& out) const {
    const std::size_t K = spectrum_.size();
    const std::size_t dim = states_.size();
    if (psi.size() != dim) throw ConfigError("FockSpace: state vector size mismatch");
    out.assign(dim, {0.0, 0.0});

    auto apply = [&](const Op& op, std::complex<double> coeff) {
        for (const Triplet& tr : op) out[tr.to] += coeff * tr.value * psi[tr.from];
    };

    // squeezing part: (1/2) DeltaOmega^2_a q_a^2 with
    // q_a(t)^2 = [a^2 e^{-2iWt} + a+^2 e^{+2iWt} + 2N+1] / (2W)
    for (std::size_t a = 0; a < K; ++a) {
        const double dos = delta_omega_sq_at(traj, spectrum_.basis[a], t);
        if (dos == 0.0) continue;
        const double w = spectrum_.omega0[a];
        const double c = dos / (4.0 * w);
        const std::complex<double> rot = std::polar(1.0, 2.0 * w * t);
        apply(annihilate_sq_[a], c * std::conj(rot));
        apply(create_sq_[a], c * rot);
        for (std::size_t s = 0; s < dim; ++s)
            out[s] += c * (2.0 * states_[s][a] + 1.0) * psi[s];
    }

    // acceleration part: q_a M_ab p_b expanded into ladder monomials
    const TrajectoryState st = traj.eval(t);
    const double g_coef = st.l_dot / st.l;
    const double a_coef = st.eta_dot / st.l;
    if (g_coef == 0.0 && a_coef == 0.0) return;
    for (std::size_t a = 0; a < K; ++a) {
        const double w_a = spectrum_.omega0[a];
        for (std::size_t b = 0; b < K; ++b) {
            if (a == b) continue;
            const double m_ab = g_coef * gm_.G(a, b) + a_coef * gm_.A(a, b);
            if (m_ab == 0.0) continue;
            const double w_b = spectrum_.omega0[b];
            const std::complex<double> ib{0.0, 0.5 * m_ab * std::sqrt(w_b / w_a)};
            const std::complex<double> sum_rot = std::polar(1.0, (w_a + w_b) * t);
            const std::complex<double> diff_rot = std::polar(1.0, (w_a - w_b) * t);
            apply(hop_[b * K + a], ib * std::conj(diff_rot)); // a_a a+_b = a+_b a_a
            apply(pair_annihilate_[pair_slot(a, b)], -ib * std::conj(sum_rot));
            apply(pair_create_[pair_slot(a, b)], ib * sum_rot);
            apply(hop_[a * K + b], -ib * diff_rot);           // a+_a a_b
        }
    }
}

std::vector<double> FockSpace::mean_occupation(const std::vector<std::complex<double>>& psi) const {
    std::vector<double> n(spectrum_.size(), 0.0);
    for (std::size_t s = 0; s < states_.size(); ++s) {
        const double p = std::norm(psi[s]);
        for (std::size_t a = 0; a < n.size(); ++a) n[a] += p * states_[s][a];
    }
    return n;
}

double FockSpace::boundary_population(const std::vector<std::complex<double>>& psi) const {
    double pop = 0.0;
    for (std::size_t s = 0; s < states_.size(); ++s) {
        int total = 0;
        for (int k : states_[s]) total += k;
        if (total == n_max_) pop += std::norm(psi[s]);
    }
    return pop;
}

FockResult fock_propagate(const Trajectory& traj, const Geometry& geometry, std::size_t K,
                          int n_max, double rtol) {
    if (std::fabs(geometry.l0 - traj.rest_length()) > 1e-12 * geometry.l0)
        throw ConfigError("fock_propagate: geometry l0 and trajectory rest length differ");
    const FockSpace space(build_spectrum_count(geometry, K), n_max);
    const std::size_t dim = space.dimension();

    using State = std::vector<std::complex<double>>;
    State psi(dim, {0.0, 0.0});
    psi[0] = {1.0, 0.0};   // vacuum

    State h1psi(dim);
    auto rhs = [&](const State& p, State& dpdt, double t) {
        space.apply_h1(traj, std::clamp(t, 0.0, traj.duration()), p, h1psi);
        dpdt.resize(dim);
        const std::complex<double> minus_i{0.0, -1.0};
        for (std::size_t s = 0; s < dim; ++s) dpdt[s] = minus_i * h1psi[s];
    };

    double max_norm_drift = 0.0;
    auto observer = [&](const State& p, double) {
        double norm_sq = 0.0;
        for (const auto& c : p) norm_sq += std::norm(c);
        max_norm_drift = std::max(max_norm_drift, std::fabs(std::sqrt(norm_sq) - 1.0));
    };

    namespace ode = boost::numeric::odeint;
    auto stepper = ode::make_controlled(1e-14, rtol, ode::runge_kutta_fehlberg78<State>());
    ode::integrate_adaptive(stepper, rhs, psi, 0.0, traj.duration(), traj.duration() / 1000.0,
                            observer);

    FockResult r;
    r.dimension = dim;
    r.mean_occupation = space.mean_occupation(psi);
    r.norm_drift = max_norm_drift;
    r.boundary_population = space.boundary_population(psi);
    if (r.boundary_population > 1e-6)
        throw GuardError("truncation-leakage",
                         "outermost occupation shell holds " +
                             std::to_string(r.boundary_population) +
                             " of the state; increase n_max");
    return r;
}

} // namespace dce
