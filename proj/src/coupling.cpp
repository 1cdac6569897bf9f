#include "dce/coupling.hpp"

#include <cmath>
#include <numbers>

namespace dce {

GeometricMatrices geometric_matrices(const ModeSpectrum& basis) {
    if (basis.size() == 0) throw ConfigError("geometric_matrices: empty basis");
    const std::size_t K = basis.size();
    GeometricMatrices gm{Matrix(K, K), Matrix(K, K)};
    for (std::size_t i = 0; i < K; ++i) {
        for (std::size_t j = 0; j < K; ++j) {
            const ModeIndex& a = basis.basis[i];
            const ModeIndex& b = basis.basis[j];
            if (a.n == b.n || !a.same_transverse(b)) continue;
            const double n = a.n, m = b.n;
            const double core = 2.0 * m * n / (m * m - n * n);
            const double sign = ((a.n + b.n) % 2 == 0) ? 1.0 : -1.0; // (-1)^(m+n)
            gm.A(i, j) = (sign - 1.0) * core;
            gm.G(i, j) = sign * core;
        }
    }
    return gm;
}

Matrix coupling_matrix(const GeometricMatrices& gm, const Trajectory& traj, double t) {
    const TrajectoryState s = traj.eval(t);
    const double g_coef = s.l_dot / s.l;
    const double a_coef = s.eta_dot / s.l;
    const std::size_t K = gm.A.rows();
    Matrix M(K, K);
    for (std::size_t i = 0; i < K; ++i)
        for (std::size_t j = 0; j < K; ++j)
            M(i, j) = g_coef * gm.G(i, j) + a_coef * gm.A(i, j);
    return M;
}

double s_weight(double omega_a, double omega_b) {
    if (omega_a <= 0.0 || omega_b <= 0.0)
        throw ConfigError("s_weight: frequencies must be > 0");
    const double r = std::sqrt(omega_b / omega_a);
    return r - 1.0 / r;
}

Matrix s_matrix(const Matrix& M, std::span<const double> omega0) {
    const std::size_t K = M.rows();
    if (omega0.size() != K) throw ConfigError("s_matrix: omega0 size mismatch");
    Matrix S(K, K);
    for (std::size_t i = 0; i < K; ++i)
        for (std::size_t j = 0; j < K; ++j) {
            if (i == j) continue;
            S(i, j) = 0.5 * M(i, j) * s_weight(omega0[i], omega0[j]);
        }
    return S;
}

CouplingSet::CouplingSet(ModeSpectrum basis, Trajectory traj)
    : basis_(std::move(basis)), traj_(std::move(traj)), gm_(geometric_matrices(basis_)) {
    if (std::fabs(basis_.geometry.l0 - traj_.rest_length()) > 1e-12 * basis_.geometry.l0)
        throw ConfigError("CouplingSet: basis geometry and trajectory rest length differ");
}

Matrix CouplingSet::m_at(double t) const { return coupling_matrix(gm_, traj_, t); }

Matrix CouplingSet::s_at(double t) const { return s_matrix(m_at(t), basis_.omega0); }

double single_mirror_kernel(double omega_a, double omega_b, double eta_dot, double min_gap) {
    if (omega_a <= 0.0 || omega_b <= 0.0)
        throw ConfigError("single_mirror_kernel: frequencies must be > 0");
    if (std::fabs(omega_a - omega_b) < min_gap)
        throw GuardError("pv-exclusion",
                         "kernel evaluated inside the exclusion width |W_a - W_b| < " +
                         std::to_string(min_gap) + "; use principal-value quadrature");
    return eta_dot * (2.0 / std::numbers::pi) * omega_a * omega_b /
           (omega_a * omega_a - omega_b * omega_b);
}

} // namespace dce
