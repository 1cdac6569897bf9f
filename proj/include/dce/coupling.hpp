#pragma once

#include <span>

#include "dce/geometry.hpp"
#include "dce/matrix.hpp"
#include "dce/trajectory.hpp"

namespace dce {

/// Dimensionless parallel-plate coupling matrices for n != m (zero diagonal,
/// zero unless the transverse indices match):
///
///     A_ab = [(-1)^(m+n) - 1] * 2mn / (m^2 - n^2)
///     G_ab = (-1)^(m+n)       * 2mn / (m^2 - n^2)
///
/// Both are antisymmetric.
struct GeometricMatrices {
    Matrix A;
    Matrix G;
};

GeometricMatrices geometric_matrices(const ModeSpectrum& basis);

/// Inter-mode coupling at time t:
///     M_ab(t) = (l_dot / l) G_ab + (eta_dot / l) A_ab .
Matrix coupling_matrix(const GeometricMatrices& gm, const Trajectory& traj, double t);

/// Frequency-weighted symmetrization entering the pair-creation amplitude:
///     S_ab = (1/2) M_ab (sqrt(W_b/W_a) - sqrt(W_a/W_b)) ,
/// symmetric with zero diagonal.
Matrix s_matrix(const Matrix& M, std::span<const double> omega0);

/// The weight sqrt(W_b/W_a) - sqrt(W_a/W_b) of s_matrix, exposed so callers
/// can assemble single entries without building the full matrix.
double s_weight(double omega_a, double omega_b);

/// Time-indexed view of the coupling matrices of one basis along one
/// trajectory.  M(t) stays antisymmetric and S(t) symmetric with zero
/// diagonal at every t.
class CouplingSet {
public:
    CouplingSet(ModeSpectrum basis, Trajectory traj);

    const ModeSpectrum& basis() const noexcept { return basis_; }
    const GeometricMatrices& geometric() const noexcept { return gm_; }

    Matrix m_at(double t) const;
    Matrix s_at(double t) const;

private:
    ModeSpectrum basis_;
    Trajectory traj_;
    GeometricMatrices gm_;
};

/// Continuum single-mirror coupling kernel (principal-value sense):
///     eta_dot * (2/pi) * W_a W_b / (W_a^2 - W_b^2) .
/// The diagonal is a distribution, never a pointwise value: calls with
/// |W_a - W_b| < min_gap throw, signalling misuse outside PV quadrature.
double single_mirror_kernel(double omega_a, double omega_b, double eta_dot,
                            double min_gap = 1e-9);

} // namespace dce
