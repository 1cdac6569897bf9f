#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "dce/errors.hpp"

namespace dce {

enum class GeometryKind : std::uint8_t { Interval1D, SlabProduct };

/// Cavity at rest: a 1D interval of length l0, or an interval crossed with a
/// Dirichlet rectangle Lx x Ly (parallel plates with finite transverse walls).
struct Geometry {
    GeometryKind kind = GeometryKind::Interval1D;
    double l0 = 1.0;       // rest length of the constrained dimension
    double Lx = 0.0;       // transverse rectangle, SlabProduct only
    double Ly = 0.0;

    static Geometry interval(double l0);
    static Geometry slab(double l0, double Lx, double Ly);
};

/// Mode multi-index alpha = (n, r): longitudinal quantum number n >= 1 and,
/// for SlabProduct, a transverse pair r = (p, q).  p = q = 0 means no
/// transverse part (Interval1D).
struct ModeIndex {
    int n = 1;
    int p = 0;
    int q = 0;

    bool has_transverse() const noexcept { return p > 0; }
    bool same_transverse(const ModeIndex& other) const noexcept {
        return p == other.p && q == other.q;
    }
    friend auto operator<=>(const ModeIndex&, const ModeIndex&) = default;

    std::string label() const;
};

/// Ordered truncated mode basis with its static frequencies.
struct ModeSpectrum {
    Geometry geometry;
    std::vector<ModeIndex> basis;   // sorted by (omega0, n, p, q)
    std::vector<double> omega0;     // same order as basis

    std::size_t size() const noexcept { return basis.size(); }

    /// Position of a mode in the basis; ConfigError if absent.
    std::size_t index_of(const ModeIndex& mode) const;
};

/// Omega_par_n(l) = n pi / l
double omega_parallel(int n, double l);

/// Transverse frequency Omega_perp_r = pi sqrt((p/Lx)^2 + (q/Ly)^2);
/// zero for Interval1D.
double omega_perp(const ModeIndex& alpha, const Geometry& geometry);

/// Full frequency at cavity length l:
/// Omega_alpha^2 = Omega_perp_r^2 + (n pi / l)^2.
double omega_total(const ModeIndex& alpha, const Geometry& geometry, double l);

/// Longitudinal frequency-squared shift
/// n^2 pi^2 (1/l_t^2 - 1/l0^2) = (n pi / l0)^2 * xi  with xi = l0^2/l_t^2 - 1.
double delta_omega_sq(int n, double l_t, double l0);

/// All modes with rest frequency <= omega_max, deterministically ordered.
ModeSpectrum build_spectrum(const Geometry& geometry, double omega_max);

/// The first `count` modes in the same deterministic order.  Used to extend
/// a mode-sum basis past the reporting ceiling.
ModeSpectrum build_spectrum_count(const Geometry& geometry, std::size_t count);

} // namespace dce
