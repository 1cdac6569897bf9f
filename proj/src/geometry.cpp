#include "dce/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dce {

namespace {
constexpr double kPi = std::numbers::pi;
}

Geometry Geometry::interval(double l0) {
    if (l0 <= 0.0) throw ConfigError("Geometry: rest length l0 must be > 0");
    return Geometry{GeometryKind::Interval1D, l0, 0.0, 0.0};
}

Geometry Geometry::slab(double l0, double Lx, double Ly) {
    if (l0 <= 0.0) throw ConfigError("Geometry: rest length l0 must be > 0");
    if (Lx <= 0.0 || Ly <= 0.0)
        throw ConfigError("Geometry: transverse extents Lx, Ly must be > 0");
    return Geometry{GeometryKind::SlabProduct, l0, Lx, Ly};
}

std::string ModeIndex::label() const {
    if (!has_transverse()) return "n=" + std::to_string(n);
    return "n=" + std::to_string(n) + ",p=" + std::to_string(p) + ",q=" + std::to_string(q);
}

std::size_t ModeSpectrum::index_of(const ModeIndex& mode) const {
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i] == mode) return i;
    throw ConfigError("ModeSpectrum: mode " + mode.label() + " not in basis");
}

double omega_parallel(int n, double l) {
    if (n < 1) throw ConfigError("omega_parallel: n must be >= 1");
    if (l <= 0.0) throw ConfigError("omega_parallel: length must be > 0");
    return static_cast<double>(n) * kPi / l;
}

double omega_perp(const ModeIndex& alpha, const Geometry& geometry) {
    if (geometry.kind == GeometryKind::Interval1D) {
        if (alpha.has_transverse())
            throw ConfigError("omega_perp: transverse index on an Interval1D geometry");
        return 0.0;
    }
    if (alpha.p < 1 || alpha.q < 1)
        throw ConfigError("omega_perp: SlabProduct modes need p, q >= 1");
    const double px = static_cast<double>(alpha.p) / geometry.Lx;
    const double qy = static_cast<double>(alpha.q) / geometry.Ly;
    return kPi * std::sqrt(px * px + qy * qy);
}

double omega_total(const ModeIndex& alpha, const Geometry& geometry, double l) {
    const double perp = omega_perp(alpha, geometry);
    const double par = omega_parallel(alpha.n, l);
    return std::sqrt(perp * perp + par * par);
}

double delta_omega_sq(int n, double l_t, double l0) {
    if (n < 1) throw ConfigError("delta_omega_sq: n must be >= 1");
    if (l_t <= 0.0 || l0 <= 0.0) throw ConfigError("delta_omega_sq: lengths must be > 0");
    const double npi = static_cast<double>(n) * kPi;
    return npi * npi * (1.0 / (l_t * l_t) - 1.0 / (l0 * l0));
}

namespace {

struct ModeEntry {
    ModeIndex mode;
    double omega;
};

// enumerate every mode with rest frequency <= ceiling
std::vector<ModeEntry> enumerate_modes(const Geometry& g, double ceiling) {
    std::vector<ModeEntry> out;
    if (g.kind == GeometryKind::Interval1D) {
        for (int n = 1;; ++n) {
            const double w = omega_parallel(n, g.l0);
            if (w > ceiling) break;
            out.push_back({ModeIndex{n, 0, 0}, w});
        }
    } else {
        const int n_max = static_cast<int>(std::floor(ceiling * g.l0 / kPi));
        const int p_max = static_cast<int>(std::floor(ceiling * g.Lx / kPi));
        const int q_max = static_cast<int>(std::floor(ceiling * g.Ly / kPi));
        for (int n = 1; n <= n_max; ++n)
            for (int p = 1; p <= p_max; ++p)
                for (int q = 1; q <= q_max; ++q) {
                    const ModeIndex m{n, p, q};
                    const double w = omega_total(m, g, g.l0);
                    if (w <= ceiling) out.push_back({m, w});
                }
    }
    // frequency first; (n, p, q) lexicographic tie-break for degenerate levels
    std::sort(out.begin(), out.end(), [](const ModeEntry& a, const ModeEntry& b) {
        if (a.omega != b.omega) return a.omega < b.omega;
        return a.mode < b.mode;
    });
    return out;
}

ModeSpectrum make_spectrum(const Geometry& g, std::vector<ModeEntry> entries) {
    ModeSpectrum s;
    s.geometry = g;
    s.basis.reserve(entries.size());
    s.omega0.reserve(entries.size());
    for (const auto& e : entries) {
        s.basis.push_back(e.mode);
        s.omega0.push_back(e.omega);
    }
    return s;
}

} // namespace

ModeSpectrum build_spectrum(const Geometry& geometry, double omega_max) {
    auto entries = enumerate_modes(geometry, omega_max);
    if (entries.empty())
        throw ConfigError("build_spectrum: no mode below omega_max (lowest is " +
                          std::to_string(omega_total(
                              ModeIndex{1, geometry.kind == GeometryKind::SlabProduct ? 1 : 0,
                                        geometry.kind == GeometryKind::SlabProduct ? 1 : 0},
                              geometry, geometry.l0)) +
                          ")");
    return make_spectrum(geometry, std::move(entries));
}

ModeSpectrum build_spectrum_count(const Geometry& geometry, std::size_t count) {
    if (count == 0) throw ConfigError("build_spectrum_count: count must be >= 1");
    if (count > 100'000) throw ConfigError("build_spectrum_count: basis beyond desk scale");
    // grow the ceiling until enough modes are found
    double ceiling = 2.0 * omega_total(ModeIndex{1,
                                                 geometry.kind == GeometryKind::SlabProduct ? 1 : 0,
                                                 geometry.kind == GeometryKind::SlabProduct ? 1 : 0},
                                       geometry, geometry.l0);
    std::vector<ModeEntry> entries;
    for (int tries = 0; tries < 64; ++tries) {
        entries = enumerate_modes(geometry, ceiling);
        if (entries.size() >= count) break;
        ceiling *= 2.0;
    }
    if (entries.size() < count)
        throw ConfigError("build_spectrum_count: could not collect enough modes");
    entries.resize(count);
    return make_spectrum(geometry, std::move(entries));
}

} // namespace dce
