#include "dce/quadrature.hpp"

#include <cmath>

namespace dce {

namespace {

// 10-point Gauss-Legendre rule on [-1, 1]
constexpr std::array<double, 5> kGlNode = {
    0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
    0.8650633666889845, 0.9739065285171717};
constexpr std::array<double, 5> kGlWeight = {
    0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
    0.1494513491505806, 0.0666713443086881};

// Simpson weights for n points spaced dt apart.  n >= 4 even closes with a
// 3/8 panel over the last three intervals.
std::vector<double> simpson_weights(std::size_t n, double dt) {
    if (n < 3) throw ConfigError("simpson: need at least 3 samples");
    std::vector<double> w(n, 0.0);
    std::size_t m = n;            // points covered by the 1/3 rule
    if (n % 2 == 0) {
        if (n < 6) throw ConfigError("simpson: even grids need at least 6 samples");
        m = n - 3;                // leave 3 intervals for the 3/8 closure
    }
    const double c = dt / 3.0;
    w[0] += c;
    for (std::size_t i = 1; i + 1 < m; ++i) w[i] += (i % 2 == 1) ? 4.0 * c : 2.0 * c;
    w[m - 1] += c;
    if (m != n) {
        const double c38 = 3.0 * dt / 8.0;
        w[n - 4] += c38;
        w[n - 3] += 3.0 * c38;
        w[n - 2] += 3.0 * c38;
        w[n - 1] += c38;
    }
    return w;
}

} // namespace

double simpson(std::span<const double> y, double dt) {
    const auto w = simpson_weights(y.size(), dt);
    double sum = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) sum += w[i] * y[i];
    return sum;
}

std::complex<double> fourier_simpson(std::span<const double> y, double dt, double omega) {
    const auto w = simpson_weights(y.size(), dt);
    // phase recurrence: exp(i omega t_i) stepped by exp(i omega dt), with a
    // periodic exact refresh to stop drift on long grids
    const std::complex<double> step = std::polar(1.0, omega * dt);
    std::complex<double> phase{1.0, 0.0};
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i % 4096 == 0) phase = std::polar(1.0, omega * dt * static_cast<double>(i));
        sum += w[i] * y[i] * phase;
        phase *= step;
    }
    return sum;
}

PanelRule gl_panels(double a, double b, std::size_t n_panels) {
    if (n_panels == 0) throw ConfigError("gl_panels: need at least one panel");
    PanelRule rule;
    rule.nodes.reserve(10 * n_panels);
    rule.weights.reserve(10 * n_panels);
    const double h = (b - a) / static_cast<double>(n_panels);
    for (std::size_t p = 0; p < n_panels; ++p) {
        const double mid = a + (static_cast<double>(p) + 0.5) * h;
        const double half = 0.5 * h;
        for (std::size_t k = 0; k < 5; ++k) {
            rule.nodes.push_back(mid - half * kGlNode[k]);
            rule.weights.push_back(half * kGlWeight[k]);
            rule.nodes.push_back(mid + half * kGlNode[k]);
            rule.weights.push_back(half * kGlWeight[k]);
        }
    }
    return rule;
}

} // namespace dce
