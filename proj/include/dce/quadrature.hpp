#pragma once

#include <array>
#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "dce/errors.hpp"

namespace dce {

/// Composite Simpson over a uniform grid y_i = f(i*dt), i = 0..n-1.
/// Odd point counts use plain Simpson; even counts close with a 3/8 panel.
double simpson(std::span<const double> y, double dt);

/// Oscillatory transform  sum_i w_i y_i exp(+i omega t_i)  with Simpson
/// weights, t_i = i*dt.  This is the production evaluator behind the
/// windowed Fourier transform.
std::complex<double> fourier_simpson(std::span<const double> y, double dt, double omega);

/// Nodes and weights of composite Gauss-Legendre panels (10-point rule per
/// panel) covering [a, b].
struct PanelRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
PanelRule gl_panels(double a, double b, std::size_t n_panels);

/// Integrate a callable with composite 10-point Gauss-Legendre panels.
template <class F>
double gl_integrate(F&& f, double a, double b, std::size_t n_panels) {
    const PanelRule rule = gl_panels(a, b, n_panels);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(rule.nodes[i]);
    return sum;
}

/// Principal-value integral over [a, b] of a function with one simple pole
/// at s, a < s < b.  The grid is placed symmetrically around the pole and
/// the integrand is evaluated in cancelling pairs f(s+u) + f(s-u); the
/// matched exclusion half-width `h` keeps individual evaluations finite.
template <class F>
double pv_integrate(F&& f, double a, double b, double s, double h,
                    std::size_t n_panels) {
    if (!(a < s && s < b)) throw ConfigError("pv_integrate: pole outside interval");
    if (h <= 0.0) throw ConfigError("pv_integrate: exclusion half-width must be > 0");
    const double reach = std::min(s - a, b - s);
    if (h >= reach) throw ConfigError("pv_integrate: exclusion swallows the interval");

    double sum = gl_integrate([&](double u) { return f(s + u) + f(s - u); },
                              h, reach, n_panels);
    // leftover one-sided segment, regular because it stays `reach` away
    if (s - a > reach) sum += gl_integrate(f, a, s - reach, n_panels);
    if (b - s > reach) sum += gl_integrate(f, s + reach, b, n_panels);
    return sum;
}

} // namespace dce
