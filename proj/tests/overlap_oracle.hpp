#pragma once

// Brute-force coupling-matrix entry for the 1D interval: direct quadrature of
//
//     M_nm = int_0^l  d/dt[ f_n(u, t) ] f_m(u, t) du ,
//     f_n(u) = sqrt(2/l) sin(n pi u / l) ,  u = z - eta ,
//
// with the boundary state (l, eta_dot, l_dot) supplied explicitly.  Test-only
// reference path; the production code uses the closed forms.

#include <cmath>
#include <numbers>

#include "dce/quadrature.hpp"

namespace dce::testing {

inline double overlap_m_entry(int n, int m, double l, double l_dot, double eta_dot,
                              std::size_t panels = 256) {
    const double pi = std::numbers::pi;
    const double norm = std::sqrt(2.0 / l);
    auto df_dt_times_fm = [&](double u) {
        const double arg_n = n * pi * u / l;
        // d/dt sqrt(2/l) = -(l_dot / 2l) sqrt(2/l);  d/dt (u/l) = -(eta_dot l + u l_dot) / l^2
        const double df = norm * (-(l_dot / (2.0 * l)) * std::sin(arg_n) +
                                  std::cos(arg_n) * n * pi *
                                      (-(eta_dot * l + u * l_dot) / (l * l)));
        const double fm = norm * std::sin(m * pi * u / l);
        return df * fm;
    };
    return gl_integrate(df_dt_times_fm, 0.0, l, panels);
}

} // namespace dce::testing
