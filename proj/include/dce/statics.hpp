#pragma once

#include <cstddef>

namespace dce {

/// Exponentially regularized 1D zero-point energy
///     E_Z(l, L) = (1/2) sum_n (n pi / l) exp(-n pi / (l L))
/// decomposed by a cutoff sweep into  c2 * l * L^2 + c0 / l.
struct RegularizedEnergy {
    double l = 0.0;
    double lambda = 0.0;
    double raw = 0.0;               // mode sum at (l, lambda)
    double divergent_coeff = 0.0;   // c2
    double finite_part = 0.0;       // c0 / l, the Casimir piece
    double remainder_estimate = 0.0; // max fit residual
    double divergent_exponent = 0.0; // slope of log(raw - finite) vs log(lambda)
};

RegularizedEnergy zero_point_energy(double l, double lambda);

/// Static Casimir force -d(finite part)/dl, central difference with
/// Richardson step control.  Negative = attractive.
double casimir_force(double l, double lambda);

/// Two-sided variant: the mirror separates an inner cavity of length l from
/// an outer one of length L_box - l; the divergent parts cancel in the sum.
double casimir_force_two_sided(double l, double lambda, double L_box);

/// Cutoff-regularized curvature of the vacuum energy in the length parameter,
///     sum_n (dW_n/dl)^2 / (2 W_n) exp(-W_n / lambda) ,
/// the term that makes the parabolic confinement divergent.  Every term is
/// strictly positive.
struct ParabolicStrength {
    double value = 0.0;
    double growth_exponent = 0.0;   // fitted d log(value) / d log(lambda)
};

ParabolicStrength parabolic_strength(double l, double lambda);

} // namespace dce
