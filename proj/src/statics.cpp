#include "dce/statics.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "dce/errors.hpp"

namespace dce {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kSweepPoints = 7;     // lambda, lambda/sqrt(2), ..., lambda/8

void check_cutoff(double l, double lambda) {
    if (l <= 0.0) throw ConfigError("statics: length must be > 0");
    if (lambda <= 10.0 * kPi / l)
        throw ConfigError("statics: cutoff lambda must exceed 10 pi / l");
}

// sum_n n exp(-n s), summed directly until the tail is negligible.
// Extended precision throughout: the finite part sits ~10 orders below the
// raw sum for long cavities, and double-precision argument rounding alone
// leaves a lambda^3-growing systematic error that would swamp it.
double weighted_mode_sum(double s) {
    long double sum = 0.0L;
    const long double sl = s;
    const double peak = 1.0 / s;
    for (std::size_t n = 1;; ++n) {
        const long double term =
            static_cast<long double>(n) * std::exp(-static_cast<long double>(n) * sl);
        sum += term;
        if (static_cast<double>(n) > peak && term < 1e-19L * sum) break;
        if (n > 100'000'000) throw ConfigError("statics: cutoff too large for direct summation");
    }
    return static_cast<double>(sum);
}

double raw_energy(double l, double lambda) {
    const double s = kPi / (l * lambda);
    return (kPi / (2.0 * l)) * weighted_mode_sum(s);
}

std::array<double, kSweepPoints> sweep_lambdas(double lambda) {
    std::array<double, kSweepPoints> out{};
    for (int j = 0; j < kSweepPoints; ++j)
        out[j] = lambda * std::pow(2.0, -0.5 * static_cast<double>(j));
    return out;
}

// least squares y = a x + b
struct LineFit {
    double a = 0.0, b = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    return {(n * sxy - sx * sy) / det, (sxx * sy - sx * sxy) / det};
}

} // namespace

RegularizedEnergy zero_point_energy(double l, double lambda) {
    check_cutoff(l, lambda);
    const auto lambdas = sweep_lambdas(lambda);

    std::vector<double> x, y;
    for (double lam : lambdas) {
        x.push_back(lam * lam);
        y.push_back(raw_energy(l, lam));
    }
    const LineFit fit = fit_line(x, y);   // raw = (c2 l) lambda^2 + c0/l

    RegularizedEnergy r;
    r.l = l;
    r.lambda = lambda;
    r.raw = y.front();
    r.divergent_coeff = fit.a / l;
    r.finite_part = fit.b;
    for (std::size_t i = 0; i < x.size(); ++i)
        r.remainder_estimate =
            std::max(r.remainder_estimate, std::fabs(y[i] - (fit.a * x[i] + fit.b)));
    if (r.remainder_estimate > 0.005 * std::fabs(r.finite_part))
        throw GuardError("fit-quality",
                         "cutoff sweep residual " + std::to_string(r.remainder_estimate) +
                             " exceeds 0.5% of the finite part; increase lambda");

    // growth law of the divergent piece
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double div = y[i] - r.finite_part;
        if (div <= 0.0) continue;
        lx.push_back(std::log(lambdas[i]));
        ly.push_back(std::log(div));
    }
    r.divergent_exponent = lx.size() >= 2 ? fit_line(lx, ly).a : 0.0;
    return r;
}

namespace {

// Richardson-controlled central difference of f at l
template <class F>
double stable_derivative(F&& f, double l, double scale_hint) {
    const double h = 0.01 * l;
    auto central = [&](double step) { return (f(l + step) - f(l - step)) / (2.0 * step); };
    const double d1 = central(h);
    const double d2 = central(0.5 * h);
    const double richardson = (4.0 * d2 - d1) / 3.0;
    if (std::fabs(d2 - d1) > 0.05 * std::fabs(richardson) + 1e-12 * scale_hint)
        throw GuardError("step-instability",
                         "finite-difference force did not settle under step halving");
    return richardson;
}

} // namespace

double casimir_force(double l, double lambda) {
    check_cutoff(l, lambda);
    auto finite = [lambda](double length) { return zero_point_energy(length, lambda).finite_part; };
    const double scale = std::fabs(finite(l)) / l;
    return -stable_derivative(finite, l, scale);
}

double casimir_force_two_sided(double l, double lambda, double L_box) {
    check_cutoff(l, lambda);
    if (L_box <= 2.0 * l) throw ConfigError("casimir_force_two_sided: L_box must exceed 2 l");
    auto finite = [lambda, L_box](double length) {
        return zero_point_energy(length, lambda).finite_part +
               zero_point_energy(L_box - length, lambda).finite_part;
    };
    const double scale = std::fabs(finite(l)) / l;
    return -stable_derivative(finite, l, scale);
}

ParabolicStrength parabolic_strength(double l, double lambda) {
    check_cutoff(l, lambda);
    // (dW_n/dl)^2 / (2 W_n) = n pi / (2 l^3) for W_n = n pi / l
    auto value_at = [l](double lam) {
        const double s = kPi / (l * lam);
        return kPi / (2.0 * l * l * l) * weighted_mode_sum(s);
    };
    ParabolicStrength r;
    r.value = value_at(lambda);

    const auto lambdas = sweep_lambdas(lambda);
    std::vector<double> lx, ly;
    for (double lam : lambdas) {
        lx.push_back(std::log(lam));
        ly.push_back(std::log(value_at(lam)));
    }
    r.growth_exponent = fit_line(lx, ly).a;
    return r;
}

} // namespace dce
