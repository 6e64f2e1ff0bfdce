// Test-only reference implementations, kept independent of the library code
// paths they are used to check.
#ifndef VGSMILE_TESTS_ORACLES_HPP
#define VGSMILE_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "vgsmile/quadrature.hpp"

namespace vgsmile::oracles {

// erf by its Maclaurin series; adequate for |x| <= 3.
inline double erf_series(double x) {
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int n = 1; n < 200; ++n) {
        term *= -x2 / n;
        const double add = term / (2 * n + 1);
        sum += add;
        if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return sum * 2.0 / std::sqrt(M_PI);
}

inline double norm_cdf_series(double x) { return 0.5 * (1.0 + erf_series(x / M_SQRT2)); }

// K_nu(z) by adaptive quadrature of the integral representation
// int_0^inf exp(-z cosh t) cosh(nu t) dt.
inline double bessel_k_quadrature(double nu, double z) {
    auto integrand = [&](double t) {
        const double log_term = -z * std::cosh(t) + std::abs(nu * t) +
                                std::log1p(std::exp(-2.0 * std::abs(nu * t))) - M_LN2;
        return std::exp(log_term);
    };
    double t_max = 1.0;
    while (integrand(t_max) > 1e-22 && t_max < 300.0) t_max *= 1.5;
    Accuracy acc;
    acc.rel_tol = 1e-13;
    acc.abs_tol = 1e-18;
    return integrate(integrand, 0.0, t_max, acc).value;
}

// Gamma(shape, rate) distribution function by composite Simpson integration of
// the density on [0, x]; independent of the series/continued-fraction route.
inline double gamma_cdf_trapezoid(double x, double shape, double rate, int n = 20000) {
    if (x <= 0.0) return 0.0;
    const double lg = std::lgamma(shape);
    auto density = [&](double t) {
        if (t <= 0.0) return shape > 1.0 ? 0.0 : 0.0; // only used with shape >= 1
        return std::exp(shape * std::log(rate) - lg + (shape - 1.0) * std::log(t) - rate * t);
    };
    const double h = x / n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double a = i * h;
        const double b = a + h;
        sum += (h / 6.0) * (density(a) + 4.0 * density(0.5 * (a + b)) + density(b));
    }
    return sum;
}

// Two-sided Kolmogorov-Smirnov distance of samples against a CDF callable.
inline double ks_distance(std::vector<double> draws, const std::function<double(double)>& cdf) {
    std::sort(draws.begin(), draws.end());
    const double n = static_cast<double>(draws.size());
    double d = 0.0;
    for (std::size_t i = 0; i < draws.size(); ++i) {
        const double f = cdf(draws[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

struct MeanWithError {
    double mean = 0.0;
    double std_error = 0.0;
};

inline MeanWithError mean_with_error(const std::vector<double>& xs) {
    const double n = static_cast<double>(xs.size());
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= (n - 1.0);
    return {mean, std::sqrt(var / n)};
}

// Fraction of draws landing in [center - half_width, center + half_width],
// scaled to a density estimate.
inline double histogram_density(const std::vector<double>& draws, double center,
                                double half_width) {
    std::size_t count = 0;
    for (double x : draws)
        if (x >= center - half_width && x <= center + half_width) ++count;
    return static_cast<double>(count) / (draws.size() * 2.0 * half_width);
}

} // namespace vgsmile::oracles

#endif
