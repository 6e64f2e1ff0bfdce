#ifndef VGSMILE_SPECIALFN_HPP
#define VGSMILE_SPECIALFN_HPP

#include "vgsmile/accuracy.hpp"

namespace vgsmile {

// log Gamma(x) for x > 0.
double log_gamma(double x);

// Standard normal density and distribution function.
double norm_pdf(double x);
double norm_cdf(double x);

// Modified Bessel function of the second kind K_nu(z), nu >= 0, z > 0.
// Series expansion below z = 2, quadrature of the integral representation
// K_nu(z) = int_0^inf exp(-z cosh t) cosh(nu t) dt above.
double bessel_k(double nu, double z, const Accuracy& acc = {});

// exp(z) * K_nu(z); stays representable for large z where K_nu underflows.
double bessel_k_scaled(double nu, double z, const Accuracy& acc = {});

// Regularized lower incomplete gamma: P(G <= x) for G ~ Gamma(shape, rate).
// Extended by zero to x <= 0.
double gamma_cdf(double x, double shape, double rate, const Accuracy& acc = {});

// Upper tail P(G > x), computed directly so it keeps relative accuracy in the
// far right tail. gamma_cdf + gamma_sf == 1 exactly.
double gamma_sf(double x, double shape, double rate, const Accuracy& acc = {});

} // namespace vgsmile

#endif
