#ifndef VGSMILE_VGMODEL_HPP
#define VGSMILE_VGMODEL_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "vgsmile/accuracy.hpp"

namespace vgsmile {

// Free parameters of the two-component variance-gamma mixture.
// v = 0 selects the double-gamma limit model.
struct MixtureParams {
    double v = 0.02;      // volatility of the Brownian components
    double c = 2.0;       // Gamma-process shape rate per unit time
    double lambda = 0.5;  // Gamma rate parameter
    double mu = 0.02;     // drift divergence of the two investor groups
    double T = 1.0;       // horizon in years
    double S0 = 1.0;      // spot price

    double cT() const { return c * T; }
    void validate() const; // throws DomainError, including when mu >= 2 lambda
};

enum class Component { plus, minus };

// Derived quantities: the (alpha, beta, c)-parameterization of the component
// densities and the mixture weights. alpha/beta/gamma require v > 0 and are
// flagged absent (has_vg_fields = false) in the double-gamma limit.
struct ComponentParams {
    bool has_vg_fields = false;
    double alpha = 0.0;
    double beta_plus = 0.0;
    double beta_minus = 0.0;
    double gamma_plus = 0.0;
    double gamma_minus = 0.0;
    double log_gamma_plus = 0.0;
    double log_gamma_minus = 0.0;
    double cT = 0.0;
    double lambda_plus = 0.0;   // lambda/mu + 1/2, right Gamma rate of the limit
    double lambda_minus = 0.0;  // lambda/mu - 1/2, left Gamma rate of the limit
    double a = 0.0;             // (1 + mu/(2 lambda))^{cT}
    double b = 0.0;             // (1 - mu/(2 lambda))^{cT}
    double p = 0.0;             // a / (a + b), weight of the minus component

    double beta(Component s) const { return s == Component::plus ? beta_plus : beta_minus; }
    double log_gamma_coef(Component s) const {
        return s == Component::plus ? log_gamma_plus : log_gamma_minus;
    }
};

ComponentParams derive(const MixtureParams& params);

// Cumulant generating function of the Gamma(c, lambda) subordinator at time 1:
// ell(u) = -c log(1 - u/lambda), u < lambda.
double ell(double u, double c, double lambda);

// Exponentially tilted exponents ell_pm(u) = ell(u -+ mu/2) - ell(-+ mu/2).
double ell_pm(double u, Component s, const MixtureParams& params);

// Characteristic exponents psi_pm(u) = ell_pm(v^2 (u^2 - u)/2 +- mu u).
double psi(double u, Component s, const MixtureParams& params);

// Open interval (1 - r*, r*) on which the mixture MGF is finite.
std::pair<double, double> mgf_finite_interval(const MixtureParams& params);

// Moment generating function m(u) = E[exp(u X_T)] of the mixture log-price.
double mgf(double u, const MixtureParams& params);

// Log of the variance-gamma component density; stable in the far tails where
// the density itself underflows.
double log_component_density(double x, Component s, const MixtureParams& params,
                             const Accuracy& acc = {});

// f_pm(x) = gamma_pm |x/alpha|^{cT-1/2} e^{beta_pm x} K_{cT-1/2}(alpha |x|).
// Requires v > 0; at x = 0 the finite limit is returned when cT > 1/2.
double component_density(double x, Component s, const MixtureParams& params,
                         const Accuracy& acc = {});

// f = (a f_- + b f_+)/(a+b); delegates to the double-gamma density when v = 0.
double mixture_density(double x, const MixtureParams& params, const Accuracy& acc = {});

// Asymmetric double-gamma density, the v -> 0 limit of the mixture. f0(0) = 0
// for cT > 1; x = 0 is singular for cT < 1 and a jump for cT = 1.
double double_gamma_density(double x, const MixtureParams& params);

// One-sided limits of the double-gamma density at x = 0 (left, right).
std::pair<double, double> double_gamma_zero_limits(const MixtureParams& params);

// Standard (sigma, theta, kappa)-parameterization of one component process.
struct StdVGParams {
    double sigma_vg = 0.0;
    double theta = 0.0;
    double kappa = 0.0;
    Component component = Component::plus;
};

StdVGParams to_std_vg(const MixtureParams& params, Component s); // v > 0 only

// psi_VG(u) = -(1/kappa) log(1 - u^2 sigma^2 kappa / 2 - theta kappa u);
// equals psi(u, component, params) for the matching component.
double psi_std_vg(double u, const StdVGParams& vg);

// Sampling oracle mirroring the mixture construction: draw the component by a
// Bernoulli(p), the Gamma time change, then the conditional normal. For v = 0
// the draws are +- mu L directly. Deterministic given (seed, n).
std::vector<double> sample(const MixtureParams& params, std::size_t n, std::uint64_t seed);

// A sampled density curve over strictly increasing abscissae.
struct DensityGrid {
    std::vector<double> xs;
    std::vector<double> values;
    void validate() const;
};

// Evaluates the mixture density on the given abscissae. Throws on singular
// points (v = 0 with cT <= 1 at x = 0).
DensityGrid make_density_grid(const MixtureParams& params, std::vector<double> xs,
                              const Accuracy& acc = {});

} // namespace vgsmile

#endif
