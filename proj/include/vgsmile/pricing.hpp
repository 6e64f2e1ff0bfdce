#ifndef VGSMILE_PRICING_HPP
#define VGSMILE_PRICING_HPP

#include "vgsmile/vgmodel.hpp"

namespace vgsmile {

// Total volatility over the horizon (sigma sqrt(T) in annualized terms).
// All Black-Scholes formulas here are stated in this convention; rates and
// dividends are zero throughout, so parity reads C - P = S0 - K.
struct TotalVol {
    explicit TotalVol(double total) : w(total) {
        if (!(w > 0.0)) throw DomainError("TotalVol: requires w > 0");
    }
    double w;
};

struct Quote {
    double strike = 0.0;
    double call = 0.0;
    double put = 0.0;
};

// Zero-rate Black-Scholes call with total volatility w.
double bs_call(double strike, TotalVol w, double S0);

// dC/dw; strictly positive.
double bs_vega(double strike, TotalVol w, double S0);

// At-the-money dollar gamma d^2C/dK^2 at K = S0 = 1:
// exp(-w^2/8) / (sqrt(2 pi) w).
double bs_gamma_atm(TotalVol w);

// Risk-neutral Black-Scholes log-price density: normal with variance w^2 and
// mean -w^2/2.
double bs_logprice_density(double x, TotalVol w);

// Distribution function of one variance-gamma component (v > 0), by adaptive
// quadrature of the density with analytic tail truncation.
double vg_cdf(double x, Component s, const MixtureParams& params, const Accuracy& acc = {});

// Upper tail, integrated directly on its own side so it keeps relative
// accuracy in the wings. vg_cdf + vg_sf == 1 exactly.
double vg_sf(double x, Component s, const MixtureParams& params, const Accuracy& acc = {});

// Mixture distribution function Q(x) = (a F_-(x) + b F_+(x)) / (a + b); the
// v = 0 variant uses the Gamma distribution function extended by zero.
double q_function(double x, const MixtureParams& params, const Accuracy& acc = {});

// Survival counterpart; q_function + q_bar_function == 1 exactly.
double q_bar_function(double x, const MixtureParams& params, const Accuracy& acc = {});

// Closed-form mixture quote:
//   C(K) = S0 Q(log(S0/K)) - K Qbar(log(K/S0))
//   P(K) = K Q(log(K/S0)) - S0 Qbar(log(S0/K))
Quote price(double strike, const MixtureParams& params, const Accuracy& acc = {});

// Independent oracle: C(K) = int_K^inf (s - K) g(s) ds with g(s) = f(log(s/S0))/s,
// evaluated in log-price coordinates.
double price_by_quadrature(double strike, const MixtureParams& params, const Accuracy& acc = {});

} // namespace vgsmile

#endif
