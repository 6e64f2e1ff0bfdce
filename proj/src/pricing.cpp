#include "vgsmile/pricing.hpp"

#include <algorithm>
#include <cmath>

#include "vgsmile/quadrature.hpp"
#include "vgsmile/specialfn.hpp"

namespace vgsmile {

namespace {

constexpr double kSqrt2Pi = 2.5066282746310005;

void check_strike(double strike, double S0) {
    if (!(strike > 0.0)) throw DomainError("pricing: requires strike > 0");
    if (!(S0 > 0.0)) throw DomainError("pricing: requires S0 > 0");
}

// Exponential decay rate of the component density on one side of the origin.
double tail_rate(const ComponentParams& cp, Component s, bool right_side) {
    return right_side ? cp.alpha - cp.beta(s) : cp.alpha + cp.beta(s);
}

// Abscissa beyond which exp(slope * x) * f_s(x) contributes less than
// abs_tol to any integral against it. Doubling search on the log density.
double tail_cutoff(const MixtureParams& params, Component s, bool right_side,
                   double slope, const Accuracy& acc) {
    const ComponentParams cp = derive(params);
    const double rate = tail_rate(cp, s, right_side) - std::abs(slope);
    const double log_threshold = std::log(acc.abs_tol) + std::log(std::max(rate, 1e-2)) - 5.0;
    double x = 0.05;
    for (int i = 0; i < 60; ++i) {
        const double signed_x = right_side ? x : -x;
        if (slope * signed_x + log_component_density(signed_x, s, params, acc) < log_threshold)
            return signed_x;
        x *= 2.0;
    }
    throw ConvergenceError("tail_cutoff: density tail does not decay as expected", x, 60);
}

double component_integral(const MixtureParams& params, Component s, double lo, double hi,
                          const Accuracy& acc) {
    auto density = [&](double y) { return component_density(y, s, params, acc); };
    return integrate(density, lo, hi, acc).value;
}

} // namespace

double bs_call(double strike, TotalVol w, double S0) {
    check_strike(strike, S0);
    const double d1 = std::log(S0 / strike) / w.w + 0.5 * w.w;
    const double d2 = d1 - w.w;
    return S0 * norm_cdf(d1) - strike * norm_cdf(d2);
}

double bs_vega(double strike, TotalVol w, double S0) {
    check_strike(strike, S0);
    const double d1 = std::log(S0 / strike) / w.w + 0.5 * w.w;
    return S0 * norm_pdf(d1);
}

double bs_gamma_atm(TotalVol w) {
    return std::exp(-w.w * w.w / 8.0) / (kSqrt2Pi * w.w);
}

double bs_logprice_density(double x, TotalVol w) {
    const double standardized = x / w.w + 0.5 * w.w;
    return std::exp(-0.5 * standardized * standardized) / (kSqrt2Pi * w.w);
}

double vg_cdf(double x, Component s, const MixtureParams& params, const Accuracy& acc) {
    if (x <= 0.0) {
        const double lo = tail_cutoff(params, s, /*right_side=*/false, 0.0, acc);
        if (x <= lo) return 0.0;
        return component_integral(params, s, lo, x, acc);
    }
    return 1.0 - vg_sf(x, s, params, acc);
}

double vg_sf(double x, Component s, const MixtureParams& params, const Accuracy& acc) {
    if (x <= 0.0) return 1.0 - vg_cdf(x, s, params, acc);
    const double hi = tail_cutoff(params, s, /*right_side=*/true, 0.0, acc);
    if (x >= hi) return 0.0;
    return component_integral(params, s, x, hi, acc);
}

double q_function(double x, const MixtureParams& params, const Accuracy& acc) {
    params.validate();
    const ComponentParams cp = derive(params);
    if (params.v == 0.0) {
        return (cp.a * gamma_sf(-x, cp.cT, cp.lambda_minus, acc) +
                cp.b * gamma_cdf(x, cp.cT, cp.lambda_plus, acc)) /
               (cp.a + cp.b);
    }
    return (cp.a * vg_cdf(x, Component::minus, params, acc) +
            cp.b * vg_cdf(x, Component::plus, params, acc)) /
           (cp.a + cp.b);
}

double q_bar_function(double x, const MixtureParams& params, const Accuracy& acc) {
    params.validate();
    const ComponentParams cp = derive(params);
    if (params.v == 0.0) {
        return (cp.a * gamma_cdf(-x, cp.cT, cp.lambda_minus, acc) +
                cp.b * gamma_sf(x, cp.cT, cp.lambda_plus, acc)) /
               (cp.a + cp.b);
    }
    return (cp.a * vg_sf(x, Component::minus, params, acc) +
            cp.b * vg_sf(x, Component::plus, params, acc)) /
           (cp.a + cp.b);
}

Quote price(double strike, const MixtureParams& params, const Accuracy& acc) {
    params.validate();
    check_strike(strike, params.S0);
    const double x0 = std::log(params.S0 / strike);
    Quote quote;
    quote.strike = strike;
    quote.call = params.S0 * q_function(x0, params, acc) -
                 strike * q_bar_function(-x0, params, acc);
    quote.put = strike * q_function(-x0, params, acc) -
                params.S0 * q_bar_function(x0, params, acc);
    return quote;
}

double price_by_quadrature(double strike, const MixtureParams& params, const Accuracy& acc) {
    params.validate();
    check_strike(strike, params.S0);
    const double y0 = std::log(strike / params.S0);

    auto payoff_density = [&](double x) {
        return (params.S0 * std::exp(x) - strike) * mixture_density(x, params, acc);
    };

    // right cutoff against the e^x growth of the payoff
    double hi;
    if (params.v > 0.0) {
        hi = tail_cutoff(params, Component::plus, /*right_side=*/true, 1.0, acc);
    } else {
        const ComponentParams cp = derive(params);
        hi = (std::abs(std::log(acc.abs_tol)) + 5.0) / std::max(cp.lambda_plus - 1.0, 1.0);
    }
    if (y0 >= hi) return 0.0;

    // the mixture density has a kink at x = 0; never integrate across it
    double value = 0.0;
    if (y0 < 0.0) {
        value += integrate(payoff_density, y0, 0.0, acc).value;
        value += integrate(payoff_density, 0.0, hi, acc).value;
    } else {
        value += integrate(payoff_density, y0, hi, acc).value;
    }
    return value;
}

} // namespace vgsmile
