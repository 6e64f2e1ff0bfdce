#ifndef VGSMILE_IMPLIED_HPP
#define VGSMILE_IMPLIED_HPP

#include <vector>

#include "vgsmile/pricing.hpp"

namespace vgsmile {

// Implied total-volatility curve over a strike grid. Strikes whose call price
// carries no resolvable time value are recorded in excluded_strikes instead of
// being assigned a fabricated vol.
struct SmileCurve {
    std::vector<double> strikes;
    std::vector<double> vols;
    double S0 = 1.0;
    MixtureParams params;
    std::vector<double> excluded_strikes;

    void validate() const;
};

// Unique w with bs_call(strike, w, S0) == call_price, by Brent's method on
// w in [1e-8, 10]. Throws BoundViolationError outside the strict arbitrage
// bounds max(S0-K, 0) < price < S0, BracketError if no bracket exists.
TotalVol implied_vol(double call_price, double strike, double S0, const Accuracy& acc = {});

// n log-spaced strikes on [S0 e^{-window}, S0 e^{window}].
std::vector<double> log_spaced_strikes(double S0, double window, int n);

SmileCurve smile(const MixtureParams& params, const std::vector<double>& strike_grid,
                 const Accuracy& acc = {});

// Default Fig-style grid: 201 strikes, log-moneyness window 0.15.
SmileCurve smile(const MixtureParams& params, const Accuracy& acc = {});

// ATM smile curvature sigma''(S0) computed two independent ways (S0 = 1):
//  - finite differences on the solved smile (Richardson-extrapolated central
//    second difference; the plain difference picks up the |k|^3 component of
//    the symmetric smile and converges only first order)
//  - the exact rearrangement (f(0) - bs_gamma_atm(w)) / vega(w) at w = sigma(S0)
struct AtmCurvature {
    double finite_difference = 0.0;
    double formula = 0.0;
    double atm_vol = 0.0;
};

AtmCurvature atm_curvature(const MixtureParams& params, const Accuracy& acc = {});

} // namespace vgsmile

#endif
