#include "vgsmile/implied.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "vgsmile/specialfn.hpp"

namespace vgsmile {

namespace {

constexpr double kVolLo = 1e-8;
constexpr double kVolHi = 10.0;
constexpr double kDeepWingPrice = 1e-14;

// Brent root-finding for g on a bracketing interval [a, b].
double brent(const std::function<double(double)>& g, double a, double b, double fa, double fb,
             double xtol, int max_iter) {
    double c = a, fc = fa;
    double d = b - a, e = d;
    for (int iter = 0; iter < max_iter; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * xtol;
        const double mid = 0.5 * (c - b);
        if (std::abs(mid) <= tol || fb == 0.0) return b;
        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            const double s = fb / fa;
            double pq, qq;
            if (a == c) {
                pq = 2.0 * mid * s;
                qq = 1.0 - s;
            } else {
                const double q = fa / fc;
                const double r = fb / fc;
                pq = s * (2.0 * mid * q * (q - r) - (b - a) * (r - 1.0));
                qq = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (pq > 0.0) qq = -qq;
            pq = std::abs(pq);
            if (2.0 * pq < std::min(3.0 * mid * qq - std::abs(tol * qq), std::abs(e * qq))) {
                e = d;
                d = pq / qq;
            } else {
                d = mid;
                e = d;
            }
        } else {
            d = mid;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol) ? d : (mid > 0.0 ? tol : -tol);
        fb = g(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    throw ConvergenceError("implied_vol: root refinement did not converge", b, max_iter);
}

} // namespace

void SmileCurve::validate() const {
    if (strikes.size() != vols.size())
        throw DomainError("SmileCurve: strikes and vols must have equal length");
    for (std::size_t i = 0; i + 1 < strikes.size(); ++i)
        if (!(strikes[i] < strikes[i + 1]))
            throw DomainError("SmileCurve: strikes must be strictly increasing");
    for (double w : vols)
        if (!(w > 0.0)) throw DomainError("SmileCurve: vols must be positive");
}

TotalVol implied_vol(double call_price, double strike, double S0, const Accuracy& acc) {
    acc.validate();
    if (!(strike > 0.0) || !(S0 > 0.0))
        throw DomainError("implied_vol: requires strike > 0 and S0 > 0");
    const double intrinsic = std::max(S0 - strike, 0.0);
    if (!(call_price > intrinsic)) {
        std::ostringstream msg;
        msg << "implied_vol: price " << call_price << " at or below the intrinsic bound "
            << intrinsic;
        throw BoundViolationError(msg.str(), "lower (intrinsic value)");
    }
    if (!(call_price < S0)) {
        std::ostringstream msg;
        msg << "implied_vol: price " << call_price << " at or above the spot bound " << S0;
        throw BoundViolationError(msg.str(), "upper (spot)");
    }

    auto objective = [&](double w) { return bs_call(strike, TotalVol(w), S0) - call_price; };
    const double flo = objective(kVolLo);
    const double fhi = objective(kVolHi);
    if (!(flo < 0.0) || !(fhi > 0.0)) {
        std::ostringstream msg;
        msg << "implied_vol: no bracket for price " << call_price << " on w in [" << kVolLo
            << ", " << kVolHi << "]";
        throw BracketError(msg.str(), kVolLo, kVolHi);
    }
    const double w = brent(objective, kVolLo, kVolHi, flo, fhi, 1e-12, acc.max_iter);
    return TotalVol(w);
}

std::vector<double> log_spaced_strikes(double S0, double window, int n) {
    if (!(S0 > 0.0) || !(window > 0.0) || n < 2)
        throw DomainError("log_spaced_strikes: requires S0 > 0, window > 0, n >= 2");
    std::vector<double> strikes(n);
    for (int i = 0; i < n; ++i) {
        const double k = -window + 2.0 * window * i / (n - 1);
        strikes[i] = S0 * std::exp(k);
    }
    return strikes;
}

SmileCurve smile(const MixtureParams& params, const std::vector<double>& strike_grid,
                 const Accuracy& acc) {
    params.validate();
    SmileCurve curve;
    curve.S0 = params.S0;
    curve.params = params;
    curve.strikes.reserve(strike_grid.size());
    curve.vols.reserve(strike_grid.size());
    for (double strike : strike_grid) {
        const Quote quote = price(strike, params, acc);
        const double time_value = quote.call - std::max(params.S0 - strike, 0.0);
        if (quote.call < kDeepWingPrice || time_value < kDeepWingPrice) {
            curve.excluded_strikes.push_back(strike);
            continue;
        }
        curve.strikes.push_back(strike);
        curve.vols.push_back(implied_vol(quote.call, strike, params.S0, acc).w);
    }
    curve.validate();
    return curve;
}

SmileCurve smile(const MixtureParams& params, const Accuracy& acc) {
    return smile(params, log_spaced_strikes(params.S0, 0.15, 201), acc);
}

AtmCurvature atm_curvature(const MixtureParams& params, const Accuracy& acc) {
    params.validate();
    if (std::abs(params.S0 - 1.0) > 1e-12)
        throw DomainError("atm_curvature: S0 must be normalized to 1");

    auto vol_at_logm = [&](double k) {
        const double strike = std::exp(k);
        return implied_vol(price(strike, params, acc).call, strike, params.S0, acc).w;
    };

    const double w0 = vol_at_logm(0.0);
    const double h = 5e-4;
    auto second_diff = [&](double step) {
        return (vol_at_logm(step) - 2.0 * w0 + vol_at_logm(-step)) / (step * step);
    };
    // 2 D(h/2) - D(h) cancels the |k|^3 contribution of the symmetric smile
    const double fd_k = 2.0 * second_diff(0.5 * h) - second_diff(h);
    const double slope_k = (vol_at_logm(h) - vol_at_logm(-h)) / (2.0 * h);

    AtmCurvature out;
    out.atm_vol = w0;
    // d^2 sigma / dK^2 at K = S0 = 1 from log-moneyness derivatives
    out.finite_difference = fd_k - slope_k;
    const double f0 = mixture_density(0.0, params, acc);
    const TotalVol w(w0);
    out.formula = (f0 - bs_gamma_atm(w)) / bs_vega(params.S0, w, params.S0);
    return out;
}

} // namespace vgsmile
