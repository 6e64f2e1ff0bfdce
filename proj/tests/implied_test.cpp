#include "vgsmile/implied.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "vgsmile/specialfn.hpp"

namespace vgsmile {
namespace {

MixtureParams base_params(double v) {
    MixtureParams params;
    params.v = v;
    params.c = 2.0;
    params.lambda = 0.5;
    params.mu = 0.02;
    params.T = 1.0;
    params.S0 = 1.0;
    return params;
}

TEST(ImpliedVol, RoundTripAtTheMoney) {
    const double call = bs_call(1.0, TotalVol(0.2), 1.0);
    EXPECT_NEAR(implied_vol(call, 1.0, 1.0).w, 0.2, 1e-10);
    EXPECT_NEAR(implied_vol(0.0796557, 1.0, 1.0).w, 0.2, 1e-6);
}

TEST(ImpliedVol, RoundTripProperty) {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> vol_pick(0.02, 1.8);
    std::uniform_real_distribution<double> strike_pick(0.5, 2.0);
    int tested = 0;
    for (int i = 0; i < 100 || tested < 100; ++i) {
        const double w = vol_pick(rng);
        const double strike = strike_pick(rng);
        const double call = bs_call(strike, TotalVol(w), 1.0);
        // the inversion is conditioned by vega: a price correct to machine
        // epsilon pins w only to ~eps/vega, so keep the pairs resolvable
        if (!(call > std::max(1.0 - strike, 0.0) + 1e-8)) continue;
        if (bs_vega(strike, TotalVol(w), 1.0) < 1e-6) continue;
        ++tested;
        EXPECT_NEAR(implied_vol(call, strike, 1.0).w, w, 1e-9)
            << "w = " << w << " K = " << strike;
        if (i > 10000) break;
    }
    EXPECT_GE(tested, 100);
}

TEST(ImpliedVol, MonotoneInPrice) {
    double prev = 0.0;
    for (double call = 0.02; call <= 0.5; call += 0.03) {
        const double w = implied_vol(call, 1.0, 1.0).w;
        EXPECT_GT(w, prev);
        prev = w;
    }
}

TEST(ImpliedVol, BoundViolationsNameTheBound) {
    try {
        implied_vol(0.09, 0.9, 1.0); // below intrinsic 0.1
        FAIL() << "expected BoundViolationError";
    } catch (const BoundViolationError& e) {
        EXPECT_EQ(e.bound, "lower (intrinsic value)");
    }
    try {
        implied_vol(1.5, 0.9, 1.0);
        FAIL() << "expected BoundViolationError";
    } catch (const BoundViolationError& e) {
        EXPECT_EQ(e.bound, "upper (spot)");
    }
    EXPECT_THROW(implied_vol(0.0, 1.1, 1.0), BoundViolationError);
}

TEST(ImpliedVol, BracketFailureIsReported) {
    // inside the strict bounds but above what w = 10 can reach
    EXPECT_THROW(implied_vol(1.0 - 1e-14, 1.0, 1.0), BracketError);
}

TEST(Smile, SymmetryAcrossMirroredStrikes) {
    for (double v : {0.0, 0.01, 0.015, 0.02}) {
        const SmileCurve curve = smile(base_params(v));
        ASSERT_TRUE(curve.excluded_strikes.empty());
        const std::size_t n = curve.strikes.size();
        ASSERT_EQ(n, 201u);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = n - 1 - i;
            EXPECT_NEAR(curve.strikes[i] * curve.strikes[j], 1.0, 1e-12);
            EXPECT_NEAR(curve.vols[i], curve.vols[j], 1e-8)
                << "v = " << v << " K = " << curve.strikes[i];
        }
    }
}

TEST(Smile, AtmSlopeVanishes) {
    const MixtureParams params = base_params(0.015);
    const double h = 1e-3;
    const double up = implied_vol(price(std::exp(h), params).call, std::exp(h), 1.0).w;
    const double down = implied_vol(price(std::exp(-h), params).call, std::exp(-h), 1.0).w;
    const double slope = (up - down) / (std::exp(h) - std::exp(-h));
    EXPECT_NEAR(slope, 0.0, 1e-6);
}

TEST(Smile, AtmVolsOrderedInV) {
    const double expected[][2] = {
        {0.0, 0.1002670265}, {0.01, 0.1003312415}, {0.015, 0.1007433015}, {0.02, 0.1019180004}};
    double prev = 0.0;
    for (const auto& row : expected) {
        const MixtureParams params = base_params(row[0]);
        const double atm = implied_vol(price(1.0, params).call, 1.0, 1.0).w;
        EXPECT_NEAR(atm, row[1], 1e-6) << "v = " << row[0];
        EXPECT_GT(atm, prev);
        prev = atm;
    }
}

TEST(Smile, WingVolsGrowTowardTheTails) {
    // finite-strike proxy for the diverging wings
    const MixtureParams params = base_params(0.0);
    const double expected[][2] = {{0.5, 0.12629748}, {1.0, 0.16156697}, {1.5, 0.19055300}};
    double prev = 0.0;
    for (const auto& row : expected) {
        const double strike = std::exp(row[0]);
        const double w = implied_vol(price(strike, params).call, strike, 1.0).w;
        EXPECT_NEAR(w, row[1], 1e-4) << "k = " << row[0];
        EXPECT_GT(w, prev);
        prev = w;
    }
}

TEST(Smile, DeepWingStrikesAreExcludedNotFabricated) {
    const MixtureParams params = base_params(0.0);
    std::vector<double> strikes = log_spaced_strikes(1.0, 0.1, 51);
    strikes.push_back(std::exp(3.0)); // call price far below 1e-14
    const SmileCurve curve = smile(params, strikes);
    ASSERT_EQ(curve.excluded_strikes.size(), 1u);
    EXPECT_NEAR(curve.excluded_strikes.front(), std::exp(3.0), 1e-12);
    EXPECT_EQ(curve.strikes.size(), 51u);
    EXPECT_EQ(curve.strikes.size(), curve.vols.size());
}

TEST(AtmCurvature, TwoRoutesAgree) {
    for (double v : {0.0, 0.015}) {
        const AtmCurvature result = atm_curvature(base_params(v));
        EXPECT_NEAR(result.finite_difference, result.formula,
                    1e-3 * std::abs(result.formula))
            << "v = " << v;
        EXPECT_GT(result.atm_vol, 0.0);
    }
}

TEST(AtmCurvature, SignsMatchAcrossTheFamily) {
    // strictly negative at v = 0 since f_0(0) = 0; changes sign once the
    // density at zero outgrows the Black-Scholes gamma
    for (double v : {0.0, 0.01, 0.015, 0.02}) {
        const AtmCurvature result = atm_curvature(base_params(v));
        EXPECT_EQ(result.finite_difference < 0.0, result.formula < 0.0) << "v = " << v;
    }
    const AtmCurvature limit_case = atm_curvature(base_params(0.0));
    EXPECT_LT(limit_case.formula, 0.0);
    EXPECT_NEAR(limit_case.formula, -9.97336847, 1e-4);
}

} // namespace
} // namespace vgsmile
