#include "vgsmile/shape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "vgsmile/specialfn.hpp"

namespace vgsmile {

namespace {

constexpr double kCurveTolerance = 1e-9;    // vol units
constexpr double kDensityTolerance = 1e-12; // density units
constexpr double kSymmetryGate = 1e-8;

struct LevelScan {
    double level = 0.0;
    SignScan scan;
    double margin = 0.0; // min distance from the curve to the level
};

bool is_w_pattern(const SignScan& s) { return s.changes == 4 && s.sequence == "+-+-+"; }

bool is_w_plus_pattern(const SignScan& s) {
    return s.changes >= 4 && s.changes % 2 == 0 && !s.sequence.empty() &&
           s.sequence.front() == '+' && s.sequence.back() == '+';
}

// A pattern with alternations whose terminal signs are not both +: the level
// may still be crossed back once the window is wide enough for the wings.
bool is_truncated_pattern(const SignScan& s) {
    return s.changes >= 2 && !is_w_pattern(s) && !is_w_plus_pattern(s) &&
           (s.sequence.front() != '+' || s.sequence.back() != '+');
}

std::vector<double> candidate_levels(const std::vector<double>& vols) {
    std::set<double> extremum_values;
    for (std::size_t i = 1; i + 1 < vols.size(); ++i) {
        const bool local_max = vols[i] > vols[i - 1] && vols[i] > vols[i + 1];
        const bool local_min = vols[i] < vols[i - 1] && vols[i] < vols[i + 1];
        if (local_max || local_min) extremum_values.insert(vols[i]);
    }
    std::vector<double> levels;
    if (extremum_values.size() >= 2) {
        auto it = extremum_values.begin();
        double prev = *it++;
        for (; it != extremum_values.end(); ++it) {
            levels.push_back(0.5 * (prev + *it));
            prev = *it;
        }
    }
    const auto [lo_it, hi_it] = std::minmax_element(vols.begin(), vols.end());
    const double lo = *lo_it, hi = *hi_it;
    for (int j = 1; j <= 50; ++j) levels.push_back(lo + (hi - lo) * j / 51.0);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    return levels;
}

std::vector<LevelScan> scan_levels(const SmileCurve& curve) {
    std::vector<LevelScan> scans;
    std::vector<double> shifted(curve.vols.size());
    for (double level : candidate_levels(curve.vols)) {
        for (std::size_t i = 0; i < curve.vols.size(); ++i) shifted[i] = curve.vols[i] - level;
        LevelScan ls;
        ls.level = level;
        try {
            ls.scan = count_sign_changes(shifted, kCurveTolerance);
        } catch (const DomainError&) {
            continue; // level indistinguishable from the whole curve
        }
        ls.margin = std::numeric_limits<double>::infinity();
        for (double d : shifted) ls.margin = std::min(ls.margin, std::abs(d));
        scans.push_back(ls);
    }
    return scans;
}

ConditionChecks run_condition_checks(const MixtureParams& params, const Accuracy& acc) {
    ConditionChecks checks;
    checks.r_star = r_star(params);

    double max_dev = 0.0;
    const int n = 121;
    for (int i = 0; i < n; ++i) {
        const double x = -0.3 + 0.6 * i / (n - 1);
        double lhs, rhs;
        if (params.v == 0.0 && x == 0.0) continue;
        lhs = std::exp(x / 2.0) * mixture_density(x, params, acc);
        rhs = std::exp(-x / 2.0) * mixture_density(-x, params, acc);
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
        max_dev = std::max(max_dev, std::abs(lhs - rhs) / scale);
    }
    checks.symmetry_max_deviation = max_dev;
    checks.geometric_symmetry = max_dev < kSymmetryGate;

    const DipCheck dip = dip_at_zero(params, acc);
    checks.dip_at_zero = dip.pass;
    checks.dip_lhs = dip.lhs;
    checks.dip_rhs = dip.rhs;
    return checks;
}

} // namespace

const char* to_string(SmileShape s) {
    switch (s) {
        case SmileShape::W: return "W";
        case SmileShape::W_PLUS: return "W+";
        case SmileShape::NOT_W: return "not-W";
    }
    return "?";
}

SignScan count_sign_changes(std::span<const double> values, double tolerance) {
    if (!(tolerance >= 0.0))
        throw DomainError("count_sign_changes: tolerance must be >= 0");
    SignScan out;
    char prev = 0;
    for (double value : values) {
        if (!std::isfinite(value))
            throw DomainError("count_sign_changes: values must be finite");
        if (std::abs(value) < tolerance) continue; // near-zero: skipped, not a sign
        const char sign = value > 0.0 ? '+' : '-';
        if (sign != prev) {
            out.sequence.push_back(sign);
            if (prev != 0) ++out.changes;
            prev = sign;
        }
    }
    if (out.sequence.empty())
        throw DomainError("count_sign_changes: degenerate input, all values within tolerance");
    return out;
}

double r_star(const MixtureParams& params) {
    return mgf_finite_interval(params).second;
}

DipCheck dip_at_zero(const MixtureParams& params, const Accuracy& acc) {
    params.validate();
    if (std::abs(params.S0 - 1.0) > 1e-12)
        throw DomainError("dip_at_zero: S0 must be normalized to 1");
    DipCheck check;
    if (params.v == 0.0 && params.cT() <= 1.0) {
        // density unbounded (or a jump) at 0: the dip inequality cannot hold
        check.lhs = double_gamma_zero_limits(params).second;
        if (params.cT() < 1.0) check.lhs = std::numeric_limits<double>::infinity();
    } else {
        check.lhs = mixture_density(0.0, params, acc);
    }
    const Quote atm = price(params.S0, params, acc);
    check.atm_vol = implied_vol(atm.call, params.S0, params.S0, acc).w;
    check.rhs = bs_gamma_atm(TotalVol(check.atm_vol));
    check.pass = check.lhs < check.rhs;
    return check;
}

ShapeReport classify(const SmileCurve& curve, const MixtureParams& params, const Accuracy& acc) {
    if (curve.strikes.size() < 50)
        throw DomainError("classify: requires a curve with at least 50 points");

    ShapeReport report;
    report.conditions = run_condition_checks(params, acc);
    report.sigma_star = std::numeric_limits<double>::quiet_NaN();

    SmileCurve working = curve;
    double window = 0.0;
    for (double strike : curve.strikes)
        window = std::max(window, std::abs(std::log(strike / curve.S0)));

    for (int round = 0;; ++round) {
        const std::vector<LevelScan> scans = scan_levels(working);

        const LevelScan* best_w = nullptr;
        const LevelScan* best_w_plus = nullptr;
        const LevelScan* best_any = nullptr;
        bool truncated = false;
        for (const LevelScan& ls : scans) {
            if (is_w_pattern(ls.scan)) {
                if (!best_w || ls.margin > best_w->margin) best_w = &ls;
            } else if (is_w_plus_pattern(ls.scan)) {
                if (!best_w_plus || ls.margin > best_w_plus->margin) best_w_plus = &ls;
            } else if (is_truncated_pattern(ls.scan)) {
                truncated = true;
            }
            if (!best_any || ls.scan.changes > best_any->scan.changes) best_any = &ls;
        }

        if (best_w || best_w_plus) {
            const LevelScan& winner = best_w ? *best_w : *best_w_plus;
            report.classification = best_w ? SmileShape::W : SmileShape::W_PLUS;
            report.sigma_star = winner.level;
            report.sign_sequence = winner.scan.sequence;
            report.n_vol = winner.scan.changes;
            report.widenings = round;
            return report;
        }
        if (!truncated || round >= 3) {
            report.classification = SmileShape::NOT_W;
            if (best_any) {
                report.sign_sequence = best_any->scan.sequence;
                report.n_vol = best_any->scan.changes;
            } else {
                report.diagnostic = "degenerate curve: no level separates the sampled vols";
            }
            if (truncated)
                report.diagnostic = "truncated pattern persists after window widening";
            report.widenings = round;
            return report;
        }
        window *= 1.5;
        working = smile(params,
                        log_spaced_strikes(curve.S0, window,
                                           static_cast<int>(curve.strikes.size() +
                                                            curve.excluded_strikes.size())),
                        acc);
    }
}

std::vector<double> crossing_grid(const MixtureParams& params, TotalVol sigma_star, int points) {
    params.validate();
    if (points < 9) throw DomainError("crossing_grid: requires at least 9 points");

    auto log_density_small = [&](double x) {
        if (params.v == 0.0 && x == 0.0) return false;
        return mixture_density(x, params) < 1e-18;
    };
    double extent = std::max(0.5, 6.0 * sigma_star.w);
    while (!(log_density_small(extent) && log_density_small(-extent)) && extent < 1e4)
        extent *= 1.5;

    std::vector<double> xs(points);
    const bool density_defined_at_zero = params.v > 0.0 || params.cT() > 1.0;
    const int half = points / 2;
    for (int i = 0; i < points; ++i) xs[i] = -extent + 2.0 * extent * i / (points - 1);
    if (density_defined_at_zero) {
        xs[half] = 0.0; // anchor the central dip exactly
    } else if (xs[half] == 0.0) {
        xs[half] = 0.25 * (xs[half + 1] - xs[half]);
    }
    return xs;
}

CrossingReport count_density_crossings(const MixtureParams& params, TotalVol sigma_star,
                                       std::span<const double> grid, const Accuracy& acc) {
    params.validate();
    if (grid.size() < 9) throw DomainError("count_density_crossings: degenerate grid");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            throw DomainError("count_density_crossings: grid must be strictly increasing");
    if (grid.front() > -6.0 * sigma_star.w || grid.back() < 6.0 * sigma_star.w)
        throw DomainError("count_density_crossings: grid must span [-6 sigma*, 6 sigma*]");

    auto delta = [&](double x) {
        return mixture_density(x, params, acc) - bs_logprice_density(x, sigma_star);
    };

    CrossingReport report;
    report.sigma_star = sigma_star.w;

    char prev_sign = 0;
    double prev_x = 0.0;
    for (double x : grid) {
        const double d = delta(x);
        if (std::abs(d) < kDensityTolerance) continue;
        const char sign = d > 0.0 ? '+' : '-';
        if (prev_sign != 0 && sign != prev_sign) {
            ++report.n_pdf;
            double lo = prev_x, hi = x;
            double flo = delta(lo);
            for (int it = 0; it < 80 && hi - lo > 1e-12 * (1.0 + std::abs(lo)); ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = delta(mid);
                if ((fm > 0.0) == (flo > 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            report.crossing_xs.push_back(0.5 * (lo + hi));
        }
        prev_sign = sign;
        prev_x = x;
    }
    return report;
}

DescartesCoefficients descartes_coefficients(const MixtureParams& params, TotalVol sigma) {
    params.validate();
    if (params.v != 0.0)
        throw DomainError("descartes_coefficients: defined for the double-gamma model (v = 0)");
    const double cT = params.cT();
    const double lambda_plus = params.lambda / params.mu + 0.5;
    DescartesCoefficients coeffs;
    const double w = sigma.w;
    coeffs.a0 = w * w / 8.0 + std::log(std::sqrt(2.0 * M_PI) * w) + cT * std::log(lambda_plus) -
                log_gamma(cT);
    coeffs.a1 = cT - 1.0;
    coeffs.a2 = -params.lambda / params.mu;
    coeffs.a3 = 1.0 / (2.0 * w * w);

    const double seq[4] = {coeffs.a0, coeffs.a1, coeffs.a2, coeffs.a3};
    char prev = 0;
    for (double value : seq) {
        if (value == 0.0) continue;
        const char sign = value > 0.0 ? '+' : '-';
        if (prev != 0 && sign != prev) ++coeffs.sign_changes;
        prev = sign;
    }
    return coeffs;
}

} // namespace vgsmile
