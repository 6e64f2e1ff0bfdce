#ifndef VGSMILE_SHAPE_HPP
#define VGSMILE_SHAPE_HPP

#include <span>
#include <string>
#include <vector>

#include "vgsmile/implied.hpp"

namespace vgsmile {

enum class SmileShape { W, W_PLUS, NOT_W };

const char* to_string(SmileShape s);

struct SignScan {
    int changes = 0;
    std::string sequence; // collapsed runs, e.g. "+-+-+"
};

// Counts strict sign alternations; entries with |value| < tolerance are
// skipped rather than counted as a sign. Throws DomainError when every entry
// is within tolerance.
SignScan count_sign_changes(std::span<const double> values, double tolerance);

struct ConditionChecks {
    bool geometric_symmetry = false;
    double symmetry_max_deviation = 0.0;
    double r_star = 0.0; // finite moment-explosion order (semi-heavy tails)
    bool dip_at_zero = false;
    double dip_lhs = 0.0; // f(0)
    double dip_rhs = 0.0; // exp(-w^2/8) / (sqrt(2 pi) w) at w = sigma(S0)
};

struct ShapeReport {
    SmileShape classification = SmileShape::NOT_W;
    double sigma_star = 0.0;  // certifying level (NaN when NOT_W)
    std::string sign_sequence;
    int n_vol = 0;
    ConditionChecks conditions;
    int widenings = 0;
    std::string diagnostic;
};

// Moment explosion order r* = sup{u : m(u) < infty}; always finite. For v > 0
// this is the smaller positive root over the two component quadratics and
// equals alpha - beta_plus; for v = 0 it is lambda/mu + 1/2.
double r_star(const MixtureParams& params);

struct DipCheck {
    bool pass = false;
    double lhs = 0.0;
    double rhs = 0.0;
    double atm_vol = 0.0;
};

// Strict inequality f(0) < phi_{sigma(S0)}(0), with both sides reported.
DipCheck dip_at_zero(const MixtureParams& params, const Accuracy& acc = {});

// Scans candidate levels sigma* (midpoints between consecutive distinct local
// extremum values, plus 50 evenly spaced fallback levels) for the W pattern
// +-+-+ (exactly four sign changes) or the (W+) pattern (even count >= 4,
// terminal signs +). Widens the strike window by 1.5x, up to three times, when
// a promising pattern fails only its terminal signs.
ShapeReport classify(const SmileCurve& curve, const MixtureParams& params,
                     const Accuracy& acc = {});

struct CrossingReport {
    double sigma_star = 0.0;
    int n_pdf = 0;
    std::vector<double> crossing_xs;
};

// Grid covering [-span, span] with span = max(6 sigma*, mass extent of the
// mixture density); includes x = 0 whenever the density is defined there.
std::vector<double> crossing_grid(const MixtureParams& params, TotalVol sigma_star,
                                  int points = 4001);

// Sign changes of f - phi_{sigma*} on the grid, each bracket refined by
// bisection to locate the crossing abscissa.
CrossingReport count_density_crossings(const MixtureParams& params, TotalVol sigma_star,
                                       std::span<const double> grid,
                                       const Accuracy& acc = {});

struct DescartesCoefficients {
    double a0 = 0.0; // log(e^{sigma^2/8} sqrt(2 pi) sigma lambda_+^{cT} / Gamma(cT))
    double a1 = 0.0; // cT - 1
    double a2 = 0.0; // -lambda/mu
    double a3 = 0.0; // 1/(2 sigma^2)
    int sign_changes = 0;
};

// Coefficients of log h_+(x) - log phi_sigma(x) over (1, log x, x, x^2) for
// the double-gamma model, plus the sign-change count of the sequence. The
// count is <= 3 always and <= 2 when cT < 1.
DescartesCoefficients descartes_coefficients(const MixtureParams& params, TotalVol sigma);

} // namespace vgsmile

#endif
