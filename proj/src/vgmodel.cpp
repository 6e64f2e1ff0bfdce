#include "vgsmile/vgmodel.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "vgsmile/specialfn.hpp"

namespace vgsmile {

namespace {

constexpr double kLogSqrt2OverPi = -0.22579135264472744; // log sqrt(2/pi)

void require_positive_v(const MixtureParams& params, const char* who) {
    if (!(params.v > 0.0)) {
        std::ostringstream msg;
        msg << who << ": defined only for v > 0 (v = 0 is the double-gamma limit)";
        throw DomainError(msg.str());
    }
}

} // namespace

void MixtureParams::validate() const {
    if (!(v >= 0.0)) throw DomainError("MixtureParams: v must be >= 0");
    if (!(c > 0.0)) throw DomainError("MixtureParams: c must be > 0");
    if (!(lambda > 0.0)) throw DomainError("MixtureParams: lambda must be > 0");
    if (!(mu > 0.0)) throw DomainError("MixtureParams: mu must be > 0");
    if (!(T > 0.0)) throw DomainError("MixtureParams: T must be > 0");
    if (!(S0 > 0.0)) throw DomainError("MixtureParams: S0 must be > 0");
    if (!(mu < 2.0 * lambda)) {
        std::ostringstream msg;
        msg << "MixtureParams: requires mu < 2*lambda (got mu = " << mu
            << ", 2*lambda = " << 2.0 * lambda
            << "); equality degenerates the mixture weight b to 0";
        throw DomainError(msg.str());
    }
}

ComponentParams derive(const MixtureParams& params) {
    params.validate();
    ComponentParams cp;
    cp.cT = params.cT();
    cp.lambda_plus = params.lambda / params.mu + 0.5;
    cp.lambda_minus = params.lambda / params.mu - 0.5;
    cp.a = std::pow(1.0 + params.mu / (2.0 * params.lambda), cp.cT);
    cp.b = std::pow(1.0 - params.mu / (2.0 * params.lambda), cp.cT);
    cp.p = cp.a / (cp.a + cp.b);

    if (params.v > 0.0) {
        const double v2 = params.v * params.v;
        cp.has_vg_fields = true;
        cp.alpha = std::sqrt(params.mu * params.mu / (v2 * v2) +
                             2.0 * params.lambda / v2 + 0.25);
        cp.beta_plus = params.mu / v2 - 0.5;
        cp.beta_minus = -params.mu / v2 - 0.5;
        const double lg = log_gamma(cp.cT);
        cp.log_gamma_plus =
            kLogSqrt2OverPi - lg + cp.cT * std::log((params.lambda + params.mu / 2.0) / v2);
        cp.log_gamma_minus =
            kLogSqrt2OverPi - lg + cp.cT * std::log((params.lambda - params.mu / 2.0) / v2);
        cp.gamma_plus = std::exp(cp.log_gamma_plus);
        cp.gamma_minus = std::exp(cp.log_gamma_minus);
        if (!(cp.alpha > std::abs(cp.beta_plus)) || !(cp.alpha > std::abs(cp.beta_minus)))
            throw DomainError("derive: alpha <= |beta|, component density not integrable");
    } else {
        cp.alpha = cp.beta_plus = cp.beta_minus = std::nan("");
        cp.gamma_plus = cp.gamma_minus = std::nan("");
        cp.log_gamma_plus = cp.log_gamma_minus = std::nan("");
    }
    return cp;
}

double ell(double u, double c, double lambda) {
    if (!(c > 0.0) || !(lambda > 0.0))
        throw DomainError("ell: requires c > 0 and lambda > 0");
    if (!(u < lambda)) {
        std::ostringstream msg;
        msg << "ell: argument u = " << u << " at or beyond the singularity u = " << lambda;
        throw DomainError(msg.str());
    }
    return -c * std::log1p(-u / lambda);
}

double ell_pm(double u, Component s, const MixtureParams& params) {
    params.validate();
    const double tilt = (s == Component::plus) ? params.mu / 2.0 : -params.mu / 2.0;
    // ell_pm(u) = ell(u -+ mu/2) - ell(-+ mu/2), singular at lambda +- mu/2
    const double bound = params.lambda + tilt;
    if (!(u < bound)) {
        std::ostringstream msg;
        msg << "ell_pm: argument u = " << u << " at or beyond the singularity u = " << bound;
        throw DomainError(msg.str());
    }
    return ell(u - tilt, params.c, params.lambda) - ell(-tilt, params.c, params.lambda);
}

double psi(double u, Component s, const MixtureParams& params) {
    const double v2 = params.v * params.v;
    const double drift = (s == Component::plus) ? params.mu : -params.mu;
    const double inner = 0.5 * v2 * (u * u - u) + drift * u;
    return ell_pm(inner, s, params);
}

std::pair<double, double> mgf_finite_interval(const MixtureParams& params) {
    params.validate();
    if (params.v == 0.0) {
        const double lp = params.lambda / params.mu + 0.5;
        return {1.0 - lp, lp};
    }
    // per component, roots of v^2 u^2/2 + (+-mu - v^2/2) u -+ mu/2 - lambda = 0
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    const double A = 0.5 * params.v * params.v;
    for (const double sgn : {1.0, -1.0}) {
        const double B = sgn * params.mu - A;
        const double C = -sgn * params.mu / 2.0 - params.lambda;
        const double disc = std::sqrt(B * B - 4.0 * A * C);
        const double upper = (-B + disc) / (2.0 * A);
        const double lower = (-B - disc) / (2.0 * A);
        hi = std::min(hi, upper);
        lo = std::max(lo, lower);
    }
    return {lo, hi};
}

double mgf(double u, const MixtureParams& params) {
    const auto [lo, hi] = mgf_finite_interval(params);
    if (!(u > lo) || !(u < hi)) {
        std::ostringstream msg;
        msg << "mgf: u = " << u << " outside the finiteness interval (" << lo << ", " << hi << ")";
        throw DomainError(msg.str());
    }
    const ComponentParams cp = derive(params);
    const double v2 = params.v * params.v;
    const double quad = 0.5 * v2 * (u * u - u);
    const double arg_minus = quad - params.mu * u + params.mu / 2.0;
    const double arg_plus = quad + params.mu * u - params.mu / 2.0;
    const double weight = cp.a * cp.b / (cp.a + cp.b);
    return weight * (std::exp(params.T * ell(arg_minus, params.c, params.lambda)) +
                     std::exp(params.T * ell(arg_plus, params.c, params.lambda)));
}

double log_component_density(double x, Component s, const MixtureParams& params,
                             const Accuracy& acc) {
    require_positive_v(params, "component_density");
    const ComponentParams cp = derive(params);
    const double nu = cp.cT - 0.5;
    const double ax = std::abs(x);
    if (ax == 0.0) {
        if (!(nu > 0.0))
            throw SingularityError("component_density: singular at x = 0 for cT <= 1/2");
        // |x/alpha|^nu K_nu(alpha|x|) -> Gamma(nu) 2^{nu-1} alpha^{-2 nu}
        return cp.log_gamma_coef(s) + log_gamma(nu) + (nu - 1.0) * M_LN2 -
               2.0 * nu * std::log(cp.alpha);
    }
    const double z = cp.alpha * ax;
    return cp.log_gamma_coef(s) + nu * std::log(ax / cp.alpha) + cp.beta(s) * x - z +
           std::log(bessel_k_scaled(std::abs(nu), z, acc));
}

double component_density(double x, Component s, const MixtureParams& params,
                         const Accuracy& acc) {
    return std::exp(log_component_density(x, s, params, acc));
}

double mixture_density(double x, const MixtureParams& params, const Accuracy& acc) {
    params.validate();
    if (params.v == 0.0) return double_gamma_density(x, params);
    const ComponentParams cp = derive(params);
    return (cp.a * component_density(x, Component::minus, params, acc) +
            cp.b * component_density(x, Component::plus, params, acc)) /
           (cp.a + cp.b);
}

double double_gamma_density(double x, const MixtureParams& params) {
    params.validate();
    const ComponentParams cp = derive(params);
    if (x == 0.0) {
        if (cp.cT > 1.0) return 0.0;
        const auto [left, right] = double_gamma_zero_limits(params);
        if (cp.cT == 1.0)
            throw SingularityError(
                "double_gamma_density: jump at x = 0 for cT = 1; one-sided limits attached",
                left, right);
        throw SingularityError("double_gamma_density: singular at x = 0 for cT < 1");
    }
    const double lg = log_gamma(cp.cT);
    if (x > 0.0) {
        return cp.b / (cp.a + cp.b) *
               std::exp(cp.cT * std::log(cp.lambda_plus) - lg +
                        (cp.cT - 1.0) * std::log(x) - cp.lambda_plus * x);
    }
    return cp.a / (cp.a + cp.b) *
           std::exp(cp.cT * std::log(cp.lambda_minus) - lg +
                    (cp.cT - 1.0) * std::log(-x) + cp.lambda_minus * x);
}

std::pair<double, double> double_gamma_zero_limits(const MixtureParams& params) {
    const ComponentParams cp = derive(params);
    const double inf = std::numeric_limits<double>::infinity();
    if (cp.cT > 1.0) return {0.0, 0.0};
    if (cp.cT == 1.0)
        return {cp.a / (cp.a + cp.b) * cp.lambda_minus, cp.b / (cp.a + cp.b) * cp.lambda_plus};
    return {inf, inf};
}

StdVGParams to_std_vg(const MixtureParams& params, Component s) {
    params.validate();
    if (params.v == 0.0)
        throw NotRepresentableError(
            "to_std_vg: the v = 0 limit has no (sigma, theta, kappa) representation");
    const double sgn = (s == Component::plus) ? 1.0 : -1.0;
    const double rate = params.lambda + sgn * params.mu / 2.0;
    const double v2 = params.v * params.v;
    StdVGParams vg;
    vg.sigma_vg = std::sqrt(params.c * v2 / rate);
    vg.theta = params.c * (-v2 / 2.0 + sgn * params.mu) / rate;
    vg.kappa = 1.0 / params.c;
    vg.component = s;
    return vg;
}

double psi_std_vg(double u, const StdVGParams& vg) {
    const double arg =
        1.0 - 0.5 * u * u * vg.sigma_vg * vg.sigma_vg * vg.kappa - vg.theta * vg.kappa * u;
    if (!(arg > 0.0))
        throw DomainError("psi_std_vg: argument outside the finiteness region");
    return -std::log(arg) / vg.kappa;
}

std::vector<double> sample(const MixtureParams& params, std::size_t n, std::uint64_t seed) {
    params.validate();
    if (n < 1) throw DomainError("sample: requires n >= 1");
    const ComponentParams cp = derive(params);
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution pick_minus(cp.p);
    std::gamma_distribution<double> gamma_minus(cp.cT, 1.0 / (params.lambda - params.mu / 2.0));
    std::gamma_distribution<double> gamma_plus(cp.cT, 1.0 / (params.lambda + params.mu / 2.0));
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<double> draws(n);
    const double v = params.v;
    for (std::size_t i = 0; i < n; ++i) {
        const bool minus = pick_minus(rng);
        const double time_change = minus ? gamma_minus(rng) : gamma_plus(rng);
        const double drift = (minus ? -params.mu : params.mu) - 0.5 * v * v;
        double x = drift * time_change;
        if (v > 0.0) x += v * std::sqrt(time_change) * gauss(rng);
        draws[i] = x;
    }
    return draws;
}

DensityGrid make_density_grid(const MixtureParams& params, std::vector<double> xs,
                              const Accuracy& acc) {
    DensityGrid grid;
    grid.xs = std::move(xs);
    grid.values.reserve(grid.xs.size());
    for (double x : grid.xs) grid.values.push_back(mixture_density(x, params, acc));
    grid.validate();
    return grid;
}

void DensityGrid::validate() const {
    if (xs.size() != values.size())
        throw DomainError("DensityGrid: xs and values must have equal length");
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        if (!(xs[i] < xs[i + 1]))
            throw DomainError("DensityGrid: xs must be strictly increasing");
    for (double f : values)
        if (!(f >= 0.0)) throw DomainError("DensityGrid: density values must be >= 0");
}

} // namespace vgsmile
