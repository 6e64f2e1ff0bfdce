#include "vgsmile/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vgsmile/implied.hpp"
#include "vgsmile/pricing.hpp"
#include "vgsmile/shape.hpp"
#include "vgsmile/specialfn.hpp"
#include "vgsmile/vgmodel.hpp"

#ifndef VGSMILE_VERSION
#define VGSMILE_VERSION "0.0.0"
#endif

namespace vgsmile::cli {

namespace {

using nlohmann::json;

std::string fmt(double value) {
    if (std::isnan(value)) return "nan";
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;

    void meta(const std::string& key, const std::string& value) {
        metadata.emplace_back(key, value);
    }
    void meta(const std::string& key, double value) { metadata.emplace_back(key, fmt(value)); }

    void write_csv(std::ostream& os) const {
        for (const auto& [key, value] : metadata) os << "# " << key << " = " << value << "\n";
        for (std::size_t j = 0; j < columns.size(); ++j)
            os << columns[j] << (j + 1 < columns.size() ? "," : "\n");
        for (const auto& row : rows) {
            for (std::size_t j = 0; j < row.size(); ++j)
                os << fmt(row[j]) << (j + 1 < row.size() ? "," : "\n");
        }
    }

    void write_json(std::ostream& os) const {
        json doc;
        json meta_obj = json::object();
        for (const auto& [key, value] : metadata) meta_obj[key] = value;
        doc["metadata"] = meta_obj;
        doc["columns"] = columns;
        doc["rows"] = rows;
        os << doc.dump(2) << "\n";
    }
};

struct Options {
    MixtureParams params;
    int grid_points = 201;
    double window = 0.15;
    std::string format = "csv";
    std::string out;
    std::uint64_t seed = 12345;
    Accuracy acc;
    std::vector<double> strikes;
    double x_min = -0.2;
    double x_max = 0.2;
    std::vector<double> v_list = {0.02, 0.015, 0.01, 0.005};
};

void stamp_common(Table& table, const Options& opt) {
    table.meta("tool", std::string("vgsmile ") + VGSMILE_VERSION);
    table.meta("v", opt.params.v);
    table.meta("c", opt.params.c);
    table.meta("lambda", opt.params.lambda);
    table.meta("mu", opt.params.mu);
    table.meta("T", opt.params.T);
    table.meta("S0", opt.params.S0);
    table.meta("rel_tol", opt.acc.rel_tol);
    table.meta("abs_tol", opt.acc.abs_tol);
    table.meta("seed", fmt(static_cast<double>(opt.seed)));
}

void emit(const Table& table, const Options& opt, const std::string& path_override = "") {
    const std::string path = path_override.empty() ? opt.out : path_override;
    if (path.empty()) {
        if (opt.format == "json")
            table.write_json(std::cout);
        else
            table.write_csv(std::cout);
        return;
    }
    std::ofstream os(path);
    if (!os) throw DomainError("cannot open output path: " + path);
    if (opt.format == "json")
        table.write_json(os);
    else
        table.write_csv(os);
}

std::vector<double> grid_strikes(const Options& opt) {
    return log_spaced_strikes(opt.params.S0, opt.window, opt.grid_points);
}

int cmd_price(const Options& opt) {
    Table table;
    stamp_common(table, opt);
    table.columns = {"K", "call", "put"};
    const std::vector<double> strikes = opt.strikes.empty() ? grid_strikes(opt) : opt.strikes;
    for (double strike : strikes) {
        const Quote quote = price(strike, opt.params, opt.acc);
        table.rows.push_back({strike, quote.call, quote.put});
    }
    emit(table, opt);
    return 0;
}

int cmd_smile(const Options& opt) {
    Table table;
    stamp_common(table, opt);
    table.columns = {"K", "sigma"};
    const SmileCurve curve = smile(opt.params, grid_strikes(opt), opt.acc);
    table.meta("excluded_strikes", fmt(static_cast<double>(curve.excluded_strikes.size())));
    for (std::size_t i = 0; i < curve.strikes.size(); ++i)
        table.rows.push_back({curve.strikes[i], curve.vols[i]});
    emit(table, opt);
    return 0;
}

int cmd_density(const Options& opt) {
    if (!(opt.x_min < opt.x_max))
        throw DomainError("density: requires x-min < x-max");
    Table table;
    stamp_common(table, opt);
    table.columns = {"x", "f_v", "f_0"};
    MixtureParams limit = opt.params;
    limit.v = 0.0;
    for (int i = 0; i < opt.grid_points; ++i) {
        const double x = opt.x_min + (opt.x_max - opt.x_min) * i / (opt.grid_points - 1);
        double fv, f0;
        try {
            fv = mixture_density(x, opt.params, opt.acc);
        } catch (const SingularityError&) {
            fv = std::numeric_limits<double>::quiet_NaN();
        }
        try {
            f0 = double_gamma_density(x, limit);
        } catch (const SingularityError&) {
            f0 = std::numeric_limits<double>::quiet_NaN();
        }
        table.rows.push_back({x, fv, f0});
    }
    emit(table, opt);
    return 0;
}

int cmd_classify(const Options& opt) {
    const SmileCurve curve = smile(opt.params, grid_strikes(opt), opt.acc);
    const ShapeReport report = classify(curve, opt.params, opt.acc);

    Table table;
    stamp_common(table, opt);
    table.meta("classification", to_string(report.classification));
    table.meta("sigma_star", report.sigma_star);
    table.meta("sign_sequence", report.sign_sequence);
    table.meta("n_vol", fmt(static_cast<double>(report.n_vol)));
    table.meta("widenings", fmt(static_cast<double>(report.widenings)));
    table.meta("geometric_symmetry",
               report.conditions.geometric_symmetry ? "pass" : "fail");
    table.meta("symmetry_max_deviation", report.conditions.symmetry_max_deviation);
    table.meta("r_star", report.conditions.r_star);
    table.meta("dip_at_zero", report.conditions.dip_at_zero ? "pass" : "fail");
    table.meta("dip_lhs", report.conditions.dip_lhs);
    table.meta("dip_rhs", report.conditions.dip_rhs);
    if (!report.diagnostic.empty()) table.meta("diagnostic", report.diagnostic);
    table.columns = {"K", "sigma"};
    for (std::size_t i = 0; i < curve.strikes.size(); ++i)
        table.rows.push_back({curve.strikes[i], curve.vols[i]});
    emit(table, opt);
    return 0;
}

int cmd_convergence(const Options& opt) {
    if (!(opt.x_min < opt.x_max))
        throw DomainError("convergence: requires x-min < x-max");
    Table table;
    stamp_common(table, opt);
    table.columns = {"v", "sup_norm"};
    MixtureParams limit = opt.params;
    limit.v = 0.0;
    for (double v : opt.v_list) {
        MixtureParams moved = opt.params;
        moved.v = v;
        double sup = 0.0;
        for (int i = 0; i < opt.grid_points; ++i) {
            const double x = opt.x_min + (opt.x_max - opt.x_min) * i / (opt.grid_points - 1);
            double f0;
            try {
                f0 = double_gamma_density(x, limit);
            } catch (const SingularityError&) {
                continue;
            }
            sup = std::max(sup, std::abs(mixture_density(x, moved, opt.acc) - f0));
        }
        table.rows.push_back({v, sup});
    }
    emit(table, opt);
    return 0;
}

int cmd_figures(const Options& opt) {
    namespace fs = std::filesystem;
    const fs::path dir = opt.out.empty() ? fs::path(".") : fs::path(opt.out);
    fs::create_directories(dir);
    const std::string ext = (opt.format == "json") ? ".json" : ".csv";
    const std::vector<double> vs = {0.0, 0.01, 0.015, 0.02};

    // densities of the mixture family across v
    Table fig1;
    stamp_common(fig1, opt);
    fig1.columns = {"x"};
    for (double v : vs) fig1.columns.push_back("f_v" + fmt(v));
    for (int i = 0; i < opt.grid_points; ++i) {
        const double x = opt.x_min + (opt.x_max - opt.x_min) * i / (opt.grid_points - 1);
        std::vector<double> row = {x};
        for (double v : vs) {
            MixtureParams moved = opt.params;
            moved.v = v;
            try {
                row.push_back(mixture_density(x, moved, opt.acc));
            } catch (const SingularityError&) {
                row.push_back(std::numeric_limits<double>::quiet_NaN());
            }
        }
        fig1.rows.push_back(row);
    }
    emit(fig1, opt, (dir / ("figure1_densities" + ext)).string());

    // double gamma vs the normal at the smile-minimum level, and log |diff|
    MixtureParams limit = opt.params;
    limit.v = 0.0;
    const SmileCurve base = smile(limit, grid_strikes(opt), opt.acc);
    const double sigma_star = *std::min_element(base.vols.begin(), base.vols.end());
    Table fig2;
    stamp_common(fig2, opt);
    fig2.meta("sigma_star", sigma_star);
    fig2.columns = {"x", "f_0", "phi_sigma", "log_abs_diff"};
    const double span = std::max(0.6, 6.0 * sigma_star);
    for (int i = 0; i < opt.grid_points; ++i) {
        const double x = -span + 2.0 * span * i / (opt.grid_points - 1);
        double f0;
        try {
            f0 = double_gamma_density(x, limit);
        } catch (const SingularityError&) {
            f0 = std::numeric_limits<double>::quiet_NaN();
        }
        const double phi = bs_logprice_density(x, TotalVol(sigma_star));
        fig2.rows.push_back({x, f0, phi, std::log(std::abs(f0 - phi))});
    }
    emit(fig2, opt, (dir / ("figure2_double_gamma_vs_normal" + ext)).string());

    // smile curves across v
    Table fig3;
    stamp_common(fig3, opt);
    fig3.columns = {"K"};
    for (double v : vs) fig3.columns.push_back("sigma_v" + fmt(v));
    std::vector<SmileCurve> curves;
    for (double v : vs) {
        MixtureParams moved = opt.params;
        moved.v = v;
        curves.push_back(smile(moved, grid_strikes(opt), opt.acc));
        fig3.meta("classification_v" + fmt(v),
                  to_string(classify(curves.back(), moved, opt.acc).classification));
    }
    for (std::size_t i = 0; i < curves.front().strikes.size(); ++i) {
        std::vector<double> row = {curves.front().strikes[i]};
        for (const SmileCurve& curve : curves) row.push_back(curve.vols[i]);
        fig3.rows.push_back(row);
    }
    emit(fig3, opt, (dir / ("figure3_smiles" + ext)).string());

    std::cout << (dir / ("figure1_densities" + ext)).string() << "\n"
              << (dir / ("figure2_double_gamma_vs_normal" + ext)).string() << "\n"
              << (dir / ("figure3_smiles" + ext)).string() << "\n";
    return 0;
}

void report_error(const std::string& type, const std::string& operation,
                  const std::string& message) {
    json record;
    record["error"] = {{"type", type}, {"operation", operation}, {"message", message}};
    std::cerr << record.dump() << "\n";
}

} // namespace

int run(int argc, const char* const* argv) {
    Options opt;
    CLI::App app{"variance-gamma mixture option pricing, smiles, and smile-shape classification"};
    app.set_config("--config", "", "flat key = value config file mirroring the flag names");
    app.fallthrough();

    app.add_option("--v", opt.params.v, "component volatility (0 selects the double-gamma limit)")
        ->capture_default_str();
    app.add_option("--c", opt.params.c, "Gamma shape rate per unit time")->capture_default_str();
    app.add_option("--lambda", opt.params.lambda, "Gamma rate parameter")->capture_default_str();
    app.add_option("--mu", opt.params.mu, "drift divergence (requires mu < 2 lambda)")
        ->capture_default_str();
    app.add_option("--T", opt.params.T, "horizon in years")->capture_default_str();
    app.add_option("--S0", opt.params.S0, "spot price")->capture_default_str();
    app.add_option("--grid-points", opt.grid_points, "points per grid")
        ->capture_default_str()
        ->check(CLI::Range(9, 100001));
    app.add_option("--log-moneyness-window", opt.window, "strike window half-width in log-moneyness")
        ->capture_default_str();
    app.add_option("--format", opt.format, "output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", opt.out, "output path (directory for `figures`); stdout if omitted");
    app.add_option("--seed", opt.seed, "seed for sampling-based checks")->capture_default_str();
    app.add_option("--rel-tol", opt.acc.rel_tol, "relative tolerance")->capture_default_str();
    app.add_option("--abs-tol", opt.acc.abs_tol, "absolute tolerance")->capture_default_str();

    auto* price_cmd = app.add_subcommand("price", "call/put quotes over strikes: K,call,put");
    price_cmd->add_option("--strikes", opt.strikes, "explicit strike list (defaults to the grid)")
        ->delimiter(',');
    auto* smile_cmd = app.add_subcommand("smile", "implied total-vol curve: K,sigma");
    auto* density_cmd =
        app.add_subcommand("density", "model density and its double-gamma limit: x,f_v,f_0");
    auto* classify_cmd =
        app.add_subcommand("classify", "smile-shape report (W / W+ / not-W) with evidence");
    auto* convergence_cmd = app.add_subcommand(
        "convergence", "sup-norm distance of f_v to the double-gamma limit: v,sup_norm");
    convergence_cmd->add_option("--v-list", opt.v_list, "v values for the sweep")->delimiter(',');
    auto* figures_cmd = app.add_subcommand(
        "figures", "emit density, crossing, and smile data files for the default family");
    for (auto* cmd : {density_cmd, convergence_cmd, figures_cmd}) {
        cmd->add_option("--x-min", opt.x_min, "left end of the x grid")->capture_default_str();
        cmd->add_option("--x-max", opt.x_max, "right end of the x grid")->capture_default_str();
    }
    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        report_error("validation", "argument parsing", e.what());
        return 2;
    }

    const std::string command = app.get_subcommands().empty()
                                    ? std::string("")
                                    : app.get_subcommands().front()->get_name();
    if (command.empty()) {
        std::cerr << app.help();
        return 2;
    }

    try {
        opt.acc.validate();
        opt.params.validate();
        if (command == "price") return cmd_price(opt);
        if (command == "smile") return cmd_smile(opt);
        if (command == "density") return cmd_density(opt);
        if (command == "classify") return cmd_classify(opt);
        if (command == "convergence") return cmd_convergence(opt);
        if (command == "figures") return cmd_figures(opt);
        report_error("validation", "command dispatch", "unknown command: " + command);
        return 2;
    } catch (const ConvergenceError& e) {
        report_error("numerical", command, e.what());
        return 3;
    } catch (const BracketError& e) {
        report_error("numerical", command, e.what());
        return 3;
    } catch (const DomainError& e) {
        report_error("validation", command, e.what());
        return 2;
    } catch (const Error& e) {
        report_error("numerical", command, e.what());
        return 3;
    }
}

} // namespace vgsmile::cli
