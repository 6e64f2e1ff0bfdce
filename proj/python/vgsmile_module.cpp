#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vgsmile/implied.hpp"
#include "vgsmile/pricing.hpp"
#include "vgsmile/shape.hpp"
#include "vgsmile/specialfn.hpp"
#include "vgsmile/vgmodel.hpp"

namespace py = pybind11;
using namespace vgsmile;

PYBIND11_MODULE(_vgsmile, m) {
    m.doc() = "variance-gamma mixture option pricing, implied-vol smiles, and "
              "smile-shape classification";

    // most-derived registered last so its translator matches first
    py::register_exception<Error>(m, "VgsmileError", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "VgsmileDomainError", PyExc_ValueError);

    py::enum_<Component>(m, "Component")
        .value("plus", Component::plus)
        .value("minus", Component::minus);

    py::enum_<SmileShape>(m, "SmileShape")
        .value("W", SmileShape::W)
        .value("W_PLUS", SmileShape::W_PLUS)
        .value("NOT_W", SmileShape::NOT_W);

    py::class_<Accuracy>(m, "Accuracy")
        .def(py::init<>())
        .def_readwrite("rel_tol", &Accuracy::rel_tol)
        .def_readwrite("abs_tol", &Accuracy::abs_tol)
        .def_readwrite("max_iter", &Accuracy::max_iter);

    py::class_<MixtureParams>(m, "MixtureParams")
        .def(py::init([](double v, double c, double lambda_, double mu, double T, double S0) {
                 MixtureParams params{v, c, lambda_, mu, T, S0};
                 params.validate();
                 return params;
             }),
             py::arg("v") = 0.02, py::arg("c") = 2.0, py::arg("lambda_") = 0.5,
             py::arg("mu") = 0.02, py::arg("T") = 1.0, py::arg("S0") = 1.0)
        .def_readwrite("v", &MixtureParams::v)
        .def_readwrite("c", &MixtureParams::c)
        .def_readwrite("lambda_", &MixtureParams::lambda)
        .def_readwrite("mu", &MixtureParams::mu)
        .def_readwrite("T", &MixtureParams::T)
        .def_readwrite("S0", &MixtureParams::S0)
        .def_property_readonly("cT", &MixtureParams::cT)
        .def("validate", &MixtureParams::validate)
        .def("__repr__", [](const MixtureParams& p) {
            return "MixtureParams(v=" + std::to_string(p.v) + ", c=" + std::to_string(p.c) +
                   ", lambda_=" + std::to_string(p.lambda) + ", mu=" + std::to_string(p.mu) +
                   ", T=" + std::to_string(p.T) + ", S0=" + std::to_string(p.S0) + ")";
        });

    py::class_<ComponentParams>(m, "ComponentParams")
        .def_readonly("has_vg_fields", &ComponentParams::has_vg_fields)
        .def_readonly("alpha", &ComponentParams::alpha)
        .def_readonly("beta_plus", &ComponentParams::beta_plus)
        .def_readonly("beta_minus", &ComponentParams::beta_minus)
        .def_readonly("gamma_plus", &ComponentParams::gamma_plus)
        .def_readonly("gamma_minus", &ComponentParams::gamma_minus)
        .def_readonly("cT", &ComponentParams::cT)
        .def_readonly("lambda_plus", &ComponentParams::lambda_plus)
        .def_readonly("lambda_minus", &ComponentParams::lambda_minus)
        .def_readonly("a", &ComponentParams::a)
        .def_readonly("b", &ComponentParams::b)
        .def_readonly("p", &ComponentParams::p);

    py::class_<StdVGParams>(m, "StdVGParams")
        .def_readonly("sigma_vg", &StdVGParams::sigma_vg)
        .def_readonly("theta", &StdVGParams::theta)
        .def_readonly("kappa", &StdVGParams::kappa);

    py::class_<Quote>(m, "Quote")
        .def_readonly("strike", &Quote::strike)
        .def_readonly("call", &Quote::call)
        .def_readonly("put", &Quote::put);

    py::class_<SmileCurve>(m, "SmileCurve")
        .def_readonly("strikes", &SmileCurve::strikes)
        .def_readonly("vols", &SmileCurve::vols)
        .def_readonly("S0", &SmileCurve::S0)
        .def_readonly("excluded_strikes", &SmileCurve::excluded_strikes);

    py::class_<DensityGrid>(m, "DensityGrid")
        .def_readonly("xs", &DensityGrid::xs)
        .def_readonly("values", &DensityGrid::values);

    py::class_<ConditionChecks>(m, "ConditionChecks")
        .def_readonly("geometric_symmetry", &ConditionChecks::geometric_symmetry)
        .def_readonly("symmetry_max_deviation", &ConditionChecks::symmetry_max_deviation)
        .def_readonly("r_star", &ConditionChecks::r_star)
        .def_readonly("dip_at_zero", &ConditionChecks::dip_at_zero)
        .def_readonly("dip_lhs", &ConditionChecks::dip_lhs)
        .def_readonly("dip_rhs", &ConditionChecks::dip_rhs);

    py::class_<ShapeReport>(m, "ShapeReport")
        .def_readonly("classification", &ShapeReport::classification)
        .def_readonly("sigma_star", &ShapeReport::sigma_star)
        .def_readonly("sign_sequence", &ShapeReport::sign_sequence)
        .def_readonly("n_vol", &ShapeReport::n_vol)
        .def_readonly("conditions", &ShapeReport::conditions)
        .def_readonly("widenings", &ShapeReport::widenings)
        .def_readonly("diagnostic", &ShapeReport::diagnostic);

    py::class_<CrossingReport>(m, "CrossingReport")
        .def_readonly("sigma_star", &CrossingReport::sigma_star)
        .def_readonly("n_pdf", &CrossingReport::n_pdf)
        .def_readonly("crossing_xs", &CrossingReport::crossing_xs);

    py::class_<DipCheck>(m, "DipCheck")
        .def_readonly("pass_", &DipCheck::pass)
        .def_readonly("lhs", &DipCheck::lhs)
        .def_readonly("rhs", &DipCheck::rhs)
        .def_readonly("atm_vol", &DipCheck::atm_vol);

    py::class_<DescartesCoefficients>(m, "DescartesCoefficients")
        .def_readonly("a0", &DescartesCoefficients::a0)
        .def_readonly("a1", &DescartesCoefficients::a1)
        .def_readonly("a2", &DescartesCoefficients::a2)
        .def_readonly("a3", &DescartesCoefficients::a3)
        .def_readonly("sign_changes", &DescartesCoefficients::sign_changes);

    py::class_<AtmCurvature>(m, "AtmCurvature")
        .def_readonly("finite_difference", &AtmCurvature::finite_difference)
        .def_readonly("formula", &AtmCurvature::formula)
        .def_readonly("atm_vol", &AtmCurvature::atm_vol);

    m.def("derive", &derive, py::arg("params"));
    m.def("ell", &ell, py::arg("u"), py::arg("c"), py::arg("lambda_"));
    m.def("psi", &psi, py::arg("u"), py::arg("component"), py::arg("params"));
    m.def("mgf", &mgf, py::arg("u"), py::arg("params"));
    m.def("mgf_finite_interval", &mgf_finite_interval, py::arg("params"));
    m.def("mixture_density",
          [](double x, const MixtureParams& p) { return mixture_density(x, p); }, py::arg("x"),
          py::arg("params"));
    m.def("component_density",
          [](double x, Component s, const MixtureParams& p) {
              return component_density(x, s, p);
          },
          py::arg("x"), py::arg("component"), py::arg("params"));
    m.def("double_gamma_density", &double_gamma_density, py::arg("x"), py::arg("params"));
    m.def("to_std_vg", &to_std_vg, py::arg("params"), py::arg("component"));
    m.def("sample", &sample, py::arg("params"), py::arg("n"), py::arg("seed"));
    m.def("make_density_grid",
          [](const MixtureParams& p, std::vector<double> xs) {
              return make_density_grid(p, std::move(xs));
          },
          py::arg("params"), py::arg("xs"));

    m.def("bs_call",
          [](double strike, double w, double S0) { return bs_call(strike, TotalVol(w), S0); },
          py::arg("strike"), py::arg("total_vol"), py::arg("S0") = 1.0);
    m.def("bs_vega",
          [](double strike, double w, double S0) { return bs_vega(strike, TotalVol(w), S0); },
          py::arg("strike"), py::arg("total_vol"), py::arg("S0") = 1.0);
    m.def("bs_gamma_atm", [](double w) { return bs_gamma_atm(TotalVol(w)); },
          py::arg("total_vol"));
    m.def("q_function",
          [](double x, const MixtureParams& p) { return q_function(x, p); }, py::arg("x"),
          py::arg("params"));
    m.def("price", [](double strike, const MixtureParams& p) { return price(strike, p); },
          py::arg("strike"), py::arg("params"));
    m.def("price_by_quadrature",
          [](double strike, const MixtureParams& p) { return price_by_quadrature(strike, p); },
          py::arg("strike"), py::arg("params"));

    m.def("implied_vol",
          [](double call_price, double strike, double S0) {
              return implied_vol(call_price, strike, S0).w;
          },
          py::arg("call_price"), py::arg("strike"), py::arg("S0") = 1.0);
    m.def("log_spaced_strikes", &log_spaced_strikes, py::arg("S0"), py::arg("window"),
          py::arg("n"));
    m.def("smile",
          [](const MixtureParams& p, const std::vector<double>& strikes) {
              return strikes.empty() ? smile(p) : smile(p, strikes);
          },
          py::arg("params"), py::arg("strikes") = std::vector<double>{});
    m.def("atm_curvature", [](const MixtureParams& p) { return atm_curvature(p); },
          py::arg("params"));

    m.def("classify",
          [](const SmileCurve& curve, const MixtureParams& p) { return classify(curve, p); },
          py::arg("curve"), py::arg("params"));
    m.def("r_star", &r_star, py::arg("params"));
    m.def("dip_at_zero", [](const MixtureParams& p) { return dip_at_zero(p); },
          py::arg("params"));
    m.def("crossing_grid",
          [](const MixtureParams& p, double sigma_star, int points) {
              return crossing_grid(p, TotalVol(sigma_star), points);
          },
          py::arg("params"), py::arg("sigma_star"), py::arg("points") = 4001);
    m.def("count_density_crossings",
          [](const MixtureParams& p, double sigma_star, const std::vector<double>& grid) {
              const std::vector<double> xs =
                  grid.empty() ? crossing_grid(p, TotalVol(sigma_star)) : grid;
              return count_density_crossings(p, TotalVol(sigma_star), xs);
          },
          py::arg("params"), py::arg("sigma_star"), py::arg("grid") = std::vector<double>{});
    m.def("descartes_coefficients",
          [](const MixtureParams& p, double sigma) {
              return descartes_coefficients(p, TotalVol(sigma));
          },
          py::arg("params"), py::arg("sigma"));

    m.def("bessel_k", [](double nu, double z) { return bessel_k(nu, z); }, py::arg("nu"),
          py::arg("z"));
    m.def("gamma_cdf",
          [](double x, double shape, double rate) { return gamma_cdf(x, shape, rate); },
          py::arg("x"), py::arg("shape"), py::arg("rate"));
    m.def("norm_cdf", &norm_cdf, py::arg("x"));
    m.def("log_gamma", &log_gamma, py::arg("x"));

#ifdef VGSMILE_VERSION
    m.attr("__version__") = VGSMILE_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
