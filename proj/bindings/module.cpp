#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pwquad/correction.hpp"
#include "pwquad/detect.hpp"
#include "pwquad/functions.hpp"
#include "pwquad/harness.hpp"
#include "pwquad/polynomial.hpp"
#include "pwquad/rules.hpp"
#include "pwquad/types.hpp"

namespace py = pybind11;
using namespace pwquad;

PYBIND11_MODULE(_pwquad, m) {
    m.doc() = "quadrature rules with jump corrections for piecewise-smooth integrands";

    py::register_exception<NoDiscontinuityError>(m, "NoDiscontinuityError");
    py::register_exception<OracleError>(m, "OracleError");

    py::class_<Interval>(m, "Interval")
        .def(py::init<double, double>(), py::arg("a"), py::arg("b"))
        .def_readonly("a", &Interval::a)
        .def_readonly("b", &Interval::b)
        .def("length", &Interval::length)
        .def("contains", &Interval::contains)
        .def("__repr__", [](const Interval& iv) {
            return "Interval(" + format_g16(iv.a) + ", " + format_g16(iv.b) + ")";
        });

    py::class_<PiecewiseFunction>(m, "PiecewiseFunction")
        .def(py::init([](RealFn left, RealFn right, double breakpoint,
                         std::vector<RealFn> left_derivs, std::vector<RealFn> right_derivs) {
                 PiecewiseFunction f;
                 f.left = std::move(left);
                 f.right = std::move(right);
                 f.breakpoint = breakpoint;
                 f.left_derivs = std::move(left_derivs);
                 f.right_derivs = std::move(right_derivs);
                 f.max_smoothness = static_cast<int>(f.left_derivs.size()) + 1;
                 return f;
             }),
             py::arg("left"), py::arg("right"), py::arg("breakpoint"),
             py::arg("left_derivs") = std::vector<RealFn>{},
             py::arg("right_derivs") = std::vector<RealFn>{})
        .def_readonly("breakpoint", &PiecewiseFunction::breakpoint)
        .def("__call__", [](const PiecewiseFunction& f, double x) { return f(x); });

    py::class_<JumpData>(m, "JumpData")
        .def(py::init<double, std::vector<double>>(), py::arg("breakpoint"), py::arg("jumps"))
        .def_readonly("breakpoint", &JumpData::breakpoint)
        .def_readonly("jumps", &JumpData::jumps)
        .def_property_readonly("order", &JumpData::order)
        .def("all_zero", &JumpData::all_zero);

    py::class_<GridSamples>(m, "GridSamples")
        .def(py::init<Interval, int, std::vector<double>>(), py::arg("interval"), py::arg("n"),
             py::arg("values"))
        .def_readonly("interval", &GridSamples::interval)
        .def_readonly("n", &GridSamples::n)
        .def_readonly("values", &GridSamples::values)
        .def("spacing", &GridSamples::spacing)
        .def("node", &GridSamples::node)
        .def_static("sample",
                    [](const PiecewiseFunction& f, Interval iv, int n) {
                        return GridSamples::sample(f, iv, n);
                    })
        .def_static("sample_fn", [](const RealFn& f, Interval iv, int n) {
            return GridSamples::sample(f, iv, n);
        });

    py::class_<QuadratureRule>(m, "QuadratureRule")
        .def_readonly("nodes", &QuadratureRule::nodes)
        .def_readonly("weights", &QuadratureRule::weights)
        .def_readonly("exactness_degree", &QuadratureRule::exactness_degree);

    py::class_<RuleSpec>(m, "RuleSpec")
        .def_static("parse", &RuleSpec::parse)
        .def_property_readonly("exactness_degree", &RuleSpec::exactness_degree)
        .def("valid_n", &RuleSpec::valid_n)
        .def("name", &RuleSpec::name);

    py::class_<DetectionResult>(m, "DetectionResult")
        .def_readonly("cell_index", &DetectionResult::cell_index)
        .def_readonly("x_estimate", &DetectionResult::x_estimate)
        .def_readonly("confidence", &DetectionResult::confidence);

    py::class_<RefinementLevel>(m, "RefinementLevel")
        .def_readonly("n", &RefinementLevel::n)
        .def_readonly("error", &RefinementLevel::error)
        .def_readonly("order", &RefinementLevel::order);

    py::class_<RefinementReport>(m, "RefinementReport")
        .def_readonly("levels", &RefinementReport::levels)
        .def_readonly("rule_name", &RefinementReport::rule_name)
        .def_readonly("function_name", &RefinementReport::function_name);

    py::enum_<JumpSource>(m, "JumpSource")
        .value("Analytic", JumpSource::Analytic)
        .value("Estimated", JumpSource::Estimated);

    py::class_<StudyConfig>(m, "StudyConfig")
        .def(py::init<>())
        .def_readwrite("function_name", &StudyConfig::function_name)
        .def_readwrite("rule", &StudyConfig::rule)
        .def_readwrite("levels", &StudyConfig::levels)
        .def_readwrite("corrected", &StudyConfig::corrected)
        .def_readwrite("jump_source", &StudyConfig::jump_source)
        .def_readwrite("seed", &StudyConfig::seed)
        .def_readwrite("correction_order", &StudyConfig::correction_order)
        .def_readwrite("stencil", &StudyConfig::stencil)
        .def_readwrite("detect_deriv_order", &StudyConfig::detect_deriv_order);

    py::class_<TrialRecord>(m, "TrialRecord")
        .def_readonly("trial", &TrialRecord::trial)
        .def_readonly("x_star", &TrialRecord::x_star)
        .def_readonly("err_classical", &TrialRecord::err_classical)
        .def_readonly("err_corrected", &TrialRecord::err_corrected);

    py::class_<MonteCarloResult>(m, "MonteCarloResult")
        .def_readonly("max_classical", &MonteCarloResult::max_classical)
        .def_readonly("max_corrected", &MonteCarloResult::max_corrected)
        .def_readonly("trials", &MonteCarloResult::trials);

    py::class_<NamedFunction>(m, "NamedFunction")
        .def_readonly("name", &NamedFunction::name)
        .def_readonly("domain", &NamedFunction::domain)
        .def_readonly("fn", &NamedFunction::fn);

    // model
    m.def("eval_piecewise", &eval_piecewise, py::arg("f"), py::arg("x"));
    m.def("jumps_from_analytic", &jumps_from_analytic, py::arg("f"), py::arg("l"));

    // rules
    m.def("trapezoid_composite", &trapezoid_composite);
    m.def("simpson13_composite", &simpson13_composite);
    m.def("simpson38_composite", &simpson38_composite);
    m.def("legendre_poly_and_deriv", &legendre_poly_and_deriv, py::arg("n"), py::arg("x"));
    m.def("gauss_legendre_rule", &gauss_legendre_rule, py::arg("n"));
    m.def("gauss_legendre_integrate", &gauss_legendre_integrate, py::arg("f"), py::arg("interval"),
          py::arg("rule"));
    m.def("gauss_legendre_composite", &gauss_legendre_composite, py::arg("f"), py::arg("interval"),
          py::arg("cells"), py::arg("rule"));

    // correction
    m.def("jump_taylor_eval", &jump_taylor_eval, py::arg("j"), py::arg("x"));
    m.def("correction_tail_integral", &correction_tail_integral, py::arg("j"), py::arg("b"));
    m.def("build_regularized", &build_regularized, py::arg("f"), py::arg("j"));
    m.def("corrected_integrate_analytic", &corrected_integrate_analytic, py::arg("f"), py::arg("j"),
          py::arg("interval"), py::arg("method"), py::arg("n"));
    m.def(
        "corrected_integrate_grid",
        [](const GridSamples& s, const JumpData& j) {
            const CorrectedGridResult r = corrected_integrate_grid(s, j);
            return py::make_tuple(r.trapezoid, r.simpson13, r.simpson38);
        },
        py::arg("samples"), py::arg("j"),
        "returns (trapezoid, simpson13, simpson38); entries are None when n "
        "fails the rule's divisibility constraint");
    m.def("corrected_grid_rule", &corrected_grid_rule, py::arg("method"), py::arg("samples"),
          py::arg("j"));
    m.def("theorem1_error_bound", &theorem1_error_bound, py::arg("sup_left"), py::arg("sup_right"),
          py::arg("l"), py::arg("xstar"), py::arg("b"));

    // detect
    m.def("locate_discontinuity", &locate_discontinuity, py::arg("samples"),
          py::arg("deriv_order"));
    m.def("estimate_jumps", &estimate_jumps, py::arg("samples"), py::arg("x_estimate"),
          py::arg("l"), py::arg("stencil"));

    // harness
    m.def("convergence_order", &convergence_order, py::arg("e_prev"), py::arg("e_next"),
          py::arg("n_prev"), py::arg("n_next"));
    m.def("refinement_study", &refinement_study, py::arg("config"));
    m.def("random_breakpoint_study", &random_breakpoint_study, py::arg("n_points"),
          py::arg("trials"), py::arg("seed"));
    m.def(
        "location_perturbation_study",
        [](const std::string& f_name, const std::vector<double>& betas, int l) {
            auto pts = location_perturbation_study(f_name, betas, l);
            py::list out;
            for (const auto& p : pts) out.append(py::make_tuple(p.beta, p.error));
            return out;
        },
        py::arg("f_name"), py::arg("betas"), py::arg("l"));
    m.def("exact_integral_oracle", &exact_integral_oracle, py::arg("f_name"), py::arg("interval"));
    m.def("adaptive_gauss_integral", &adaptive_gauss_integral, py::arg("f"), py::arg("interval"));
    m.def(
        "fitted_order",
        [](const RefinementReport& r, double floor) { return fitted_order(r, floor); },
        py::arg("report"), py::arg("error_floor"));

    // functions
    m.def("builtin_function", &builtin_function, py::return_value_policy::reference);
    m.def("builtin_names", &builtin_names);
    m.def("load_piecewise_file", [](const std::string& path) {
        LoadedPiecewise lp = load_piecewise_file(path);
        return py::make_tuple(lp.fn, lp.domain);
    });
    m.def("format_g16", &format_g16);
}
