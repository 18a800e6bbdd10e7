#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "szegolab/asymptotics.hpp"
#include "szegolab/fefferman.hpp"
#include "szegolab/io.hpp"
#include "szegolab/scaling.hpp"

namespace py = pybind11;
using namespace szegolab;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Szegő-kernel metric laboratory for strictly pseudoconvex domains";

    py::register_exception<Error>(m, "SzegolabError");

    py::class_<DomainSpec>(m, "DomainSpec")
        .def_static("unit_ball", &DomainSpec::unit_ball, py::arg("n") = 2)
        .def_static("bumped_ball", &DomainSpec::bumped_ball, py::arg("epsilon"),
                    py::arg("n") = 2)
        .def_static("siegel", &DomainSpec::siegel, py::arg("n") = 2)
        .def_property_readonly("n", &DomainSpec::n)
        .def_property_readonly("epsilon", &DomainSpec::epsilon)
        .def("__eq__", [](const DomainSpec& a, const DomainSpec& b) { return a == b; })
        .def("__repr__", [](const DomainSpec& spec) {
            return "DomainSpec.parse('''" + serialize_domain_spec(spec) + "''')";
        })
        .def_static("parse", &parse_domain_spec)
        .def("serialize", &serialize_domain_spec);

    py::enum_<KernelKind>(m, "KernelKind")
        .value("szego", KernelKind::Szego)
        .value("bergman", KernelKind::Bergman);

    py::class_<DiagonalKernelSeries>(m, "KernelSeries")
        .def_property_readonly("degree",
                               [](const DiagonalKernelSeries& s) { return s.degree; })
        .def("coefficient", &DiagonalKernelSeries::coefficient)
        .def("__call__",
             [](const DiagonalKernelSeries& s, const CVec& z, const CVec& w) {
                 return eval_kernel(s, z, w);
             })
        .def("tail_bound",
             [](const DiagonalKernelSeries& s, double rho) {
                 return truncation_tail_bound(s, rho);
             });

    m.def("build_series", &build_series, py::arg("spec"), py::arg("kind"), py::arg("degree"),
          py::arg("c_n") = 1.0, py::arg("resolution") = 32, py::arg("threads") = 1);
    m.def("exact_ball_kernel", &eval_exact_ball, py::arg("kind"), py::arg("n"),
          py::arg("c_n"), py::arg("z"), py::arg("w"));

    py::class_<KernelEvaluator>(m, "KernelEvaluator")
        .def_readwrite("tail_rel_guard", &KernelEvaluator::tail_rel_guard)
        .def("__call__", [](const KernelEvaluator& ev, const CVec& z, const CVec& w) {
            return ev.partial(z, w, {}, {});
        });
    m.def("exact_ball_evaluator", &exact_ball_evaluator, py::arg("kind"), py::arg("n"),
          py::arg("c_n") = 1.0);
    m.def("series_evaluator", &series_evaluator);

    py::class_<CurvatureReport>(m, "CurvatureReport")
        .def_readonly("z", &CurvatureReport::z)
        .def_readonly("X", &CurvatureReport::X)
        .def_readonly("tau", &CurvatureReport::tau)
        .def_readonly("g", &CurvatureReport::g)
        .def_readonly("beta", &CurvatureReport::beta)
        .def_readonly("R", &CurvatureReport::R)
        .def_readonly("Ric", &CurvatureReport::Ric)
        .def_readonly("tail_bound", &CurvatureReport::tail_bound);
    m.def("curvature_report", &curvature_report, py::arg("evaluator"), py::arg("z"),
          py::arg("X"));

    py::class_<LimitSample>(m, "LimitSample")
        .def_readonly("delta", &LimitSample::delta)
        .def_readonly("value", &LimitSample::value)
        .def_readonly("tail_bound", &LimitSample::tail_bound);

    py::class_<LimitExperimentReport>(m, "LimitExperimentReport")
        .def_readonly("experiment", &LimitExperimentReport::experiment)
        .def_readonly("samples", &LimitExperimentReport::samples)
        .def_readonly("L_hat", &LimitExperimentReport::L_hat)
        .def_readonly("L_star", &LimitExperimentReport::L_star)
        .def_readonly("rel_err", &LimitExperimentReport::rel_err)
        .def_readonly("provenance", &LimitExperimentReport::provenance)
        .def_readonly("noise_warning", &LimitExperimentReport::noise_warning);

    m.def("limit_estimate", [](const std::vector<double>& deltas,
                               const std::vector<double>& values) {
        const auto fit = limit_estimate(deltas, values);
        return py::make_tuple(fit.L_hat, fit.error_estimate, fit.noise_warning);
    });
    m.def("run_theorem1_suite", &run_theorem1_suite, py::arg("spec"), py::arg("evaluator"),
          py::arg("p0"), py::arg("X"), py::arg("deltas"));
    m.def("run_localization_suite", &run_localization_suite, py::arg("spec"),
          py::arg("evaluator"), py::arg("inner_evaluator"), py::arg("p0"), py::arg("X"),
          py::arg("deltas"));
    m.def("admissible_deltas", &admissible_deltas, py::arg("evaluator"), py::arg("spec"),
          py::arg("p0"), py::arg("deltas"));
    m.def("report_csv", [](const std::vector<LimitExperimentReport>& reports) {
        std::ostringstream os;
        emit_report_csv(os, reports);
        return os.str();
    });

    py::class_<ScalingReport>(m, "ScalingReport")
        .def_readonly("j", &ScalingReport::j)
        .def_readonly("delta", &ScalingReport::delta)
        .def_readonly("eta", &ScalingReport::eta)
        .def_readonly("residual", &ScalingReport::residual)
        .def_readonly("q_deviation", &ScalingReport::q_deviation);
    m.def("run_scaling_suite", &run_scaling_suite, py::arg("spec"), py::arg("p0"),
          py::arg("deltas"));
    m.def("cayley", &cayley);

    m.def("fefferman_density",
          [](const DomainSpec& spec, const CVec& p, double c_n) {
              return fefferman_density(evaluate_jet(spec, p), c_n).density;
          },
          py::arg("spec"), py::arg("p"), py::arg("c_n") = 1.0);
}
