#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "corona/carleson.hpp"
#include "corona/fields.hpp"
#include "corona/functional.hpp"
#include "corona/hardy.hpp"
#include "corona/harness.hpp"

namespace py = pybind11;
using namespace corona;

namespace {

AnalyticPoly poly(const std::vector<Complex>& coeffs) { return AnalyticPoly(coeffs); }

PolyRow row(const std::vector<std::vector<Complex>>& entries) {
    std::vector<AnalyticPoly> ps;
    ps.reserve(entries.size());
    for (const auto& e : entries) ps.emplace_back(e);
    return PolyRow(std::move(ps));
}

PsiSpec psi_of(const std::string& kind, double eps) {
    if (kind == "exponential") return PsiSpec::exponential();
    if (kind == "normalized-power") return PsiSpec::normalized_power(eps);
    throw Error(Errc::domain_error, "psi kind must be exponential or normalized-power");
}

}  // namespace

PYBIND11_MODULE(coronalab, m) {
    m.doc() = "Finite-section laboratory for the H-infinity ideal membership problem";

    py::register_exception<Error>(m, "CoronaError");

    m.def("eval_poly",
          [](const std::vector<Complex>& p, Complex z) { return eval(poly(p), z); },
          py::arg("coeffs"), py::arg("z"));
    m.def("derivative",
          [](const std::vector<Complex>& p) { return derivative(poly(p)).coeffs(); },
          py::arg("coeffs"));
    m.def("find_zeros",
          [](const std::vector<Complex>& p, double radius) { return find_zeros(poly(p), radius); },
          py::arg("coeffs"), py::arg("radius") = 1.0);
    m.def("row_norm",
          [](const std::vector<std::vector<Complex>>& F, Complex z) { return row_norm(row(F), z); },
          py::arg("F"), py::arg("z"));

    m.def("psi_eval",
          [](const std::string& kind, double s, double eps) { return psi_eval(psi_of(kind, eps), s); },
          py::arg("kind"), py::arg("s"), py::arg("epsilon") = 1.0);
    m.def("phi_eval",
          [](const std::string& kind, double s, double eps) { return phi_eval(psi_of(kind, eps), s); },
          py::arg("kind"), py::arg("s"), py::arg("epsilon") = 1.0);

    m.def("validate_scenario",
          [](const std::vector<std::vector<Complex>>& F, const std::vector<Complex>& f,
             const std::string& kind, int resolution, double eps) {
              HypothesisReport r = validate_scenario(row(F), poly(f), psi_of(kind, eps), resolution);
              py::dict d;
              d["sup_norm"] = r.sup_norm;
              d["delta"] = r.delta;
              d["margin"] = r.margin;
              d["pass"] = r.pass();
              d["sup_ok"] = r.sup_ok;
              d["zero_free_ok"] = r.zero_free_ok;
              d["hypothesis_ok"] = r.hypothesis_ok;
              return d;
          },
          py::arg("F"), py::arg("f"), py::arg("psi") = "exponential", py::arg("resolution") = 128,
          py::arg("epsilon") = 1.0);

    m.def("disc_quadrature",
          [](int radial, int angular) {
              DiscQuadrature q = build_disc_quadrature(radial, angular);
              return std::make_pair(q.nodes, q.weights);
          },
          py::arg("radial") = 128, py::arg("angular") = 256);
    m.def("boundary_quadrature",
          [](int M) {
              BoundaryQuadrature b = build_boundary_quadrature(M);
              return std::make_pair(b.nodes, std::vector<double>(b.nodes.size(), b.weight));
          },
          py::arg("M") = 1024);
    m.def("green_residual",
          [](const std::function<double(Complex)>& u, const std::function<double(Complex)>& lap,
             int radial, int angular, int boundary) {
              return green_residual(u, lap, build_disc_quadrature(radial, angular),
                                    build_boundary_quadrature(boundary));
          },
          py::arg("u"), py::arg("u_laplacian"), py::arg("radial") = 64, py::arg("angular") = 128,
          py::arg("boundary") = 256);
    m.def("numeric_wirtinger",
          [](const std::function<Complex(Complex)>& fn, Complex z, double step) {
              WirtingerScalar w = numeric_wirtinger(fn, z, step);
              return std::make_pair(w.d, w.dbar);
          },
          py::arg("fn"), py::arg("z"), py::arg("step") = 1e-4);

    m.def("sample_fields",
          [](const std::vector<std::vector<Complex>>& F, const std::vector<Complex>& f, Complex z) {
              FieldSample s = sample_fields(row(F), poly(f), z);
              py::dict d;
              d["F"] = s.F_val;
              d["F_deriv"] = s.F_deriv;
              d["phi"] = s.phi;
              d["pi"] = s.pi;
              d["d_pi"] = s.d_pi;
              d["dbar_phi"] = s.dbar_phi;
              d["alpha"] = s.alpha;
              d["beta"] = s.beta;
              return d;
          },
          py::arg("F"), py::arg("f"), py::arg("z"));

    m.def("minimal_norm_solve",
          [](const std::vector<std::vector<Complex>>& F, const std::vector<Complex>& f,
             const std::vector<Complex>& g, int N) {
              SolveResult r = minimal_norm_solve(row(F), poly(f), poly(g), N);
              return py::make_tuple(r.G, r.residual, r.norm);
          },
          py::arg("F"), py::arg("f"), py::arg("g"), py::arg("N"));
    m.def("leech_psd_check",
          [](const std::vector<std::vector<Complex>>& F, const std::vector<Complex>& f, double C,
             int N) {
              PsdCheck c = leech_psd_check(row(F), poly(f), C, N);
              return py::make_tuple(c.min_eigenvalue, c.pass);
          },
          py::arg("F"), py::arg("f"), py::arg("C"), py::arg("N"));
    m.def("pick_matrix_check",
          [](const std::vector<std::vector<Complex>>& F, const std::vector<Complex>& f, double C,
             const std::vector<Complex>& nodes) {
              PsdCheck c = pick_matrix_check(row(F), poly(f), C, nodes);
              return py::make_tuple(c.min_eigenvalue, c.pass);
          },
          py::arg("F"), py::arg("f"), py::arg("C"), py::arg("nodes"));
    m.def("pick_node_pool", &pick_node_pool);
    m.def("total_bound_constant", &total_bound_constant);
    m.def("functional_term_constant", &functional_term_constant);

    m.def("corpus_json", []() {
        std::vector<std::string> out;
        for (const auto& c : corpus()) out.push_back(c.dump());
        return out;
    });
    m.def("run_scenario_json",
          [](const std::string& config, const std::string& command, int jobs) {
              auto cmd = command_from_string(command);
              if (!cmd) throw Error(Errc::config_error, "unknown command: " + command);
              RunOutcome r = run_config(nlohmann::json::parse(config), *cmd, std::nullopt,
                                        std::nullopt, jobs);
              return py::make_tuple(r.exit_code, r.report.dump(), r.summary);
          },
          py::arg("config_json"), py::arg("command") = "all", py::arg("jobs") = 1);

    m.attr("__version__") = version_string();
}
