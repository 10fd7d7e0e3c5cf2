// Thin pybind11 layer. Graphs and matrices travel as text in the same
// formats the command line reads; results come back as JSON strings that the
// Python package decodes.

#include "specmult/oracle.hpp"
#include "specmult/spectra.hpp"
#include "specmult/structure.hpp"
#include "specmult/theorems.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace specmult;

namespace {

ExactMatrix load_matrix(const Graph& g, const std::optional<std::string>& matrix) {
    if (!matrix) return adjacency_exact(g);
    return ExactMatrix(parse_matrix(*matrix), g);
}

Eigenvalue load_lambda(const std::optional<std::string>& rational, const std::optional<std::string>& minpoly,
                       double near) {
    if (rational.has_value() == minpoly.has_value())
        throw Error(ErrorKind::InvalidArgument, "give exactly one of lam and minpoly");
    if (rational) return Eigenvalue::rational(parse_rational(*rational));
    return Eigenvalue::algebraic(make_monic(parse_coefficients(*minpoly)), near);
}

std::string analyze(const std::string& graph) { return to_json(analyze_structure(parse_graph(graph))).dump(); }

std::string multiplicity_json(const std::string& graph, const std::optional<std::string>& matrix,
                              const std::optional<std::string>& lam, const std::optional<std::string>& minpoly,
                              double near) {
    const Graph g = parse_graph(graph);
    return to_json(multiplicity(load_matrix(g, matrix), load_lambda(lam, minpoly, near))).dump();
}

std::string spectrum(const std::string& graph, const std::optional<std::string>& matrix) {
    const Graph g = parse_graph(graph);
    return to_json(certify_spectrum(load_matrix(g, matrix))).dump();
}

std::string classify(const std::string& graph, const std::optional<std::string>& matrix,
                     const std::optional<std::string>& lam, const std::optional<std::string>& minpoly, double near) {
    const Graph g = parse_graph(graph);
    return to_json(conclusion_classifier(g, load_matrix(g, matrix), load_lambda(lam, minpoly, near))).dump();
}

std::string upper_bound(const std::string& graph, const std::optional<std::string>& matrix,
                        const std::optional<std::string>& lam, const std::optional<std::string>& minpoly,
                        double near) {
    const Graph g = parse_graph(graph);
    return to_json(check_upper_bound(g, load_matrix(g, matrix), load_lambda(lam, minpoly, near))).dump();
}

std::string verify(const std::string& campaign, std::size_t cap, bool dedup, std::size_t seeds, std::size_t graphs,
                   std::size_t guvh, std::uint64_t seed, std::size_t jobs) {
    CampaignConfig cfg;
    cfg.campaign = parse_campaign(campaign);
    cfg.cap = cap;
    cfg.dedup = dedup;
    cfg.seeds = seeds;
    cfg.graphs = graphs;
    cfg.guvh_instances = guvh;
    cfg.seed = seed;
    cfg.jobs = jobs;
    py::gil_scoped_release release;
    return to_jsonl(run_campaign(cfg));
}

} // namespace

PYBIND11_MODULE(_specmult, m) {
    m.attr("__version__") = SPECMULT_VERSION;

    static py::exception<Error> error(m, "SpecmultError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = py::handle(error.ptr())(e.what());
            exc.attr("kind") = std::string(to_string(e.kind()));
            PyErr_SetObject(error.ptr(), exc.ptr());
        }
    });

    m.def("analyze", &analyze, py::arg("graph"));
    m.def("multiplicity", &multiplicity_json, py::arg("graph"), py::arg("matrix") = py::none(),
          py::arg("lam") = py::none(), py::arg("minpoly") = py::none(), py::arg("near") = 0.0);
    m.def("spectrum", &spectrum, py::arg("graph"), py::arg("matrix") = py::none());
    m.def("classify", &classify, py::arg("graph"), py::arg("matrix") = py::none(), py::arg("lam") = py::none(),
          py::arg("minpoly") = py::none(), py::arg("near") = 0.0);
    m.def("check_upper_bound", &upper_bound, py::arg("graph"), py::arg("matrix") = py::none(),
          py::arg("lam") = py::none(), py::arg("minpoly") = py::none(), py::arg("near") = 0.0);
    m.def("verify", &verify, py::arg("campaign"), py::arg("cap") = 0, py::arg("dedup") = true,
          py::arg("seeds") = 16, py::arg("graphs") = 500, py::arg("guvh") = 200, py::arg("seed") = 1,
          py::arg("jobs") = 1);
}
