#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "maxrep/deform.hpp"
#include "maxrep/graph.hpp"
#include "maxrep/limits.hpp"
#include "maxrep/repfile.hpp"

namespace py = pybind11;
using namespace maxrep;

namespace {

std::optional<BoundaryPoint> to_point(const std::optional<Mat>& y, int n, const Tolerance& tol) {
    if (!y) return BoundaryPoint::infinity(n);
    return BoundaryPoint::finite(*y, tol);
}

py::dict surface_dict(const SurfaceRep& rep, const Tolerance& tol) {
    py::dict d;
    d["n"] = rep.n;
    d["genus"] = rep.genus();
    d["boundary"] = rep.boundary_count();
    py::dict gens;
    for (const auto& [name, g] : rep.generators()) gens[py::str(name)] = g.full();
    d["generators"] = gens;
    d["relation_residual"] = rep.relation_residual();
    d["toledo"] = surface_toledo(rep, tol).value();
    return d;
}

GluingGraph graph_of(const std::string& text) {
    RepFile f = parse_repfile(text);
    return f.graph;
}

std::string graph_text(const GluingGraph& g) {
    RepFile f;
    f.n = g.n;
    f.graph = g;
    return format_repfile(f);
}

}  // namespace

PYBIND11_MODULE(_maxrep, m) {
    m.doc() = "maximal representations of surface groups into Sp(2n,R)";

    static py::exception<Error> exc(m, "MaxrepError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object err = exc;
            py::object inst = err(std::string(e.what()));
            inst.attr("kind") = kind_name(e.kind());
            inst.attr("exit_code") = exit_code_for(e.kind());
            PyErr_SetObject(err.ptr(), inst.ptr());
        }
    });

    py::class_<Tolerance>(m, "Tolerance")
        .def(py::init([](double eq, double series, double band) { return Tolerance{eq, series, band}; }),
             py::arg("eq_tol") = 1e-9, py::arg("series_tol") = 1e-12, py::arg("unit_circle_band") = 1e-8)
        .def_readwrite("eq_tol", &Tolerance::eq_tol)
        .def_readwrite("series_tol", &Tolerance::series_tol)
        .def_readwrite("unit_circle_band", &Tolerance::unit_circle_band);

    m.def("stein_solve", [](const Mat& a, const Mat& q, const Tolerance& tol) {
        return stein_solve(a, SymMat(q, tol), tol).mat();
    }, py::arg("a"), py::arg("q"), py::arg("tol") = Tolerance{});

    m.def("maslov", [](const std::optional<Mat>& y1, const std::optional<Mat>& y2, const std::optional<Mat>& y3, int n,
                       const Tolerance& tol) {
        return maslov(*to_point(y1, n, tol), *to_point(y2, n, tol), *to_point(y3, n, tol), tol);
    }, py::arg("y1"), py::arg("y2"), py::arg("y3"), py::arg("n"), py::arg("tol") = Tolerance{},
          "Maslov index of three points of Sym_n; None stands for the point at infinity");

    m.def("classify_params", [](const Mat& x1, const Mat& x2, const Mat& x3, const Tolerance& tol) {
        return std::string(to_string(classify_params(PantsParams{x1, x2, x3}, tol)));
    }, py::arg("x1"), py::arg("x2"), py::arg("x3"), py::arg("tol") = Tolerance{});

    m.def("build_maximal", [](const Mat& x1, const Mat& x2, const Mat& x3, const Tolerance& tol) {
        PantsRep r = build_maximal(PantsParams{x1, x2, x3}, tol);
        return py::make_tuple(r.c1.full(), r.c2.full(), r.c3.full());
    }, py::arg("x1"), py::arg("x2"), py::arg("x3"), py::arg("tol") = Tolerance{});

    m.def("toledo", [](const Mat& x1, const Mat& x2, const Mat& x3, const Tolerance& tol) {
        PantsParams p{x1, x2, x3};
        return toledo(build_maximal(p, tol), standard_fixed_points(p.n(), p.n(), tol), tol).value();
    }, py::arg("x1"), py::arg("x2"), py::arg("x3"), py::arg("tol") = Tolerance{});

    m.def("toledo_shortcut", [](const Mat& x1, const Mat& x2, const Mat& x3, const Tolerance& tol) {
        return toledo_signature_shortcut(PantsParams{x1, x2, x3}, tol).value();
    }, py::arg("x1"), py::arg("x2"), py::arg("x3"), py::arg("tol") = Tolerance{});

    m.def("recover_params", [](const Mat& c1, const Mat& c2, const Mat& c3, const Tolerance& tol) {
        PantsRep r{make_symplectic(c1, tol), make_symplectic(c2, tol), make_symplectic(c3, tol)};
        RecoveredParams rp = recover_params(r, tol);
        return py::make_tuple(rp.params.x1, rp.params.x2, rp.params.x3);
    }, py::arg("c1"), py::arg("c2"), py::arg("c3"), py::arg("tol") = Tolerance{});

    m.def("fixed_point", [](const Mat& a, const Mat& s, const Tolerance& tol) {
        return fixed_point_expanding_side(StandardBoundary::make(a, s, tol), tol).point.value();
    }, py::arg("a"), py::arg("s"), py::arg("tol") = Tolerance{});

    m.def("can_glue", [](const Mat& x, const Mat& xbar, const Tolerance& tol) {
        GlueCheck c = can_glue(x, xbar, tol);
        return py::make_tuple(std::string(to_string(c.status)), c.witness);
    }, py::arg("x"), py::arg("xbar"), py::arg("tol") = Tolerance{});

    m.def("twist_element", [](const Mat& x, const Mat& s, const Mat& xbar, const Mat& sbar, const Mat& g,
                              const Tolerance& tol) {
        return twist_element(x, s, xbar, sbar, TwistParam{g}, tol).full();
    }, py::arg("x"), py::arg("s"), py::arg("xbar"), py::arg("sbar"), py::arg("g"), py::arg("tol") = Tolerance{});

    m.def("close_handle", [](const Mat& x1, const Mat& x2, const Mat& g, const Tolerance& tol) {
        return surface_dict(close_handle(x1, x2, TwistParam{g}, tol), tol);
    }, py::arg("x1"), py::arg("x2"), py::arg("g"), py::arg("tol") = Tolerance{});

    m.def("build_from_text", [](const std::string& text, const Tolerance& tol) {
        return surface_dict(build_from_graph(graph_of(text), tol), tol);
    }, py::arg("text"), py::arg("tol") = Tolerance{}, "build generator images from a representation file");

    m.def("component_signature", [](const std::string& text, const Tolerance& tol) {
        return component_signature(graph_of(text), tol);
    }, py::arg("text"), py::arg("tol") = Tolerance{});

    m.def("component_count", &component_count, py::arg("genus"), py::arg("boundary"));

    m.def("standard_representative", [](int g, int mm, int n, const std::vector<int>& signs) {
        return graph_text(standard_representative(g, mm, n, signs));
    }, py::arg("genus"), py::arg("boundary"), py::arg("n"), py::arg("signs"));

    m.def("deform_to_standard", [](const std::string& text, int steps, const Tolerance& tol) {
        DeformPath p = deform_to_standard(graph_of(text), steps, tol);
        std::vector<std::string> snaps;
        for (const auto& g : p.snapshots) snaps.push_back(graph_text(g));
        return py::make_tuple(p.signature, snaps);
    }, py::arg("text"), py::arg("steps") = 100, py::arg("tol") = Tolerance{});

    m.def("limit_set_sample", [](const std::string& text, int max_word_length, std::uint64_t seed, const Tolerance& tol) {
        LimitSampleOptions o;
        o.max_word_length = max_word_length;
        o.seed = seed;
        LimitSample s = limit_set_sample(build_from_graph(graph_of(text), tol), o, tol);
        py::dict d;
        d["points"] = s.points.size();
        d["non_transverse"] = s.non_transverse;
        d["min_pair_sigma"] = s.min_pair_sigma;
        d["beta_histogram"] = s.beta_histogram;
        d["triples"] = s.triples_sampled;
        return d;
    }, py::arg("text"), py::arg("max_word_length") = 4, py::arg("seed") = 1, py::arg("tol") = Tolerance{});
}
