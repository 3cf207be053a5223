#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "btl/multiplier.hpp"
#include "btl/suites.hpp"

namespace py = pybind11;
using namespace btl;

namespace {

GraphKind kind_of(const std::string& s) {
    if (s == "cycle") return GraphKind::Cycle;
    if (s == "torus") return GraphKind::Torus;
    if (s == "path") return GraphKind::Path;
    if (s == "tree") return GraphKind::Tree;
    throw PreconditionError("unknown model kind '" + s + "'");
}

ModelSpace make_model(const std::string& kind, int n, double scale, std::vector<double> mu,
                      std::vector<std::tuple<int, int, double>> edges) {
    ModelSpec spec;
    spec.kind = kind_of(kind);
    spec.n = n;
    spec.scale = scale;
    spec.mu = std::move(mu);
    for (auto [u, v, len] : edges) spec.edges.push_back({u, v, len});
    return build_model(spec);
}

py::dict record_dict(const Record& r) {
    py::dict d;
    d["suite"] = r.suite;
    d["anchor"] = r.anchor;
    d["hard"] = r.hard;
    d["status"] = to_string(r.status);
    d["message"] = r.message;
    py::dict f;
    for (const auto& [k, v] : r.fields) f[py::str(k)] = v;
    d["fields"] = f;
    return d;
}

}  // namespace

PYBIND11_MODULE(_btl, mod) {
    mod.doc() = "finite-model frames, sequence spaces and verification suites";

    py::register_exception<ConfigError>(mod, "ConfigError", PyExc_ValueError);
    py::register_exception<PreconditionError>(mod, "PreconditionError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(mod, "ConvergenceError", PyExc_RuntimeError);

    py::class_<ModelSpace>(mod, "Model")
        .def_readonly("name", &ModelSpace::name)
        .def_readonly("n", &ModelSpace::n)
        .def_readonly("dist", &ModelSpace::dist)
        .def_readonly("mu", &ModelSpace::mu)
        .def_readonly("L", &ModelSpace::L)
        .def_property_readonly("diameter", &ModelSpace::diameter)
        .def("ball_volume", [](const ModelSpace& m, int x, double r) { return ball_volume(m, x, r); });
    mod.def("model", &make_model, py::arg("kind") = "cycle", py::arg("n") = 8, py::arg("scale") = 1.0,
            py::arg("mu") = std::vector<double>{}, py::arg("edges") = std::vector<std::tuple<int, int, double>>{});

    py::class_<DoublingProfile>(mod, "DoublingProfile")
        .def_readonly("c0", &DoublingProfile::c0)
        .def_readonly("d", &DoublingProfile::d)
        .def_readonly("c2", &DoublingProfile::c2)
        .def_readonly("dstar", &DoublingProfile::dstar);
    mod.def("doubling", [](const ModelSpace& m) { return measure_doubling(m); });
    mod.def("maximal_net", [](const ModelSpace& m, double delta) { return build_maximal_net(m, delta); });

    py::class_<SpectralData>(mod, "Spectrum")
        .def_readonly("eigenvalues", &SpectralData::lambda)
        .def_readonly("eigenvectors", &SpectralData::E)
        .def("to_coeffs", &SpectralData::to_coeffs)
        .def("from_coeffs", &SpectralData::from_coeffs)
        .def("apply", [](const SpectralData& sd, const std::function<double(double)>& f, const Vec& g) {
            return apply_spectral(sd, symbol_on_spectrum(sd, f, 1.0), g);
        }, py::arg("symbol"), py::arg("g"), "apply symbol(sqrt(L)) to g")
        .def("heat", [](const SpectralData& sd, double t) { return heat_kernel(sd, t).table; });
    mod.def("spectrum", &eigendecompose);

    py::class_<Frame>(mod, "Frame")
        .def_readonly("level", &Frame::level)
        .def_readonly("center", &Frame::center)
        .def_readonly("values", &Frame::values)
        .def("__len__", &Frame::size)
        .def("analysis", &Frame::analysis)
        .def("synthesis", &Frame::synthesis);
    py::class_<FramePair>(mod, "FramePair")
        .def_readonly("primal", &FramePair::primal)
        .def_readonly("dual", &FramePair::dual)
        .def_readonly("gamma", &FramePair::gamma)
        .def_property_readonly("window", [](const FramePair& f) {
            return std::make_pair(f.window.j_min, f.window.j_max);
        });
    mod.def("frames", [](const ModelSpace& m, const SpectralData& sd, double b, double gamma, bool inhomogeneous) {
        FrameConfig cfg;
        cfg.b = b;
        cfg.gamma = gamma;
        cfg.mode = inhomogeneous ? Mode::Inhomogeneous : Mode::Homogeneous;
        return build_frame_pair(m, sd, cfg);
    }, py::arg("model"), py::arg("spectrum"), py::arg("b") = 2.0, py::arg("gamma") = 1.0,
       py::arg("inhomogeneous") = false);

    py::class_<SymbolExpr>(mod, "Symbol")
        .def(py::init(&SymbolExpr::parse))
        .def("__call__", &SymbolExpr::operator())
        .def("derivative", &SymbolExpr::derivative)
        .def_property_readonly("text", &SymbolExpr::text);

    mod.def("list_suites", [] {
        py::list out;
        for (const auto& s : suite_catalogue()) out.append(py::make_tuple(s.name, s.anchor, s.hard));
        return out;
    });
    mod.def("run", [](const std::string& json_text) {
        SuiteConfig cfg = parse_config(json_text);
        Report rep;
        {
            py::gil_scoped_release nogil;
            rep = run_suites(cfg);
        }
        py::dict d;
        py::dict man;
        for (const auto& [k, v] : rep.manifest) man[py::str(k)] = v;
        d["manifest"] = man;
        py::list recs;
        for (const auto& r : rep.records) recs.append(record_dict(r));
        d["records"] = recs;
        d["hard_failure"] = rep.hard_failure();
        d["machine"] = rep.machine();
        return d;
    }, py::arg("config_json"));
}
