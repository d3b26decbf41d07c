// python face of the engine: parameter handling, case expansion and the
// spectrum/rixs/counters runs, mirroring the command line tool
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "hxx/case_dir.hpp"
#include "hxx/runner.hpp"

namespace py = pybind11;
using namespace hxx;

namespace {

std::map<std::string, size_t> expand_case(const std::string& dir, const ParamSet& p, int nmin,
                                          int nhopped, bool spinfixed,
                                          std::optional<int> twice_sz, bool force) {
    Model m = build_model(p, nmin, nhopped, spinfixed, twice_sz);
    CaseManifest man = write_case(dir, m, p, force);
    return man.dims;
}

py::dict channel_dict(const SpectrumResult& s, const std::vector<std::string>& names) {
    py::dict d;
    for (size_t c = 0; c < s.channels.size(); ++c)
        d[py::str(names.at(c))] = s.channels[c];
    return d;
}

py::tuple spectrum(const std::string& dir, const ParamSet& p, const std::vector<cd>& pol) {
    LoadedCase lc = load_case(dir);
    NamedChannels nc = absorption_channels(lc, p, pol);
    SpectrumResult s = run_spectrum(lc, p, pol);
    return py::make_tuple(s.energies, channel_dict(s, nc.names));
}

py::tuple rixs_run(const std::string& dir, const ParamSet& p, double ein, double eout1,
                   double eout2, double dout, double gammain, double gammaout_low,
                   double gammaout_cross, double gammaout_high, const std::vector<cd>& polin,
                   const std::vector<cd>& polout) {
    LoadedCase lc = load_case(dir);
    RixsRequest rq;
    rq.ein = ein;
    rq.eout1 = eout1;
    rq.eout2 = eout2;
    rq.dout = dout;
    rq.gammain = gammain;
    rq.gammaout_low = gammaout_low;
    rq.gammaout_cross = gammaout_cross;
    rq.gammaout_high = gammaout_high;
    rq.polin = polin;
    rq.polout = polout;
    SpectrumResult s = run_rixs(lc, p, rq);
    return py::make_tuple(s.energies, s.channels.at(0));
}

py::tuple counters_run(const std::string& dir, const ParamSet& p) {
    LoadedCase lc = load_case(dir);
    CounterTable t = run_counters(lc, p);
    std::vector<std::string> names = {"E"};
    names.insert(names.end(), lc.man.observables.begin(), lc.man.observables.end());
    return py::make_tuple(names, t.rows);
}

py::dict case_dims(const std::string& dir) {
    CaseManifest man = read_manifest(dir);
    py::dict d;
    for (const auto& [space, n] : man.dims) d[py::str(space)] = n;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact-diagonalization engine for atomic multiplet core-level spectroscopy";

    py::class_<ParamSet>(m, "ParamSet")
        .def_static("defaults", &ParamSet::defaults, py::arg("klass"),
                    "parameter table of a calculation class (2p3d, rixs, df)")
        .def_property_readonly("klass", &ParamSet::klass)
        .def("keys", &ParamSet::keys)
        .def("set", &ParamSet::set, py::arg("key"), py::arg("value"),
             "assign one key from its text form")
        .def("show", &ParamSet::show, py::arg("key"), "text form of one value")
        .def("validate", &ParamSet::validate)
        .def("__eq__", [](const ParamSet& a, const ParamSet& b) { return a == b; })
        .def("__repr__",
             [](const ParamSet& p) { return "<ParamSet class=" + p.klass() + ">"; });

    m.def("load_params", &load_params, py::arg("path"));
    m.def("save_params", &save_params, py::arg("params"), py::arg("path"));

    m.def("expand_case", &expand_case, py::arg("dir"), py::arg("params"), py::arg("nmin"),
          py::arg("nhopped") = 0, py::arg("spinfixed") = false,
          py::arg("twice_sz") = std::nullopt, py::arg("force") = false,
          "build the configuration ladder spaces, project every operator and store the case; "
          "returns the space dimensions");
    m.def("case_dims", &case_dims, py::arg("dir"), "space dimensions of a stored case");

    m.def("spectrum", &spectrum, py::arg("dir"), py::arg("params"),
          py::arg("pol") = std::vector<cd>{},
          "absorption on a stored case; returns (energies, {channel: values}). Empty pol "
          "keeps one channel per spherical component, 3 or 5 coefficients combine them");
    m.def("rixs", &rixs_run, py::arg("dir"), py::arg("params"), py::arg("ein"),
          py::arg("eout1"), py::arg("eout2"), py::arg("dout"), py::arg("gammain") = 0.2,
          py::arg("gammaout_low") = 0.5, py::arg("gammaout_cross") = 0.0,
          py::arg("gammaout_high") = 1.0, py::arg("polin") = std::vector<cd>{cd(1, 0), cd(0, 0), cd(0, 0)},
          py::arg("polout") = std::vector<cd>{cd(1, 0), cd(0, 0), cd(0, 0)},
          "resonant scattering on a stored case; returns (outgoing energies, values)");
    m.def("counters", &counters_run, py::arg("dir"), py::arg("params"),
          "ground-manifold observables; returns (column names, one row per retained state)");
}
