#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "radmul/cli.hpp"
#include "radmul/config.hpp"
#include "radmul/freeprod_verify.hpp"
#include "radmul/multiplier.hpp"
#include "radmul/symbol_hankel.hpp"

namespace py = pybind11;
using namespace radmul;

namespace {

RadialSymbol symbol_from_json(const std::string& text) { return parse_symbol(nlohmann::json::parse(text)); }

RunConfig config_from_json(const std::string& text) { return parse_config(nlohmann::json::parse(text)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Radial multipliers on amalgamated free products";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<RadialSymbol>(m, "Symbol")
      .def(py::init([](const std::string& text) { return symbol_from_json(text); }), py::arg("json"))
      .def_static("delta0", &RadialSymbol::delta0)
      .def_static("indicator", &RadialSymbol::indicator, py::arg("last"))
      .def_static("constant", &RadialSymbol::constant, py::arg("value"))
      .def_static("geometric", &RadialSymbol::geometric, py::arg("coefficient"), py::arg("ratio"), py::arg("limit") = cplx(0.0))
      .def("__call__", &RadialSymbol::operator(), py::arg("n"))
      .def_property_readonly("limit", &RadialSymbol::limit)
      .def_property_readonly("default_truncation", &RadialSymbol::default_truncation)
      .def("to_json", [](const RadialSymbol& s) { return symbol_to_json(s).dump(); })
      .def("psi", [](const RadialSymbol& s, std::size_t n) {
        const auto p = psi_decompose(s);
        return py::make_tuple(p.psi1(n), p.psi2(n), p.c());
      }, py::arg("n"));

  m.def("norm_c", [](const RadialSymbol& s, std::size_t dim) {
    const auto nc = norm_c(s, dim == 0 ? s.default_truncation() : dim);
    py::dict d;
    d["value"] = nc.value;
    d["error_bound"] = nc.error_bound;
    d["h_trace_norm"] = nc.h_trace_norm;
    d["k_trace_norm"] = nc.k_trace_norm;
    d["abs_limit"] = nc.abs_limit;
    return d;
  }, py::arg("symbol"), py::arg("dim") = 0);

  m.def("ricard_xu_bound", &ricard_xu_bound, py::arg("symbol"));

  m.def("_verify", [](const std::string& config, const std::string& suite, std::optional<std::uint64_t> seed) {
    auto cfg = config_from_json(config);
    if (seed) cfg.seed = *seed;
    VerificationReport rep;
    {
      py::gil_scoped_release release;
      rep = run_suite(cfg, suite);
    }
    return rep.to_json(cfg.digest(), cfg.seed).dump();
  }, py::arg("config"), py::arg("suite") = "all", py::arg("seed") = py::none());

  m.def("_bound", [](const std::string& config, std::optional<std::uint64_t> seed) {
    auto cfg = config_from_json(config);
    if (seed) cfg.seed = *seed;
    BoundEstimate est;
    {
      py::gil_scoped_release release;
      const RadialMultiplier t(cfg.symbol, std::make_shared<FockSpace>(cfg.system, cfg.options.fock_len), cfg.options.hankel_dim);
      est = sampled_bound(t, cfg.options.bound_samples, cfg.options.amplifications, cfg.seed);
    }
    py::dict d;
    d["norm_c"] = est.norm_c;
    d["sup_ratio"] = est.sup_ratio;
    d["sup_ratio_by_amplification"] = est.sup_ratio_by_amplification;
    d["lower_envelope"] = est.lower_envelope;
    d["max_abs_phi"] = est.max_abs_phi;
    d["samples"] = est.samples;
    return d;
  }, py::arg("config"), py::arg("seed") = py::none());

  m.def("preset_algebra", [](const std::string& name) { return preset_algebra(name).dump(); }, py::arg("name"));
}
