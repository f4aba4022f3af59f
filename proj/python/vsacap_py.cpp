#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "vsacap/harness.hpp"
#include "vsacap/oracle.hpp"
#include "vsacap/rng.hpp"
#include "vsacap/serialize.hpp"

namespace py = pybind11;
using namespace vsacap;

namespace {

// JSON crosses the boundary as text; the Python wrapper converts with json.
nlohmann::json parse(const std::string& s) { return nlohmann::json::parse(s); }

SymbolSet make_set(std::uint64_t d, const py::object& items) {
  SymbolSet v(d);
  if (py::isinstance<py::dict>(items)) {
    for (auto [k, w] : items.cast<py::dict>()) v.set(k.cast<std::uint64_t>(), w.cast<std::uint32_t>());
  } else {
    for (auto id : items) v.set(id.cast<std::uint64_t>(), 1);
  }
  return v;
}

py::dict to_dict(const SymbolSet& v) {
  py::dict out;
  for (const auto& [id, w] : v.entries()) out[py::int_(id)] = w;
  return out;
}

std::string experiment_csv(const std::string& config_json) {
  const auto config = ExperimentConfig::from_json(parse(config_json));
  std::vector<CellSummary> cells;
  {
    py::gil_scoped_release release;
    cells = run(config);
  }
  std::ostringstream os;
  write_csv(os, config, cells);
  return os.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "vsacap native core";
  m.attr("rng_version") = rng::version_string();

  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<SymbolSet>(m, "SymbolSet")
      .def(py::init(&make_set), py::arg("d"), py::arg("items") = py::list())
      .def_property_readonly("d", &SymbolSet::universe)
      .def("entries", &to_dict)
      .def("l1_norm", &SymbolSet::l1_norm)
      .def("__contains__", &SymbolSet::contains)
      .def("__len__", &SymbolSet::support_size)
      .def("to_json", [](const SymbolSet& v) { return v.to_json().dump(); })
      .def(py::self == py::self);

  m.def("intersection_size", &intersection_size);
  m.def("wedgedot", &wedgedot);
  m.def("l1_distance", &l1_distance);

  py::class_<Codebook>(m, "Codebook")
      .def(py::init([](const std::string& kind, std::uint64_t mm, std::uint64_t d, std::uint32_t k, std::uint64_t seed,
                       bool scaled) {
             return Codebook(CodebookParams{codebook_kind_from_string(kind), mm, d, k, seed, scaled});
           }),
           py::arg("kind"), py::arg("m"), py::arg("d"), py::arg("k") = 0, py::arg("seed") = 0,
           py::arg("scaled") = false)
      .def_property_readonly("m", &Codebook::m)
      .def_property_readonly("d", &Codebook::d)
      .def_property_readonly("k", &Codebook::k)
      .def_property_readonly("seed", &Codebook::seed)
      .def_property_readonly("kind", [](const Codebook& c) { return std::string(to_string(c.kind())); })
      .def_property_readonly("fingerprint", &Codebook::fingerprint)
      .def("column", [](const Codebook& c, std::uint64_t j) {
        const auto h = c.atomic(j);
        return std::vector<std::int32_t>(h.raw().begin(), h.raw().end());
      })
      .def("to_json", [](const Codebook& c) { return c.to_json().dump(); })
      .def_static("from_json", [](const std::string& s) { return Codebook::from_json(parse(s)); });

  py::class_<MapIBundle>(m, "MapIBundle")
      .def_property_readonly("raw", [](const MapIBundle& b) {
        return std::vector<std::int32_t>(b.raw().begin(), b.raw().end());
      })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self == py::self);
  m.def("sketch", &sketch);
  m.def("norm_sq_estimate", &norm_sq_estimate);
  m.def("dot_estimate", &dot_estimate);
  m.def("intersection_estimate", py::overload_cast<const MapIBundle&, const MapIBundle&>(&intersection_estimate));

  py::class_<MembershipResult>(m, "MembershipResult")
      .def_readonly("is_member", &MembershipResult::in)
      .def_readonly("score", &MembershipResult::score)
      .def_readonly("threshold", &MembershipResult::threshold)
      .def_readonly("depth_warning", &MembershipResult::depth_warning);
  py::class_<MapBBundle>(m, "MapBBundle")
      .def_property_readonly("depth", &MapBBundle::depth)
      .def_property_readonly("tie_seed", &MapBBundle::tie_seed)
      .def(py::self == py::self);
  m.def("bundle_sign", &bundle_sign, py::arg("cb"), py::arg("v"), py::arg("tie_seed") = py::none());
  m.def("membership_test", &membership_test);
  m.def("empty_intersection_test", [](const MapBBundle& a, const MapBBundle& b, double delta) {
    return empty_intersection_test(a, b, delta).nonempty;
  });

  py::class_<BloomBundle>(m, "BloomBundle")
      .def("popcount", &BloomBundle::popcount)
      .def(py::self == py::self);
  m.def("bundle_bloom", &bundle_bloom);
  m.def("h_mk", [](std::uint64_t mm, std::uint32_t k, double z) { return h_mk(mm, k, z).value; });
  m.def("bloom_size_estimate", [](const BloomBundle& b) { return size_estimate(b).value; });
  m.def("bloom_intersection_estimate",
        [](const BloomBundle& a, const BloomBundle& b) { return intersection_estimate(a, b).value; });

  py::class_<CountBundle>(m, "CountBundle")
      .def("mass", &CountBundle::mass)
      .def(py::self + py::self)
      .def(py::self == py::self);
  m.def("bundle_count", &bundle_count);
  m.def("generalized_intersection_estimate", &generalized_intersection_estimate);
  m.def("l1_distance_estimate", &l1_distance_estimate);

  py::class_<HopfieldNet>(m, "HopfieldNet")
      .def_property_readonly("m", &HopfieldNet::m)
      .def_property_readonly("n", &HopfieldNet::n)
      .def("weight", &HopfieldNet::weight);
  m.def("train_columns", [](const Codebook& cb, std::uint64_t n) {
    std::vector<Hypervector> ps;
    for (std::uint64_t j = 0; j < n; ++j) ps.push_back(cb.atomic(j));
    return train(ps);
  });
  m.def("recall", [](const HopfieldNet& net, const std::vector<std::int32_t>& y, unsigned max_iters) {
    const auto r = recall(net, Hypervector(Domain::integer, y), max_iters);
    return py::make_tuple(std::vector<std::int32_t>(r.state.raw().begin(), r.state.raw().end()), r.converged,
                          r.iterations);
  }, py::arg("net"), py::arg("y"), py::arg("max_iters") = 64);

  m.def("size_json", [](const std::string& arch, const std::string& task, const std::map<std::string, double>& p) {
    return size(arch_from_string(arch), task, SizingParams::from_map(p)).to_json().dump();
  });
  m.def("agreement_probability", &agreement_probability);
  m.def("depth_agreement_probability", &depth_agreement_probability);
  m.def("experiment_csv", &experiment_csv);
  m.def("calibrate_json", [](const std::string& arch, const std::string& task, const std::map<std::string, double>& p,
                             double target, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
    py::gil_scoped_release release;
    return calibrate(arch, task, p, target, trials, seed, threads).to_json().dump();
  });

  m.def("save_bundle", [](const std::string& path, const py::object& b) {
    if (py::isinstance<MapIBundle>(b)) return save_bundle(path, b.cast<MapIBundle>());
    if (py::isinstance<MapBBundle>(b)) return save_bundle(path, b.cast<MapBBundle>());
    if (py::isinstance<BloomBundle>(b)) return save_bundle(path, b.cast<BloomBundle>());
    if (py::isinstance<CountBundle>(b)) return save_bundle(path, b.cast<CountBundle>());
    throw py::type_error("unsupported bundle type");
  });
  m.def("load_bundle", [](const std::string& path) -> py::object {
    auto b = load_bundle(path);
    return std::visit(
        [](auto&& x) -> py::object {
          if constexpr (std::is_same_v<std::decay_t<decltype(x)>, HpmBundle>) {
            throw py::type_error("Hopfield+- bundles are not exposed");
          } else {
            return py::cast(std::move(x));
          }
        },
        std::move(b));
  });
}
