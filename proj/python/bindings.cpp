// Python module: each binding wraps one CLI-level entry point and returns
// (exit_code, report_json_string).  Parsing the JSON on the Python side keeps
// the ABI surface to plain strings.

#include <pybind11/pybind11.h>

#include <string>
#include <utility>

#include "epc/api.hpp"

namespace py = pybind11;

namespace {

std::pair<int, std::string> pack(const epc::ApiResult& r) {
  return {r.exit_code, r.report.dump()};
}

}  // namespace

PYBIND11_MODULE(_epc, m) {
  m.doc() = "exact calculus for extended Poisson structures on flat complex models";
  m.attr("__version__") = epc::kVersion;

  m.def("check_mc", [](const std::string& input, bool verbose) {
    return pack(epc::api_check_mc(input, verbose));
  }, py::arg("input"), py::arg("verbose") = false);

  m.def("d2", [](const std::string& input, int trials, unsigned long seed, int max_degree) {
    return pack(epc::api_d2(input, trials, seed, max_degree));
  }, py::arg("input"), py::arg("trials") = 20, py::arg("seed") = 0, py::arg("max_degree") = 3);

  m.def("gc", [](const std::string& input, int grid) {
    return pack(epc::api_gc(input, grid));
  }, py::arg("input"), py::arg("grid") = 5);

  m.def("ellipticity", [](const std::string& input, int grid) {
    return pack(epc::api_ellipticity(input, grid));
  }, py::arg("input"), py::arg("grid") = 5);

  m.def("homology", [](const std::string& input, const std::string& complex_kind, int cutoff) {
    return pack(epc::api_homology(input, complex_kind, cutoff));
  }, py::arg("input"), py::arg("complex_kind"), py::arg("cutoff"));

  m.def("pairing", [](const std::string& input, int degree, int cutoff) {
    return pack(epc::api_pairing(input, degree, cutoff));
  }, py::arg("input"), py::arg("degree"), py::arg("cutoff"));

  m.def("verify_main1", [](const std::string& input, int trials, unsigned long seed, int max_degree) {
    return pack(epc::api_verify_main1(input, trials, seed, max_degree));
  }, py::arg("input"), py::arg("trials") = 20, py::arg("seed") = 0, py::arg("max_degree") = 3);

  m.def("modular", [](const std::string& input, const std::string& form) {
    return pack(epc::api_modular(input, form));
  }, py::arg("input"), py::arg("form") = "1");

  m.def("coisotropic", [](const std::string& input, const std::string& subspace) {
    return pack(epc::api_coisotropic(input, subspace));
  }, py::arg("input"), py::arg("subspace"));

  m.def("poisson_map", [](const std::string& source, const std::string& target,
                          const std::string& matrix) {
    return pack(epc::api_poisson_map(source, target, matrix));
  }, py::arg("source"), py::arg("target"), py::arg("matrix"));
}
