// Python bindings for the main operations: workspace parsing, taxonomy,
// compactness certification, witnesses, approximants, and norm estimates.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "semicross/workspace.hpp"

namespace py = pybind11;
using namespace semicross;

namespace {

std::string point_str(const Workspace& ws, const Point& p) {
  return point_to_string(*ws.system, p);
}

py::dict certificate_dict(const Workspace& ws, const Certificate& cert) {
  py::dict out;
  out["verdict"] = verdict_to_string(cert.verdict);
  py::list pairs;
  for (const auto& pr : cert.pairs) {
    py::dict d;
    d["m"] = pr.m;
    d["n"] = pr.n;
    d["a"] = pr.a_pass;
    d["b"] = pr.b_pass;
    d["c"] = pr.c_pass;
    py::list failures;
    for (const auto& loc : pr.failures) {
      py::dict f;
      f["condition"] = cond_to_string(loc.cond);
      if (loc.limit >= 0) f["limit"] = ws.system->limits()[loc.limit].name;
      if (loc.cycle >= 0) {
        f["cycle"] = ws.system->cycles()[loc.cycle].name;
        f["index"] = loc.cycle_index;
      }
      if (loc.chain >= 0) f["chain"] = ws.system->chains()[loc.chain].name;
      f["l0"] = loc.l0;
      failures.append(f);
    }
    d["failures"] = failures;
    pairs.append(d);
  }
  out["pairs"] = pairs;
  py::list vanishing;
  for (const auto& vf : cert.vanishing) {
    py::dict d;
    d["degree"] = vf.degree;
    d["point"] = point_str(ws, vf.at);
    vanishing.append(d);
  }
  out["vanishing"] = vanishing;
  return out;
}

}  // namespace

PYBIND11_MODULE(_semicross, m) {
  m.doc() = "compactness certificates for semicrossed-product multiplication operators";

  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<DynSysError>(m, "DynSysError");

  py::class_<Workspace>(m, "Workspace")
      .def_static("from_text", [](const std::string& text) { return parse_workspace_text(text); })
      .def_static("load", [](const std::string& path) { return load_workspace(path); })
      .def("serialize", [](const Workspace& ws) { return serialize_workspace(ws); })
      .def("functions",
           [](const Workspace& ws) {
             std::vector<std::string> names;
             for (const auto& [n, f] : ws.functions) names.push_back(n);
             return names;
           })
      .def("elements",
           [](const Workspace& ws) {
             std::vector<std::string> names;
             for (const auto& [n, e] : ws.elements) names.push_back(n);
             return names;
           })
      .def("classify",
           [](const Workspace& ws) {
             const DynamicalSystem& sys = *ws.system;
             Taxonomy tax = taxonomy(sys);
             py::dict out;
             out["X_i"] = pointset_to_string(sys, tax.isolated);
             out["X_a"] = pointset_to_string(sys, tax.accumulation);
             out["X_a_i"] = pointset_to_string(sys, tax.accumulation_of_isolated);
             out["X_r"] = pointset_to_string(sys, recurrent_set(sys));
             out["X_w"] = pointset_to_string(sys, wandering_set(sys));
             return out;
           })
      .def("certify",
           [](const Workspace& ws, const std::string& a, const std::string& b) {
             return certificate_dict(ws, certify_mult_compact(ws.element(a), ws.element(b)));
           })
      .def("certify_element",
           [](const Workspace& ws, const std::string& a) {
             return certificate_dict(ws, certify_element_compact(ws.element(a)));
           })
      .def("ideal_membership",
           [](const Workspace& ws, const std::string& a) {
             return certificate_dict(ws, ideal_membership(ws.element(a)));
           })
      .def("witnesses",
           [](const Workspace& ws, const std::string& a, const std::string& b, int count) {
             const AlgebraElement& ea = ws.element(a);
             const AlgebraElement& eb = ws.element(b);
             Certificate cert = certify_mult_compact(ea, eb);
             WitnessFamily fam = witness_family(ea, eb, cert, count);
             NormValue sep = verify_separation(ea, eb, fam);
             py::dict out;
             out["condition"] = cond_to_string(fam.generated_by);
             out["m0"] = fam.m0;
             out["n0"] = fam.n0;
             out["delta"] = norm_to_report_string(fam.delta);
             out["separation"] = norm_to_report_string(sep);
             py::list entries;
             for (std::size_t i = 0; i < fam.elements.size(); ++i) {
               py::dict e;
               e["l"] = fam.shifts[i];
               e["point"] = point_str(ws, fam.points[i]);
               entries.append(e);
             }
             out["witnesses"] = entries;
             return out;
           })
      .def("approximate",
           [](const Workspace& ws, const std::string& a, const std::string& b, long k) {
             Approximant ap = finite_rank_approximant(ws.element(a), ws.element(b), k);
             py::dict out;
             out["k"] = ap.k;
             out["L0"] = ap.l0;
             out["rank_bound"] = ap.rank_bound;
             py::list support;
             for (const Point& p : ap.support) support.append(point_str(ws, p));
             out["support"] = support;
             return out;
           })
      .def("repnorm",
           [](const Workspace& ws, const std::string& a, long window, int depth, double tol) {
             NormSandwich ns =
                 norm_sandwich(*ws.system, ws.element(a), TruncationSpec{window, depth}, tol);
             return py::make_tuple(ns.lower, ns.estimate, ns.upper);
           },
           py::arg("element"), py::arg("window") = 10, py::arg("depth") = 10,
           py::arg("tol") = 1e-9);
}
