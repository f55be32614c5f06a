#include "liestab/builtins.hpp"
#include "liestab/errors.hpp"
#include "liestab/io.hpp"
#include "liestab/sampling.hpp"
#include "liestab/stability.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace liestab;

namespace {

// Reports cross the boundary as JSON text; the Python side decodes them.
std::string dump(const Json& j) { return j.dump(); }

Trajectory run(const Scenario& s, const std::optional<Vector>& X0, std::optional<long> horizon) {
  return simulate(s.system, X0 ? *X0 : s.X0, s.signal, horizon ? *horizon : s.horizon);
}

}  // namespace

PYBIND11_MODULE(_liestab, m) {
  m.doc() = "Class-A dynamics on solvable Lie algebras";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<HypothesisError>(m, "HypothesisError", PyExc_RuntimeError);
  py::register_exception<InvarianceViolation>(m, "InvarianceViolation", PyExc_RuntimeError);
  py::register_exception<PrincipalLogUndefined>(m, "PrincipalLogUndefined", PyExc_ValueError);

  py::class_<LieAlgebra>(m, "LieAlgebra")
      .def_property_readonly("name", &LieAlgebra::name)
      .def_property_readonly("dim", &LieAlgebra::dim)
      .def_property_readonly("labels", &LieAlgebra::labels)
      .def("bracket", &LieAlgebra::bracket)
      .def("ad", &LieAlgebra::ad)
      .def("structure_constants", &LieAlgebra::structure_constants)
      .def("is_nilpotent", [](const LieAlgebra& a) { return is_nilpotent(a).nilpotent; })
      .def("nilindex", [](const LieAlgebra& a) { return is_nilpotent(a).nilindex; })
      .def("is_solvable", [](const LieAlgebra& a) { return is_solvable(a).solvable; })
      .def("lower_central_dims",
           [](const LieAlgebra& a) {
             std::vector<int> dims;
             for (const auto& s : lower_central_series(a, Subspace::full(a.dim())).ideals) dims.push_back(s.dim());
             return dims;
           })
      .def("derived_dims", [](const LieAlgebra& a) {
        std::vector<int> dims;
        for (const auto& s : derived_series(a).ideals) dims.push_back(s.dim());
        return dims;
      });

  m.def("algebra", &catalog::by_name, py::arg("name"));
  m.def("algebra_from_json", [](const std::string& text) { return algebra_from_json(Json::parse(text)); });

  py::class_<Scenario>(m, "Scenario")
      .def_static("builtin", &builtin, py::arg("name"))
      .def_static("load", &load_scenario, py::arg("path"))
      .def_static("from_json", [](const std::string& text) { return scenario_from_json(Json::parse(text)); })
      .def_readonly("name", &Scenario::name)
      .def_readonly("X0", &Scenario::X0)
      .def_readonly("horizon", &Scenario::horizon)
      .def_readonly("M", &Scenario::M)
      .def_property_readonly("algebra", [](const Scenario& s) { return s.system.algebra; })
      .def_property_readonly("A", [](const Scenario& s) { return s.system.A; })
      .def_property_readonly("n", [](const Scenario& s) { return s.system.n; })
      .def_property_readonly("r", [](const Scenario& s) { return s.system.r; })
      .def("input", [](const Scenario& s, long k) { return s.signal.at(k); })
      .def("eval", [](const Scenario& s, const Vector& X, const Vector& W) { return eval(s.system, X, W); })
      .def(
          "simulate",
          [](const Scenario& s, std::optional<Vector> X0, std::optional<long> horizon) {
            const Trajectory tr = run(s, X0, horizon);
            Matrix states(static_cast<Eigen::Index>(tr.states.size()), s.system.state_size());
            for (std::size_t k = 0; k < tr.states.size(); ++k) states.row(static_cast<Eigen::Index>(k)) = tr.states[k].transpose();
            py::dict out;
            out["states"] = states;
            out["norms"] = tr.norms;
            out["quotient_norms"] = tr.qnorms;
            out["diverged"] = tr.diverged;
            return out;
          },
          py::arg("X0") = py::none(), py::arg("horizon") = py::none())
      .def("to_json", [](const Scenario& s) { return dump(scenario_to_json(s)); });

  m.def("_check", [](const Scenario& s, std::uint64_t seed) {
    Json j;
    j["equilibrium"] = to_json(check_equilibrium_uniqueness(s.system, s.signal, 10.0, 100, seed));
    j["invariance"] = to_json(check_invariance(s.system, 100, seed + 1));
    j["jacobian"] = to_json(jacobian_check(s.system, {1e-2, 1e-3, 1e-4}, seed + 2));
    const RadiusEstimate r = radius_estimate(s.system);
    j["radius"] = to_json(r);
    j["majorant"] = to_json(class_a_majorant(s.system, r.radius));
    return dump(j);
  });
  m.def(
      "_certify_nilpotent",
      [](const Scenario& s, double M, double epsilon) {
        return dump(to_json(certify_nilpotent(s.system, s.signal, M > 0 ? M : s.M, epsilon)));
      },
      py::arg("scenario"), py::arg("M") = 0.0, py::arg("epsilon") = 0.0);
  m.def(
      "_certify_solvable",
      [](const Scenario& s, long horizon) {
        return dump(to_json(certify_solvable(s.system, s.signal, {s.X0}, horizon > 0 ? horizon : s.horizon)));
      },
      py::arg("scenario"), py::arg("horizon") = 0);
  m.def(
      "_deadbeat",
      [](const Scenario& s, int runs, std::uint64_t seed) {
        const DeadbeatCertificate c = deadbeat_horizon(s.system);
        Json j = to_json(c);
        j["runs"] = to_json(verify_deadbeat(s.system, c, runs, s.M, s.signal.beta(), seed));
        return dump(j);
      },
      py::arg("scenario"), py::arg("runs") = 100, py::arg("seed") = 1);
  m.def("fit_envelope", [](const std::vector<std::vector<double>>& norms) {
    const EnvelopeFit f = fit_envelope(norms);
    return py::make_tuple(f.alpha, f.lambda, f.certified);
  });

  m.def("expm", &expm);
  m.def("logm", &logm);
  m.def(
      "bch_compose",
      [](const LieAlgebra& a, const Element& X, const Element& Y, int order) { return bch_compose(a, X, Y, order); },
      py::arg("algebra"), py::arg("X"), py::arg("Y"), py::arg("order") = kBchMaxOrder);
  m.def("adjoint_flow_step", &adjoint_flow_step);
  m.def("builtin_names", &builtin_names);
}
