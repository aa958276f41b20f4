#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <string>

#include "vcavity/negativity.hpp"
#include "vcavity/oracle.hpp"
#include "vcavity/propagator.hpp"
#include "vcavity/sweep.hpp"

namespace py = pybind11;
using namespace vcavity;

namespace {

using AmpTuple = std::array<Complex, 4>;

Branch parse_branch(const std::string& s) {
  if (s == "+" || s == "plus") return Branch::Plus;
  if (s == "-" || s == "minus") return Branch::Minus;
  throw py::value_error("branch must be '+' or '-'");
}

InitialState to_state(const py::object& obj) {
  if (py::isinstance<py::str>(obj)) return parse_initial_state(obj.cast<std::string>());
  return Amplitudes::from_array(obj.cast<AmpTuple>());
}

AmplitudeSet to_set(const AmpTuple& a) { return {Amplitudes::from_array(a), 0.0}; }

py::dict trajectory_dict(const Trajectory& tr) {
  std::vector<double> t, n, p;
  std::vector<std::array<double, 4>> abs2;
  for (const auto& pt : tr.points) {
    t.push_back(pt.t);
    n.push_back(pt.negativity);
    p.push_back(pt.p);
    abs2.push_back(pt.abs2);
  }
  py::dict d;
  d["label"] = tr.label;
  d["t"] = t;
  d["negativity"] = n;
  d["p"] = p;
  d["abs2"] = abs2;
  return d;
}

}  // namespace

PYBIND11_MODULE(_vcavity, m) {
  m.doc() = "Two V-type atoms in a dissipative cavity: closed-form amplitudes and negativity";

  py::register_exception<Error>(m, "VcavityError", PyExc_ValueError);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init([](double gamma0, double kappa, double theta, double omega) {
             return ModelParams{gamma0, kappa, theta, omega};
           }),
           py::arg("gamma0") = 0.1, py::arg("kappa") = 1.0, py::arg("theta") = 0.0, py::arg("omega") = 0.0)
      .def_readwrite("gamma0", &ModelParams::gamma0)
      .def_readwrite("kappa", &ModelParams::kappa)
      .def_readwrite("theta", &ModelParams::theta)
      .def_readwrite("omega", &ModelParams::omega_dd)
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(gamma0=" + format_number(p.gamma0) + ", kappa=" + format_number(p.kappa) +
               ", theta=" + format_number(p.theta) + ", omega=" + format_number(p.omega_dd) + ")";
      });

  m.def("named_initial_state", [](const std::string& name) { return parse_initial_state(name).as_array(); },
        py::arg("name"), "Amplitudes (c1a, c1b, c2a, c2b) of 'maximal', 'partial' or 'product'.");

  m.def("validate", [](const ModelParams& p, const py::object& init) {
    require_valid(p, to_state(init));
  }, py::arg("params"), py::arg("init"));

  m.def("d_pm", [](const ModelParams& p, const std::string& b) { return d_pm(p, parse_branch(b)); },
        py::arg("params"), py::arg("branch"));
  m.def("g_pm", [](const ModelParams& p, const std::string& b, double t) { return g_pm(p, parse_branch(b), t); },
        py::arg("params"), py::arg("branch"), py::arg("t"));
  m.def("q_coeffs", [](const ModelParams& p, double t) {
    const auto q = q_coeffs(p, t);
    return std::array<Complex, 3>{q.q1, q.q2, q.q3};
  }, py::arg("params"), py::arg("t"));

  m.def("propagate", [](const ModelParams& p, const py::object& init, double t) {
    const InitialState s = to_state(init);
    require_valid(p, s);
    return propagate(p, s, t).amps.as_array();
  }, py::arg("params"), py::arg("init"), py::arg("t"));
  m.def("steady_amplitudes", [](const ModelParams& p, const py::object& init) {
    return steady_amplitudes(p, to_state(init)).amps.as_array();
  }, py::arg("params"), py::arg("init"));

  m.def("negativity", [](const AmpTuple& a) { return negativity(to_set(a)); }, py::arg("amplitudes"));
  m.def("negativity_closed_form", [](const AmpTuple& a) { return negativity_closed_form(to_set(a)); },
        py::arg("amplitudes"));
  m.def("pt_eigenvalues", [](const AmpTuple& a) {
    return hermitian_eigenvalues(partial_transpose(build_density(to_set(a)).entries));
  }, py::arg("amplitudes"), "Ascending eigenvalues of the partially transposed density matrix.");

  m.def("cross_validate", [](const ModelParams& p, const py::object& init, double t_end, double dt) {
    return cross_validate(p, to_state(init), t_end, dt);
  }, py::arg("params"), py::arg("init"), py::arg("t_end"), py::arg("dt") = 1e-3);

  m.def("preset_names", &preset_names);
  m.def("run_preset", [](const std::string& name, unsigned jobs, double omega_scale) {
    py::list out;
    std::vector<Trajectory> curves;
    {
      py::gil_scoped_release release;
      curves = run_preset(name, jobs, omega_scale);
    }
    for (const auto& c : curves) out.append(trajectory_dict(c));
    return out;
  }, py::arg("name"), py::arg("jobs") = 1, py::arg("omega_scale") = 1.0);

  m.def("trajectory", [](const ModelParams& p, const py::object& init, double t_end, std::size_t points) {
    return trajectory_dict(compute_trajectory(p, to_state(init), t_end, points));
  }, py::arg("params"), py::arg("init"), py::arg("t_end"), py::arg("points") = kPresetPoints);
}
