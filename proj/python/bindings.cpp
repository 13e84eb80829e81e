#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ddent/config.hpp"
#include "ddent/entanglement.hpp"
#include "ddent/errors.hpp"
#include "ddent/filters.hpp"
#include "ddent/oracles.hpp"
#include "ddent/scenario.hpp"

namespace py = pybind11;
using namespace ddent;

namespace {

using CArray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

Matrix4 to_matrix4(const CArray& arr) {
  if (arr.ndim() != 2 || arr.shape(0) != 4 || arr.shape(1) != 4) {
    throw DomainError("expected a 4x4 array");
  }
  Matrix4 m;
  auto r = arr.unchecked<2>();
  for (py::ssize_t i = 0; i < 4; ++i)
    for (py::ssize_t j = 0; j < 4; ++j) m(i, j) = r(i, j);
  return m;
}

CArray from_matrix4(const Matrix4& m) {
  CArray out({4, 4});
  auto w = out.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < 4; ++i)
    for (py::ssize_t j = 0; j < 4; ++j) w(i, j) = m(i, j);
  return out;
}

py::dict kernels_dict(const KernelSet& k) {
  py::dict d;
  d["t"] = k.t;
  d["Z"] = k.Z;
  d["gamma"] = k.gamma;
  d["D"] = k.D;
  d["h"] = k.h;
  d["mu"] = k.mu;
  d["p"] = k.p;
  d["q"] = k.q;
  d["r"] = k.r;
  d["R"] = k.R();
  d["Phi"] = k.Phi;
  return d;
}

template <class F>
py::array_t<double> map_grid(const std::vector<double>& xs, F&& f) {
  py::array_t<double> out(static_cast<py::ssize_t>(xs.size()));
  auto w = out.mutable_unchecked<1>();
  for (std::size_t i = 0; i < xs.size(); ++i) w(i) = f(xs[i]);
  return out;
}

}  // namespace

PYBIND11_MODULE(_ddentangle, m) {
  m.doc() = "Two-qubit dephasing in a common bosonic bath under pi-pulse sequences";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<IntegrityError>(m, "IntegrityError", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::enum_<SequenceKind>(m, "SequenceKind")
      .value("FREE", SequenceKind::Free)
      .value("PDD", SequenceKind::PDD)
      .value("CPMG", SequenceKind::CPMG)
      .value("UDD", SequenceKind::UDD)
      .value("CUSTOM", SequenceKind::Custom);

  py::enum_<DynamicsMode>(m, "DynamicsMode")
      .value("COMMON", DynamicsMode::CommonBathOnly)
      .value("NOISE", DynamicsMode::WithInteractionNoise);

  py::class_<PulseSequence>(m, "PulseSequence")
      .def_static(
          "make", [](const std::string& kind, int n, double window) {
            return PulseSequence::make(parse_sequence_kind(kind), n, window);
          },
          py::arg("kind"), py::arg("n"), py::arg("window"))
      .def_static("custom", &PulseSequence::custom, py::arg("times"), py::arg("window"))
      .def("shifted", &PulseSequence::shifted, py::arg("shift"))
      .def_property_readonly("n", &PulseSequence::n)
      .def_property_readonly("window", &PulseSequence::window)
      .def_property_readonly("shift", &PulseSequence::shift)
      .def_property_readonly("times", &PulseSequence::times)
      .def_property_readonly("flips", [](const PulseSequence& s) { return s.pattern().flips; })
      .def_property_readonly("initial_sign", [](const PulseSequence& s) { return s.pattern().initial_sign; })
      .def("switching_value", &PulseSequence::switching_value, py::arg("t"))
      .def("__repr__", [](const PulseSequence& s) {
        return "<PulseSequence " + std::string(to_string(s.kind())) + " n=" + std::to_string(s.n()) + ">";
      });

  m.def(
      "filter_F",
      [](const PulseSequence& s, const std::vector<double>& omegas, double t) {
        return map_grid(omegas, [&](double w) { return filter_F(s, w, t); });
      },
      py::arg("sequence"), py::arg("omegas"), py::arg("t"));
  m.def(
      "phi", [](const PulseSequence& s, double omega, double t) { return phi(s, omega, t); }, py::arg("sequence"),
      py::arg("omega"), py::arg("t"));
  m.def(
      "dn", [](const PulseSequence& a, const PulseSequence& b, double omega, double t) { return dn_closed(a, b, omega, t); },
      py::arg("s1"), py::arg("s2"), py::arg("omega"), py::arg("t"));
  m.def(
      "dn_direct",
      [](const PulseSequence& a, const PulseSequence& b, double omega, double t) { return dn_direct(a, b, omega, t); },
      py::arg("s1"), py::arg("s2"), py::arg("omega"), py::arg("t"));

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def_readwrite("name", &ScenarioConfig::name)
      .def_readwrite("beta", &ScenarioConfig::beta)
      .def_readwrite("omega0", &ScenarioConfig::omega0)
      .def_readwrite("lambda0", &ScenarioConfig::lambda0)
      .def_readwrite("time_grid", &ScenarioConfig::time_grid)
      .def_readwrite("mode", &ScenarioConfig::mode)
      .def_property(
          "alpha", [](const ScenarioConfig& c) { return c.sequence.alpha; },
          [](ScenarioConfig& c, double a) { c.sequence.alpha = a; })
      .def_property(
          "rel_tol", [](const ScenarioConfig& c) { return c.quad.rel_tol; },
          [](ScenarioConfig& c, double v) { c.quad.rel_tol = v; })
      .def_property_readonly("sequence", [](const ScenarioConfig& c) { return std::string(to_string(c.sequence.kind)); })
      .def_property_readonly("n", [](const ScenarioConfig& c) { return c.sequence.n; })
      .def("validate", &ScenarioConfig::validate)
      .def("__repr__", [](const ScenarioConfig& c) {
        std::ostringstream os;
        write_config(os, c);
        return os.str();
      });

  m.def("parse_config", &parse_config_string, py::arg("text"), "Parse config text into one scenario per curve.");
  m.def("load_config", &load_config, py::arg("path"));
  m.def("figure_ids", &figure_ids);
  m.def(
      "figure_scenario", [](const std::string& id) { return figure_scenario(id).curves; }, py::arg("id"));

  m.def(
      "kernels", [](const ScenarioConfig& c, double t) { return kernels_dict(compute_kernels(c, t)); }, py::arg("config"),
      py::arg("t"));
  m.def("concurrence_at", &concurrence_at, py::arg("config"), py::arg("t"));

  m.def(
      "run",
      [](const ScenarioConfig& c, unsigned threads) {
        CurveResult r;
        {
          py::gil_scoped_release release;
          r = run_scenario(c, threads);
        }
        py::dict d;
        std::vector<double> t, gamma, D, mu, R, r_k, Phi;
        for (const auto& k : r.kernels) {
          t.push_back(k.t);
          gamma.push_back(k.gamma);
          D.push_back(k.D);
          mu.push_back(k.mu);
          R.push_back(k.R());
          r_k.push_back(k.r);
          Phi.push_back(k.Phi);
        }
        d["t"] = py::array(py::cast(t));
        d["C"] = py::array(py::cast(r.concurrence));
        d["gamma"] = py::array(py::cast(gamma));
        d["D"] = py::array(py::cast(D));
        d["mu"] = py::array(py::cast(mu));
        d["R"] = py::array(py::cast(R));
        d["r"] = py::array(py::cast(r_k));
        d["Phi"] = py::array(py::cast(Phi));
        d["min_eigenvalue"] = py::array(py::cast(r.min_eigenvalue));
        return d;
      },
      py::arg("config"), py::arg("threads") = 0, "Concurrence time series on the config's time grid.");

  m.def(
      "sweep_alpha",
      [](const ScenarioConfig& c, const std::vector<double>& alphas, double tol, unsigned threads) {
        std::vector<std::tuple<double, double, double>> rows;
        for (const auto& r : sweep_alpha(c, alphas, tol, threads)) rows.emplace_back(r.alpha, r.peak_C, r.peak_t);
        return rows;
      },
      py::arg("config"), py::arg("alphas"), py::arg("tol") = 1e-4, py::arg("threads") = 0);

  m.def(
      "evolve",
      [](const ScenarioConfig& c, double t) {
        const KernelSet k = compute_kernels(c, t);
        return from_matrix4(evolve_state(plus_plus_state(), k, c.mode, c.omega0).matrix());
      },
      py::arg("config"), py::arg("t"), "Density matrix of the evolved |+,+> state.");

  m.def(
      "concurrence", [](const CArray& rho) { return concurrence(to_matrix4(rho)); }, py::arg("rho"));
  m.def(
      "wootters_lambdas", [](const CArray& rho) { return wootters_lambdas(to_matrix4(rho)); }, py::arg("rho"));

  m.def(
      "single_mode_check",
      [](const std::string& kind, int n, double t, double omega, double g, double beta, std::size_t levels) {
        const auto s = PulseSequence::make(parse_sequence_kind(kind), n, t);
        DiscreteModeBath bath{{{omega, g}}, levels, beta};
        const auto rho0 = plus_plus_state();
        const auto exact = single_mode_evolve(bath, s.pattern(), s.pattern(), 1.0, t, rho0);
        const auto formula = evolve_state(rho0, discrete_mode_kernels(bath, s.pattern(), s.pattern(), t),
                                          DynamicsMode::CommonBathOnly, 1.0);
        return py::make_tuple(from_matrix4(formula.matrix()), from_matrix4(exact.matrix()));
      },
      py::arg("kind"), py::arg("n"), py::arg("t"), py::arg("omega") = 1.0, py::arg("g") = 0.1, py::arg("beta") = 1.0,
      py::arg("levels") = 40, "Closed-form and exactly propagated states for one bosonic mode.");
}
