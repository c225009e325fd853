#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ncosc/adjudicate.hpp"
#include "ncosc/cli.hpp"
#include "ncosc/opalg.hpp"
#include "ncosc/pt.hpp"
#include "ncosc/spectra.hpp"

namespace py = pybind11;
using namespace ncosc;

namespace {

Space space_from(const std::string& s) {
  if (s == "2d") return Space::plane;
  if (s == "3d") return Space::space;
  throw py::value_error("space must be '2d' or '3d'");
}

py::int_ to_py(const BigInt& v) { return py::int_(py::module_::import("builtins").attr("int")(v.str())); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Charged oscillator in noncommutative phase space";

  py::class_<PhaseSpaceParams>(m, "Params")
      .def(py::init([](double hbar, double mass, double omega, double omega_c, double alpha, double theta,
                       double eta) {
             PhaseSpaceParams p{hbar, mass, omega, omega_c, alpha, theta, eta};
             p.validate();
             return p;
           }),
           py::kw_only(), py::arg("hbar") = 1.0, py::arg("mass") = 1.0, py::arg("omega") = 1.0,
           py::arg("omega_c") = 0.0, py::arg("alpha") = 1.0, py::arg("theta") = 0.0, py::arg("eta") = 0.0)
      .def_readwrite("hbar", &PhaseSpaceParams::hbar)
      .def_readwrite("mass", &PhaseSpaceParams::mass)
      .def_readwrite("omega", &PhaseSpaceParams::omega)
      .def_readwrite("omega_c", &PhaseSpaceParams::omega_c)
      .def_readwrite("alpha", &PhaseSpaceParams::alpha)
      .def_readwrite("theta", &PhaseSpaceParams::theta)
      .def_readwrite("eta", &PhaseSpaceParams::eta)
      .def_property_readonly("omega_tilde", &PhaseSpaceParams::omega_tilde)
      .def("__repr__", [](const PhaseSpaceParams& p) {
        std::ostringstream os;
        os << "Params(hbar=" << p.hbar << ", mass=" << p.mass << ", omega=" << p.omega << ", omega_c=" << p.omega_c
           << ", alpha=" << p.alpha << ", theta=" << p.theta << ", eta=" << p.eta << ")";
        return os.str();
      });

  py::class_<QuantumNumbers>(m, "State")
      .def(py::init([](int n_rho, int mu, int n_z) {
             QuantumNumbers q{n_rho, mu, n_z};
             q.validate();
             return q;
           }),
           py::arg("n_rho"), py::arg("mu"), py::arg("n_z"))
      .def_readonly("n_rho", &QuantumNumbers::n_rho)
      .def_readonly("mu", &QuantumNumbers::mu)
      .def_readonly("n_z", &QuantumNumbers::n_z)
      .def("__repr__", &QuantumNumbers::to_string);

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<EigenSolverError>(m, "EigenSolverError", PyExc_ArithmeticError);

  m.def("f_coeff", [](int n_rho, int mu) { return to_py(pt::f_coeff(n_rho, mu)); }, py::arg("n_rho"), py::arg("mu"));
  m.def("e0", &pt::e0, py::arg("state"), py::arg("params"));
  m.def(
      "de_eta",
      [](const QuantumNumbers& q, const PhaseSpaceParams& p, bool signed_mu) {
        return pt::de_eta(q, p, signed_mu ? pt::MuSign::signed_mu : pt::MuSign::absolute);
      },
      py::arg("state"), py::arg("params"), py::arg("signed_mu") = false);
  m.def("de_theta", &pt::de_theta, py::arg("state"), py::arg("params"));
  m.def(
      "validity",
      [](const PhaseSpaceParams& p, double factor) {
        const auto v = pt::validity(p, factor);
        return py::dict(py::arg("pass") = v.pass, py::arg("eta_ratio") = v.eta_ratio,
                        py::arg("theta_ratio") = v.theta_ratio);
      },
      py::arg("params"), py::arg("factor") = 0.1);

  m.def(
      "first_order_oracle",
      [](const QuantumNumbers& q, const PhaseSpaceParams& p, int n_max) {
        const auto o = adjudicate::first_order_oracle(q, p, BasisSpec::uniform(n_max));
        return py::dict(py::arg("e0") = o.e0, py::arg("h_eta") = o.h_eta, py::arg("h_theta") = o.h_theta,
                        py::arg("de_eta") = o.de_eta, py::arg("de_theta") = o.de_theta,
                        py::arg("degenerate") = o.degenerate, py::arg("gap") = o.gap,
                        py::arg("p_perp_sq") = o.p_perp_sq, py::arg("p_rho_sq") = o.p_rho_sq);
      },
      py::arg("state"), py::arg("params"), py::arg("n_max") = 12);
  m.def(
      "hf_slope",
      [](const QuantumNumbers& q, const PhaseSpaceParams& p, int n_max, double step) {
        const auto s = adjudicate::hf_slope(q, p, BasisSpec::uniform(n_max), step);
        return py::dict(py::arg("d_eta") = s.d_eta, py::arg("d_theta") = s.d_theta,
                        py::arg("usable") = s.usable(), py::arg("richardson_ok") = s.richardson_ok);
      },
      py::arg("state"), py::arg("params"), py::arg("n_max") = 8, py::arg("step") = 1e-4);

  m.def(
      "eigenvalues",
      [](const PhaseSpaceParams& p, int n_max) {
        const auto pieces = build_pieces(p, BasisSpec::uniform(n_max));
        return eig_herm(total_hamiltonian(pieces, p), kDefaultEigenTolerance, false).eigenvalues;
      },
      py::arg("params"), py::arg("n_max") = 8, "Ascending spectrum of the full Hamiltonian in a truncated basis.");

  m.def("normalize", [](const std::string& text) { return to_text(parse_expr(text)); }, py::arg("expr"));
  m.def(
      "commutator",
      [](const std::string& a, const std::string& b) { return to_text(commutator(parse_expr(a), parse_expr(b))); },
      py::arg("a"), py::arg("b"));
  m.def(
      "expand",
      [](const std::string& space) {
        py::dict out;
        const auto& buckets = nc_hamiltonian_buckets(space_from(space));
        for (BucketKey key : kBucketKeys) out[py::str(bucket_label(key))] = to_text(buckets.at(key));
        return out;
      },
      py::arg("space") = "3d");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = 0;
        {
          py::gil_scoped_release release;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line front end; returns (exit_code, stdout, stderr).");
}
