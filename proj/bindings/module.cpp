#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "shubin/calculus.hpp"
#include "shubin/functionals.hpp"
#include "shubin/oracle.hpp"
#include "shubin/powers.hpp"
#include "shubin/serialize.hpp"
#include "shubin/spectra.hpp"
#include "shubin/verify.hpp"

namespace py = pybind11;
using namespace shubin;

namespace {

SpectraOpts make_opts(int depth, int grid_nodes) {
  SpectraOpts so;
  so.depth = depth;
  so.grid = SphereGrid::standard(1, grid_nodes);
  return so;
}

py::dict sample_dict(const MeromorphicSample& s) {
  py::dict d;
  d["z"] = s.z;
  d["value"] = s.value;
  d["uncertainty"] = s.truncation_uncertainty;
  d["method"] = s.method;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Shubin symbol calculus core: sharp products, parametrices, complex powers, "
            "sectorial projections, Wodzicki residue, finite-part integral, spectral zeta "
            "and eta functions, and the Hermite-basis spectral oracle.";

  py::register_exception<Error>(m, "ShubinError");

  py::class_<PhasePoint>(m, "PhasePoint")
      .def(py::init([](double x, double xi) { return PhasePoint::of(x, xi); }))
      .def_readonly("x", &PhasePoint::x)
      .def_readonly("xi", &PhasePoint::xi);

  py::class_<ClassicalSymbol>(m, "Symbol")
      .def_static("from_json", [](const std::string& text) {
        return symbol_from_json(nlohmann::json::parse(text));
      })
      .def_static("load", &load_symbol)
      .def_static("harmonic_oscillator", &ClassicalSymbol::harmonic_oscillator)
      .def_static("identity", &ClassicalSymbol::identity, py::arg("n") = 1, py::arg("q") = 1)
      .def_static("diag_ho", &ClassicalSymbol::diag_ho)
      .def_static("shifted_quadratic_power", &ClassicalSymbol::shifted_quadratic_power,
                  py::arg("s"), py::arg("depth") = 9, py::arg("amp") = 1.0)
      .def_property_readonly("order", &ClassicalSymbol::order)
      .def_property_readonly("n", &ClassicalSymbol::space_dim)
      .def_property_readonly("q", &ClassicalSymbol::matrix_dim)
      .def_property_readonly("depth", &ClassicalSymbol::depth)
      .def("eval_full",
           [](const ClassicalSymbol& a, double x, double xi) {
             return a.eval_full(PhasePoint::of(x, xi));
           })
      .def("component_value",
           [](const ClassicalSymbol& a, int j, double x, double xi) {
             return a.component(j).eval(PhasePoint::of(x, xi));
           })
      .def("scaled", &ClassicalSymbol::scaled)
      .def("to_json", [](const ClassicalSymbol& a) { return symbol_to_json(a).dump(); });

  m.def("sharp",
        [](const ClassicalSymbol& a, const ClassicalSymbol& b, int N) {
          return sharp(a, b, N);
        },
        py::arg("a"), py::arg("b"), py::arg("N") = 8);
  m.def("adjoint",
        [](const ClassicalSymbol& a, int N) { return adjoint(a, N); }, py::arg("a"),
        py::arg("N") = 8);
  m.def("parametrix",
        [](const ClassicalSymbol& a, int N) { return parametrix(a, N); }, py::arg("a"),
        py::arg("N") = 8);
  m.def("is_elliptic", [](const ClassicalSymbol& a) {
    auto e = is_elliptic(a);
    return py::make_tuple(e.elliptic, e.margin);
  });
  m.def("is_lambda_elliptic",
        [](const ClassicalSymbol& a, double theta, double theta_prime) {
          auto e = is_lambda_elliptic(a, Sector{theta, theta_prime});
          return py::make_tuple(e.elliptic, e.margin);
        });

  m.def("wodzicki_res",
        [](const ClassicalSymbol& a) { return wodzicki_res(a); });
  m.def("kv_tr",
        [](const ClassicalSymbol& a, int p) {
          KvOpts o;
          if (p >= 0) o.p = p;
          auto r = kv_tr(a, o);
          return py::make_tuple(r.value, r.uncertainty);
        },
        py::arg("a"), py::arg("p") = -1);

  m.def("complex_power",
        [](const ClassicalSymbol& a, Complex z, double theta, int depth, int jets) {
          return complex_power(a, z, theta, depth, jets);
        },
        py::arg("a"), py::arg("z"), py::arg("theta"), py::arg("depth") = 8,
        py::arg("jets") = 0);
  m.def("sectorial_projection",
        [](const ClassicalSymbol& a, double theta, double theta_prime, int depth) {
          return sectorial_projection(a, theta, theta_prime, depth);
        },
        py::arg("a"), py::arg("theta"), py::arg("theta_prime"), py::arg("depth") = 8);
  m.def("power_additivity_check",
        [](const ClassicalSymbol& a, Complex z, Complex s, double theta, int depth) {
          return power_additivity_check(a, z, s, theta, depth);
        },
        py::arg("a"), py::arg("z"), py::arg("s"), py::arg("theta"), py::arg("depth") = 6);

  m.def("zeta",
        [](const ClassicalSymbol& a, Complex z, double theta, int depth, int grid) {
          return sample_dict(zeta(a, z, theta, make_opts(depth, grid)));
        },
        py::arg("a"), py::arg("z"), py::arg("theta") = kPi / 2, py::arg("depth") = 8,
        py::arg("grid") = 256);
  m.def("eta",
        [](const ClassicalSymbol& a, Complex z, double theta_up, double theta_down, int depth,
           int grid) {
          return sample_dict(eta(a, z, theta_up, theta_down, make_opts(depth, grid)));
        },
        py::arg("a"), py::arg("z"), py::arg("theta_up") = kPi / 2,
        py::arg("theta_down") = -kPi / 2, py::arg("depth") = 8, py::arg("grid") = 256);
  m.def("zeta_pole",
        [](const ClassicalSymbol& a, int j, double theta, int depth, int grid) {
          auto rep = zeta_pole(a, j, theta, make_opts(depth, grid));
          py::dict d;
          d["location"] = rep.location;
          d["residue"] = rep.residue;
          d["predicted_location"] = rep.predicted_location;
          d["residue_formula_value"] = rep.residue_formula_value;
          d["fit_residual"] = rep.fit_residual;
          return d;
        },
        py::arg("a"), py::arg("j") = 0, py::arg("theta") = kPi / 2, py::arg("depth") = 8,
        py::arg("grid") = 256);
  m.def("eta_residue_at_zero",
        [](const ClassicalSymbol& a, double theta, double theta_prime, int depth, int grid) {
          return eta_residue_at_zero(a, theta, theta_prime, make_opts(depth, grid));
        },
        py::arg("a"), py::arg("theta") = kPi / 2, py::arg("theta_prime") = -kPi / 2,
        py::arg("depth") = 8, py::arg("grid") = 256);
  m.def("zeta_branch_difference",
        [](const ClassicalSymbol& a, Complex z, double theta_up, double theta_down, int depth,
           int grid) {
          return zeta_branch_difference(a, z, theta_up, theta_down, make_opts(depth, grid));
        },
        py::arg("a"), py::arg("z"), py::arg("theta_up") = kPi / 2,
        py::arg("theta_down") = -kPi / 2, py::arg("depth") = 8, py::arg("grid") = 256);

  m.def("oracle_eigenvalues",
        [](const ClassicalSymbol& a, int N, int count) {
          auto d = oracle::discretize(a, N);
          return oracle::eigenvalues(d, count);
        },
        py::arg("a"), py::arg("N") = 400, py::arg("count") = 20);
  m.def("oracle_zeta",
        [](const ClassicalSymbol& a, Complex z, int N) {
          auto d = oracle::discretize(a, N);
          return sample_dict(oracle::spectral_sum(d, oracle::SumKind::Zeta, z));
        },
        py::arg("a"), py::arg("z"), py::arg("N") = 400);
  m.def("oracle_eta",
        [](const ClassicalSymbol& a, Complex z, int N) {
          auto d = oracle::discretize(a, N);
          return sample_dict(oracle::spectral_sum(d, oracle::SumKind::Eta, z));
        },
        py::arg("a"), py::arg("z"), py::arg("N") = 400);
  m.def("oracle_trace",
        [](const ClassicalSymbol& a, int N) {
          auto d = oracle::discretize(a, N);
          auto t = oracle::trace(d);
          return py::make_tuple(t.value, t.uncertainty);
        },
        py::arg("a"), py::arg("N") = 500);

  m.def("verify_suite",
        [](const std::string& suite, int grid, int depth) {
          verify::Options vo;
          vo.sphere_nodes = grid;
          vo.depth = depth;
          auto checks = verify::run_suite(suite, vo);
          py::list out;
          for (const auto& c : checks) {
            py::dict d;
            d["name"] = c.name;
            d["measured"] = c.measured;
            d["tol"] = c.tol;
            d["pass"] = c.pass;
            out.append(d);
          }
          return out;
        },
        py::arg("suite"), py::arg("grid") = 128, py::arg("depth") = 6);
}
