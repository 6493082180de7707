#include <complex>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gibbs/cheb.hpp"
#include "gibbs/config.hpp"
#include "gibbs/error.hpp"
#include "gibbs/expr.hpp"
#include "gibbs/fourier.hpp"
#include "gibbs/measure.hpp"
#include "gibbs/sampler.hpp"
#include "gibbs/spectral.hpp"
#include "gibbs/system.hpp"
#include "gibbs/transfer.hpp"
#include "gibbs/ulam.hpp"

namespace py = pybind11;
using namespace gibbs;

namespace {

py::array_t<double> to_array(std::span<const double> v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

GaussPotential potential_from(const std::string& s) {
  if (s == "geometric") return GaussPotential::kGeometric;
  if (s == "neg_geometric") return GaussPotential::kNegGeometric;
  if (s == "constant") return GaussPotential::kConstant;
  throw ConfigError("potential must be geometric, neg_geometric or constant");
}

// A test function given either as expression text or a Python callable.
using Psi = std::variant<std::string, py::function>;

template <class Body>
py::object with_psi(const Psi& psi, Body&& body) {
  if (const auto* text = std::get_if<std::string>(&psi)) {
    const expr::Expr e = expr::parse(*text);
    return py::cast(body([&](double x) { return e.eval(x); }));
  }
  const py::function& f = std::get<py::function>(psi);
  return py::cast(body([&](double x) { return f(x).cast<double>(); }));
}

SpectralData solve(const IFSSystem& system, std::size_t N, double tol) {
  py::gil_scoped_release release;
  return leading_eigentriple(assemble(system, ChebGrid(N)), {tol, 0});
}

py::dict summary_dict(const SampleRun& run) {
  py::dict d;
  d["estimate"] = run.summary.mean;
  d["std_error"] = run.summary.std_error;
  d["ci_low"] = run.summary.ci_low;
  d["ci_high"] = run.summary.ci_high;
  d["replicas"] = run.config.replicas;
  d["replica_values"] = to_array(run.replica_values);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Equilibrium measures of iterated function systems";

  auto base = py::register_exception<Error>(m, "GibbsError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

  py::class_<expr::Expr>(m, "Expr")
      .def(py::init(&expr::parse), py::arg("text"))
      .def("__call__", [](const expr::Expr& e, double x) { return e.eval(x); })
      .def("derivative", &expr::Expr::derivative)
      .def_property_readonly("is_constant", &expr::Expr::is_constant)
      .def("__str__", &expr::Expr::to_string)
      .def("__repr__", [](const expr::Expr& e) { return "Expr('" + e.to_string() + "')"; })
      .def("__eq__", [](const expr::Expr& a, const expr::Expr& b) { return a == b; });

  py::class_<ChebGrid>(m, "ChebGrid")
      .def(py::init<std::size_t>(), py::arg("N"))
      .def_property_readonly("size", &ChebGrid::size)
      .def_property_readonly("nodes", [](const ChebGrid& g) {
        return to_array(g.nodes());
      })
      .def("lagrange_basis", &ChebGrid::lagrange_basis, py::arg("k"), py::arg("x"))
      .def("interpolate",
           [](const ChebGrid& g, const std::vector<double>& v, double x) {
             return g.interpolate(v, x);
           },
           py::arg("values"), py::arg("x"));

  py::class_<IFSSystem>(m, "IFSSystem")
      .def(py::init([](const std::string& name,
                       const std::vector<std::tuple<std::string, std::string, std::string>>& b) {
             std::vector<Branch> branches;
             for (const auto& [map, weight, label] : b) {
               branches.push_back({expr::parse(map), expr::parse(weight), label});
             }
             return IFSSystem(name, std::move(branches));
           }),
           py::arg("name"), py::arg("branches"),
           "branches: list of (map, weight, label) expression triples")
      .def_property_readonly("name", &IFSSystem::name)
      .def_property_readonly("labels", [](const IFSSystem& s) {
        std::vector<std::string> v;
        for (const auto& b : s.branches()) v.push_back(b.label);
        return v;
      })
      .def("__len__", &IFSSystem::size)
      .def("with_potential_shift", &IFSSystem::with_potential_shift, py::arg("shift"));

  m.def("cantor", &preset_cantor, py::arg("alpha"),
        py::arg("weights") = std::array<double, 2>{0.5, 0.5},
        "Two-branch affine Cantor system removing the middle fraction alpha.");
  m.def("gauss",
        [](const std::vector<int>& digits, const std::string& potential) {
          return preset_gauss_restricted(digits, potential_from(potential));
        },
        py::arg("digits"), py::arg("potential") = "neg_geometric",
        "Inverse Gauss-map branches for the given continued fraction digits.");

  py::class_<SystemConfig>(m, "SystemConfig")
      .def_readonly("system", &SystemConfig::system)
      .def_readonly("cantor_ratio", &SystemConfig::cantor_ratio)
      .def_property_readonly("N", [](const SystemConfig& c) { return c.defaults.N; })
      .def_property_readonly("defaults", [](const SystemConfig& c) {
        py::dict d;
        d["N"] = c.defaults.N;
        d["T"] = c.defaults.T;
        d["T0"] = c.defaults.T0;
        d["replicas"] = c.defaults.replicas;
        d["seed"] = c.defaults.seed;
        d["M"] = c.defaults.M;
        d["quad_points"] = c.defaults.quad_points;
        return d;
      });
  m.def("parse_config", &parse_config, py::arg("text"));
  m.def("load_config", [](const std::string& path) { return load_config(path); },
        py::arg("path"));

  m.def("diagnose",
        [](const IFSSystem& s, int grid) {
          const auto r = diagnose_contraction(s, grid);
          py::dict d;
          d["sup"] = r.sup;
          d["evaluable"] = r.evaluable;
          d["certified"] = r.certified;
          d["c_est"] = r.c_est;
          return d;
        },
        py::arg("system"), py::arg("grid_points") = 2000);

  m.def("transfer_matrix",
        [](const IFSSystem& s, std::size_t N) {
          Eigen::MatrixXd L;
          {
            py::gil_scoped_release release;
            L = assemble(s, ChebGrid(N)).entries;
          }
          py::array_t<double> out({L.rows(), L.cols()});
          auto view = out.mutable_unchecked<2>();
          for (Eigen::Index i = 0; i < L.rows(); ++i) {
            for (Eigen::Index j = 0; j < L.cols(); ++j) view(i, j) = L(i, j);
          }
          return out;
        },
        py::arg("system"), py::arg("N"));

  py::class_<SpectralData>(m, "SpectralData")
      .def_property_readonly("N", &SpectralData::size)
      .def_readonly("system_name", &SpectralData::system_name)
      .def_readonly("eigenvalue", &SpectralData::eigenvalue)
      .def_readonly("pressure", &SpectralData::pressure)
      .def_readonly("iterations", &SpectralData::iterations)
      .def_property_readonly("residuals", [](const SpectralData& d) {
        return py::make_tuple(d.right_residual, d.left_residual);
      })
      .def_property_readonly("nodes", [](const SpectralData& d) {
        return to_array(d.grid.nodes());
      })
      .def_property_readonly("h", [](const SpectralData& d) { return to_array(d.h); })
      .def_property_readonly("nu", [](const SpectralData& d) { return to_array(d.nu); })
      .def_property_readonly("mu", [](const SpectralData& d) { return to_array(d.mu); })
      .def("eigenfunction", [](const SpectralData& d, double x) { return eigenfunction(d, x); },
           py::arg("x"))
      .def("to_json", [](const SpectralData& d) { return to_json(d).dump(); })
      .def_static("from_json", [](const std::string& text) {
        return spectral_from_json(nlohmann::json::parse(text));
      });

  m.def("solve", &solve, py::arg("system"), py::arg("N"), py::arg("tol") = 1e-14,
        "Leading eigendata of the N-point transfer matrix.");

  m.def("integrate",
        [](const SpectralData& d, const Psi& psi, bool conformal, const std::string& weights) {
          if (weights != "h" && weights != "nu") throw ConfigError("weights must be nu or h");
          const auto which = weights == "h" ? ConformalWeights::kRightEigenvector
                                            : ConformalWeights::kLeftEigenvector;
          return with_psi(psi, [&](auto f) {
            return conformal ? integrate_conformal(d, f, which).value : integrate(d, f).value;
          });
        },
        py::arg("data"), py::arg("psi"), py::arg("conformal") = false,
        py::arg("weights") = "nu",
        "Integral of psi (expression text or callable) against the measure.");

  m.def("fourier_direct",
        [](const SpectralData& d, const std::vector<double>& xis) {
          std::vector<std::complex<double>> out;
          for (double xi : xis) out.push_back(fourier_direct(d, xi));
          return py::array_t<std::complex<double>>(static_cast<py::ssize_t>(out.size()),
                                                   out.data());
        },
        py::arg("data"), py::arg("xi"));
  m.def("cantor_oracle",
        [](double r, const std::vector<double>& xis, double tol) {
          std::vector<std::complex<double>> out;
          for (double xi : xis) out.push_back(cantor_oracle(r, xi, tol));
          return py::array_t<std::complex<double>>(static_cast<py::ssize_t>(out.size()),
                                                   out.data());
        },
        py::arg("r"), py::arg("xi"), py::arg("tol") = 1e-15);

  m.def("fourier_mc",
        [](const IFSSystem& s, const SpectralData& d, const std::vector<double>& xis,
           std::uint64_t T, std::uint64_t T0, unsigned replicas, std::uint64_t seed) {
          SamplerConfig cfg;
          cfg.T = T;
          cfg.T0 = T0;
          cfg.replicas = replicas;
          cfg.seed = seed;
          FourierSweep sw;
          {
            py::gil_scoped_release release;
            sw = fourier_mc(s, d, cfg, xis);
          }
          return py::make_tuple(
              py::array_t<std::complex<double>>(static_cast<py::ssize_t>(sw.values.size()),
                                                sw.values.data()),
              to_array(sw.std_errors));
        },
        py::arg("system"), py::arg("data"), py::arg("xi"), py::arg("T") = 1'000'000,
        py::arg("T0") = 10'000, py::arg("replicas") = 8, py::arg("seed") = 0);

  m.def("sample",
        [](const IFSSystem& s, const SpectralData& d, const std::string& psi, std::uint64_t T,
           std::uint64_t T0, unsigned replicas, std::uint64_t seed, bool conformal,
           bool remainder) {
          SamplerConfig cfg;
          cfg.T = T;
          cfg.T0 = T0;
          cfg.replicas = replicas;
          cfg.seed = seed;
          cfg.remainder_denominator = remainder;
          const expr::Expr e = expr::parse(psi);
          SampleRun run;
          {
            py::gil_scoped_release release;
            auto f = [&](double x) { return e.eval(x); };
            run = conformal ? run_chain_conformal(s, d, cfg, f) : run_chain(s, d, cfg, f);
          }
          return summary_dict(run);
        },
        py::arg("system"), py::arg("data"), py::arg("psi") = "x", py::arg("T") = 1'000'000,
        py::arg("T0") = 10'000, py::arg("replicas") = 8, py::arg("seed") = 0,
        py::arg("conformal") = false, py::arg("remainder") = false,
        "Markov chain estimate of the integral of psi (expression text).");

  m.def("sample_orbit",
        [](const IFSSystem& s, const SpectralData& d, std::size_t count, std::uint64_t T0,
           std::uint64_t seed) {
          SamplerConfig cfg;
          cfg.T = count;
          cfg.T0 = T0;
          cfg.seed = seed;
          std::vector<double> orbit;
          {
            py::gil_scoped_release release;
            orbit = sample_orbit(s, d, cfg, count);
          }
          return to_array(orbit);
        },
        py::arg("system"), py::arg("data"), py::arg("count"), py::arg("T0") = 10'000,
        py::arg("seed") = 0);

  py::class_<UlamOperator>(m, "UlamOperator")
      .def_readonly("M", &UlamOperator::M)
      .def_readonly("eigenvalue", &UlamOperator::eigenvalue)
      .def_property_readonly("edges", [](const UlamOperator& u) { return to_array(u.edges); })
      .def_property_readonly("weights", [](const UlamOperator& u) { return to_array(u.weights); })
      .def("fourier", [](const UlamOperator& u, double xi) { return ulam_fourier(u, xi); },
           py::arg("xi"))
      .def("integrate",
           [](const UlamOperator& u, const Psi& psi) {
             return with_psi(psi, [&](auto f) { return ulam_integrate(u, f); });
           },
           py::arg("psi"));
  m.def("ulam",
        [](const IFSSystem& s, std::size_t M, std::size_t quad) {
          py::gil_scoped_release release;
          return ulam_assemble(s, M, quad);
        },
        py::arg("system"), py::arg("M") = 200, py::arg("quad_points") = 16);
}
