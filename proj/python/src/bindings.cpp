#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "leakywire/bound_spectrum.hpp"
#include "leakywire/errors.hpp"
#include "leakywire/oracle/selftest.hpp"
#include "leakywire/oracle/winding.hpp"
#include "leakywire/scattering.hpp"
#include "leakywire/specfun.hpp"

namespace py = pybind11;
using namespace leakywire;

namespace {

Sheet sheet_from(const std::string& s) {
  if (s == "+" || s == "physical") return Sheet::physical;
  if (s == "0" || s == "boundary") return Sheet::boundary;
  if (s == "-" || s == "second") return Sheet::second;
  throw ConfigError("sheet must be one of '+', '0', '-' (got '" + s + "')");
}

SheetPoint point_from(cplx z, double alpha, const std::optional<std::string>& sheet) {
  return sheet ? SheetPoint{z, sheet_from(*sheet)} : SheetPoint::infer(z, alpha);
}

PoleSearchOptions search_options(std::optional<cplx> guess, std::optional<SecondSheetRegion> region, int max_iter) {
  PoleSearchOptions o;
  o.initial_guess = guess;
  o.region = region;
  o.max_iterations = max_iter;
  return o;
}

bool bare(const std::string& normalization) {
  if (normalization == "consistent") return false;
  if (normalization == "bare_k0") return true;
  throw ConfigError("normalization must be 'consistent' or 'bare_k0'");
}

}  // namespace

PYBIND11_MODULE(_leakywire, m) {
  m.doc() = "Leaky wire with point interactions: bound states, resonances, scattering";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto domain = py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<ThresholdError>(m, "ThresholdError", domain.ptr());
  py::register_exception<PoleOnPathError>(m, "PoleOnPathError", domain.ptr());
  py::register_exception<RegionError>(m, "RegionError", domain.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", error.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", error.ptr());

  m.def("sqrt_cut", &sqrt_cut, py::arg("z"));
  m.def("k0", &macdonald_k0, py::arg("w"));
  m.def("k1", &macdonald_k1, py::arg("w"));
  m.def("s_beta", &s_beta, py::arg("z"), py::arg("beta"));
  m.def("epsilon_beta", &epsilon_beta, py::arg("beta"));

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init([](double alpha, const std::vector<std::pair<double, double>>& dots, const std::vector<double>& betas) {
             ModelParams p;
             p.alpha = alpha;
             for (const auto& [x1, x2] : dots) p.dots.push_back({x1, x2});
             p.betas = betas;
             p.validate();
             return p;
           }),
           py::arg("alpha"), py::arg("dots"), py::arg("betas"))
      .def_static("single_dot", &ModelParams::single_dot, py::arg("alpha"), py::arg("beta"), py::arg("a"))
      .def_readonly("alpha", &ModelParams::alpha)
      .def_readonly("betas", &ModelParams::betas)
      .def_property_readonly("dots",
                             [](const ModelParams& p) {
                               std::vector<std::pair<double, double>> v;
                               for (const auto& d : p.dots) v.emplace_back(d.x1, d.x2);
                               return v;
                             })
      .def_property_readonly("threshold", &ModelParams::threshold)
      .def("__len__", &ModelParams::size);

  m.def(
      "d_matrix",
      [](cplx z, const ModelParams& model) {
        const auto d = d_matrix(z, model);
        return py::make_tuple(d.entries, d.det);
      },
      py::arg("z"), py::arg("model"), "(D(z), det D(z)) on the physical sheet");
  m.def(
      "gamma_breve", [](double gap, double a, double alpha, double beta) { return gamma_breve(gap, a, alpha, beta); },
      py::arg("gap"), py::arg("a"), py::arg("alpha"), py::arg("beta"));

  py::class_<BoundState>(m, "BoundState")
      .def_readonly("energy", &BoundState::energy)
      .def_readonly("kappa", &BoundState::kappa)
      .def_readonly("gap", &BoundState::gap)
      .def_readonly("null_vector", &BoundState::null_vector)
      .def_readonly("residual", &BoundState::solver_residual)
      .def("__repr__", [](const BoundState& s) { return "BoundState(energy=" + std::to_string(s.energy) + ")"; });

  py::class_<BoundSpectrum>(m, "BoundSpectrum")
      .def_readonly("states", &BoundSpectrum::states)
      .def_readonly("kappa_max", &BoundSpectrum::kappa_max)
      .def_readonly("warnings", &BoundSpectrum::warnings);

  m.def(
      "kappa_single", [](double alpha, double beta, double a) { return kappa_single(alpha, beta, a); },
      py::arg("alpha"), py::arg("beta"), py::arg("a"));
  m.def(
      "find_bound_states",
      [](const ModelParams& model, int grid_points) {
        BoundScanOptions o;
        o.grid_points = grid_points;
        return find_bound_states(model, o);
      },
      py::arg("model"), py::arg("grid_points") = 400);
  m.def(
      "eigenfunction",
      [](double x1, double x2, const BoundState& s, const ModelParams& model) {
        return eigenfunction_value({x1, x2}, s, model);
      },
      py::arg("x1"), py::arg("x2"), py::arg("state"), py::arg("model"));

  py::class_<SecondSheetRegion>(m, "SecondSheetRegion")
      .def(py::init<double, double, double>(), py::arg("re_min"), py::arg("re_max"), py::arg("depth"))
      .def_static("standard", &SecondSheetRegion::standard, py::arg("alpha"))
      .def_readwrite("re_min", &SecondSheetRegion::re_min)
      .def_readwrite("re_max", &SecondSheetRegion::re_max)
      .def_readwrite("depth", &SecondSheetRegion::depth);

  m.def(
      "phi",
      [](cplx z, double alpha, double a, std::optional<std::string> sheet, std::optional<SecondSheetRegion> region) {
        return phi_sheet(point_from(z, alpha, sheet), alpha, a, sheet_quad_spec(), region);
      },
      py::arg("z"), py::arg("alpha"), py::arg("a"), py::arg("sheet") = py::none(), py::arg("region") = py::none(),
      "Line coupling function on M; sheet '+', '0' or '-' (inferred from z when omitted)");
  m.def(
      "eta",
      [](cplx z, double alpha, double beta, double a, std::optional<std::string> sheet,
         std::optional<SecondSheetRegion> region) {
        return eta(point_from(z, alpha, sheet), SingleDot{alpha, beta, a}, sheet_quad_spec(), region);
      },
      py::arg("z"), py::arg("alpha"), py::arg("beta"), py::arg("a"), py::arg("sheet") = py::none(),
      py::arg("region") = py::none());

  py::class_<ResonancePole>(m, "ResonancePole")
      .def_readonly("z", &ResonancePole::z)
      .def_readonly("b", &ResonancePole::b)
      .def_readonly("residual", &ResonancePole::residual)
      .def_readonly("iterations", &ResonancePole::iterations)
      .def_readonly("iterates", &ResonancePole::iterates)
      .def("__repr__", [](const ResonancePole& p) {
        return "ResonancePole(z=" + std::to_string(p.z.real()) + std::to_string(p.z.imag()) + "j)";
      });

  m.def(
      "find_pole",
      [](const ModelParams& model, std::optional<cplx> guess, std::optional<SecondSheetRegion> region, int max_iter) {
        return find_pole(model, search_options(guess, region, max_iter));
      },
      py::arg("model"), py::arg("initial_guess") = py::none(), py::arg("region") = py::none(),
      py::arg("max_iterations") = 80);

  py::class_<TrajectoryFit>(m, "TrajectoryFit")
      .def_readonly("nu_slope", &TrajectoryFit::nu_slope)
      .def_readonly("mu_slope", &TrajectoryFit::mu_slope)
      .def_readonly("max_mu_over_b", &TrajectoryFit::max_mu_over_b)
      .def_readonly("max_nu_over_b", &TrajectoryFit::max_nu_over_b);
  m.def("fit_trajectory", &fit_trajectory, py::arg("poles"), py::arg("eps_beta"));

  py::class_<TwoPointLevels>(m, "TwoPointLevels")
      .def_readonly("eps1", &TwoPointLevels::eps1)
      .def_readonly("eps2", &TwoPointLevels::eps2)
      .def_readonly("kappa1", &TwoPointLevels::kappa1)
      .def_readonly("kappa2", &TwoPointLevels::kappa2)
      .def_readonly("two_levels", &TwoPointLevels::two_levels);
  py::class_<TwoDotExpansion>(m, "TwoDotExpansion")
      .def_readonly("eps2", &TwoDotExpansion::eps2)
      .def_readonly("kappa2", &TwoDotExpansion::kappa2)
      .def_readonly("mu_slope", &TwoDotExpansion::mu_slope)
      .def_readonly("nu_curvature", &TwoDotExpansion::nu_curvature)
      .def_readonly("nu_curvature_closed_form", &TwoDotExpansion::nu_curvature_closed_form)
      .def_readonly("g_tilde", &TwoDotExpansion::g_tilde)
      .def_readonly("phi0", &TwoDotExpansion::phi0);

  m.def(
      "two_point_levels",
      [](double a, double beta, const std::string& normalization) {
        return bare(normalization) ? two_point_levels<GreenNormalization::bare_k0>(a, beta)
                                   : two_point_levels<GreenNormalization::consistent>(a, beta);
      },
      py::arg("a"), py::arg("beta"), py::arg("normalization") = "consistent");
  m.def(
      "find_pole2",
      [](double b, double alpha, double beta, double a, std::optional<cplx> guess,
         std::optional<SecondSheetRegion> region, const std::string& normalization) {
        const MirrorPair pair{alpha, beta, a};
        const auto opt = search_options(guess, region, 80);
        return bare(normalization) ? find_pole2<GreenNormalization::bare_k0>(b, pair, opt)
                                   : find_pole2<GreenNormalization::consistent>(b, pair, opt);
      },
      py::arg("b"), py::arg("alpha"), py::arg("beta"), py::arg("a"), py::arg("initial_guess") = py::none(),
      py::arg("region") = py::none(), py::arg("normalization") = "consistent");
  m.def(
      "two_dot_expansion",
      [](double alpha, double beta, double a, const std::string& normalization) {
        const MirrorPair pair{alpha, beta, a};
        return bare(normalization) ? two_dot_expansion<GreenNormalization::bare_k0>(pair)
                                   : two_dot_expansion<GreenNormalization::consistent>(pair);
      },
      py::arg("alpha"), py::arg("beta"), py::arg("a"), py::arg("normalization") = "consistent");

  py::class_<ScatteringPoint>(m, "ScatteringPoint")
      .def_readonly("lam", &ScatteringPoint::lambda)
      .def_readonly("momentum", &ScatteringPoint::momentum)
      .def_readonly("R", &ScatteringPoint::R)
      .def_readonly("T", &ScatteringPoint::T);
  m.def(
      "amplitudes", [](double lambda, const ModelParams& model) { return amplitudes(lambda, model); },
      py::arg("lam"), py::arg("model"));
  m.def("lambda_grid", &lambda_grid, py::arg("alpha"), py::arg("points"));
  m.def(
      "locate_amplitude_pole",
      [](const ModelParams& model, cplx center, double radius, int nodes) {
        const auto p = locate_amplitude_pole(model, center, radius, nodes);
        return py::make_tuple(p.z, p.spread);
      },
      py::arg("model"), py::arg("center"), py::arg("radius"), py::arg("nodes") = 128,
      "(pole, spread) of the continued reflection amplitude inside the circle");

  m.def(
      "winding_number",
      [](const std::function<cplx(cplx)>& f, cplx center, double radius) {
        return oracle::winding_zero_count(f, oracle::circle(center, radius));
      },
      py::arg("f"), py::arg("center"), py::arg("radius"));
  m.def("selftest", [] {
    const auto r = oracle::run_selftest();
    py::list out;
    for (const auto& c : r.cases) out.append(py::make_tuple(c.name, c.passed, c.detail));
    return out;
  });
}
