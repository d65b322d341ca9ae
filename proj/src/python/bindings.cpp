#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hjhom/closed_forms.hpp"
#include "hjhom/config.hpp"
#include "hjhom/environment.hpp"
#include "hjhom/hamiltonian.hpp"
#include "hjhom/pde_solver.hpp"
#include "hjhom/probability.hpp"
#include "hjhom/special_functions.hpp"

namespace py = pybind11;
using namespace hjhom;

namespace {

Vec2 to_vec2(std::pair<double, double> p) { return {p.first, p.second}; }
std::pair<double, double> from_vec2(Vec2 v) { return {v.x, v.y}; }

Orientation to_orientation(const std::string& s) {
  if (s == "horizontal") return Orientation::horizontal;
  if (s == "vertical") return Orientation::vertical;
  throw std::invalid_argument("orientation must be 'horizontal' or 'vertical'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Random-environment viscous Hamilton-Jacobi laboratory: environment "
      "sampling, explicit super/subsolutions, a monotone finite-difference "
      "solver, and the rectangle-event probability bounds.";

  py::class_<EnvParams>(m, "EnvParams")
      .def(py::init<>())
      .def_readwrite("lambda_", &EnvParams::lambda)
      .def_readwrite("mu", &EnvParams::mu)
      .def_readwrite("eta", &EnvParams::eta)
      .def_readwrite("q", &EnvParams::q)
      .def_readwrite("delta", &EnvParams::delta)
      .def_readwrite("k_max", &EnvParams::k_max)
      .def_readwrite("seed", &EnvParams::seed)
      .def_readwrite("env_grid_h", &EnvParams::env_grid_h)
      .def("rect_length", &EnvParams::rect_length)
      .def("rect_width", &EnvParams::rect_width)
      .def("validate", &EnvParams::validate,
           py::arg("require_min_lambda_mu") = true);

  py::class_<Rectangle>(m, "Rectangle")
      .def_property_readonly("orientation",
                             [](const Rectangle& r) {
                               return r.orientation == Orientation::horizontal
                                          ? "horizontal"
                                          : "vertical";
                             })
      .def_readonly("k", &Rectangle::k)
      .def_readonly("l", &Rectangle::l)
      .def_readonly("m", &Rectangle::m)
      .def_readonly("length", &Rectangle::length)
      .def_readonly("width", &Rectangle::width)
      .def("contains",
           [](const Rectangle& r, double x1, double x2) {
             return r.contains({x1, x2});
           })
      .def("__repr__", [](const Rectangle& r) {
        return "Rectangle(" +
               std::string(r.orientation == Orientation::horizontal
                               ? "horizontal"
                               : "vertical") +
               ", k=" + std::to_string(r.k) + ", l=" + std::to_string(r.l) +
               ", m=" + std::to_string(r.m) + ")";
      });

  py::class_<PlantSpec>(m, "PlantSpec")
      .def(py::init<>())
      .def("set",
           [](PlantSpec& s, const std::string& orientation, int k, long l,
              long m, bool present) {
             s.set(to_orientation(orientation), k, l, m, present);
           },
           py::arg("orientation"), py::arg("k"), py::arg("l"), py::arg("m"),
           py::arg("present"))
      .def("empty", &PlantSpec::empty);

  py::class_<Box>(m, "Box")
      .def(py::init([](double x0, double y0, double x1, double y1) {
             return Box{x0, y0, x1, y1};
           }),
           py::arg("x0"), py::arg("y0"), py::arg("x1"), py::arg("y1"))
      .def_static("centered",
                  [](double cx, double cy, double hx, double hy) {
                    return Box::centered({cx, cy}, hx, hy);
                  })
      .def_readonly("x0", &Box::x0)
      .def_readonly("y0", &Box::y0)
      .def_readonly("x1", &Box::x1)
      .def_readonly("y1", &Box::y1);

  py::class_<Environment::GridField>(m, "GridField")
      .def_readonly("nx", &Environment::GridField::nx)
      .def_readonly("ny", &Environment::GridField::ny)
      .def_readonly("x0", &Environment::GridField::x0)
      .def_readonly("y0", &Environment::GridField::y0)
      .def_readonly("h", &Environment::GridField::h)
      .def_readonly("values", &Environment::GridField::values);

  py::class_<Environment>(m, "Environment")
      .def(py::init<EnvParams, Box, PlantSpec, bool>(), py::arg("params"),
           py::arg("window"), py::arg("plants") = PlantSpec{},
           py::arg("require_min_lambda_mu") = true)
      .def_property_readonly("params", &Environment::params)
      .def_property_readonly("window", &Environment::window)
      .def_property_readonly("rectangles", &Environment::rectangles)
      .def("c2_value",
           [](const Environment& e, double x1, double x2) {
             return e.c2_value({x1, x2});
           })
      .def("c_value",
           [](const Environment& e, double x1, double x2) {
             return e.c_value({x1, x2});
           })
      .def("max_covering_scale",
           [](const Environment& e, const std::string& orientation, double x1,
              double x2) {
             return e.max_covering_scale(to_orientation(orientation), {x1, x2});
           })
      .def("is_complete", &Environment::is_complete)
      .def("truncation_probability_bound",
           &Environment::truncation_probability_bound)
      .def("c_grid", &Environment::c_grid, py::arg("region"), py::arg("h"));

  m.def("rotate_environment", &rotate_environment,
        "90-degree rotation bijection: c_rot(x) = -c(x2, -x1).");
  m.def("plant_complete_rectangle",
        [](const EnvParams& params, const Box& window,
           const std::string& orientation, int k, long l, long m,
           PlantSpec base) {
          return plant_complete_rectangle(params, window,
                                          to_orientation(orientation), k, l, m,
                                          std::move(base));
        },
        py::arg("params"), py::arg("window"), py::arg("orientation"),
        py::arg("k"), py::arg("l"), py::arg("m"),
        py::arg("base") = PlantSpec{});
  m.def("rectangles_csv", &rectangles_csv);

  m.def("erf", &erf_cody);
  m.def("kinetic",
        [](double p1, double p2, double q) { return kinetic({p1, p2}, q); },
        py::arg("p1"), py::arg("p2"), py::arg("q") = 2.0);
  m.def("hamiltonian",
        [](double p1, double p2, double x1, double x2, const Environment& env) {
          HamiltonianParams hp{env.params().q, &env};
          return hamiltonian({p1, p2}, {x1, x2}, hp);
        });
  m.def("check_assumptions", [](const Environment& env, int sample_count) {
    HamiltonianParams hp{env.params().q, &env};
    const AssumptionReport r = check_assumptions(hp, sample_count);
    py::dict d;
    d["superlinear_ok"] = r.superlinear_ok;
    d["lipschitz_ok"] = r.lipschitz_ok;
    d["growth_ratios"] = r.growth_ratios;
    d["witness"] = r.witness;
    d["ok"] = r.ok();
    return d;
  });

  py::class_<SuperSolutionSpec>(m, "SuperSolutionSpec")
      .def(py::init([](std::pair<double, double> center, int scale,
                       const EnvParams& p) {
             return SuperSolutionSpec(to_vec2(center), scale, p);
           }),
           py::arg("center"), py::arg("scale"), py::arg("params"))
      .def_readonly("k", &SuperSolutionSpec::k)
      .def_readonly("sigma1", &SuperSolutionSpec::sigma1)
      .def_readonly("sigma2", &SuperSolutionSpec::sigma2)
      .def_property_readonly(
          "X", [](const SuperSolutionSpec& s) { return from_vec2(s.X); })
      .def("t_horizon", &SuperSolutionSpec::t_horizon);

  m.def("bump", &bump);
  m.def("bump_prime", &bump_prime);
  m.def("bump_double_prime", &bump_double_prime);
  m.def("u_plus", [](double t, double x1, double x2,
                     const SuperSolutionSpec& s) {
    return u_plus(t, {x1, x2}, s);
  });
  m.def("grad_u_plus", [](double t, double x1, double x2,
                          const SuperSolutionSpec& s) {
    return from_vec2(grad_u_plus(t, {x1, x2}, s));
  });
  m.def("u_minus", [](double t, double x1, double x2,
                      const SuperSolutionSpec& s) {
    return u_minus(t, {x1, x2}, s);
  });
  m.def("residual_plus",
        [](double t, double x1, double x2, const SuperSolutionSpec& s,
           const Environment& env) {
          return residual_plus(t, {x1, x2}, s, env);
        });
  m.def("residual_minus",
        [](double t, double x1, double x2, const SuperSolutionSpec& s,
           const Environment& rotated_env) {
          return residual_minus(t, {x1, x2}, s, rotated_env);
        });
  m.def("classify_case", [](double x1, double x2, const SuperSolutionSpec& s) {
    return static_cast<int>(classify_case({x1, x2}, s));
  });
  m.def("case_bound", [](int c, const SuperSolutionSpec& s) {
    if (c < 1 || c > 4) throw std::invalid_argument("case must be 1..4");
    return case_bound(static_cast<ResidualCase>(c), s);
  });

  py::enum_<BoundaryMode>(m, "BoundaryMode")
      .value("neumann_zero", BoundaryMode::neumann_zero)
      .value("dirichlet_zero", BoundaryMode::dirichlet_zero);

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("h", &SolverConfig::h)
      .def_readwrite("cfl", &SolverConfig::cfl)
      .def_readwrite("T_final", &SolverConfig::T_final)
      .def_readwrite("radius", &SolverConfig::radius)
      .def_readwrite("alpha", &SolverConfig::alpha)
      .def_readwrite("boundary", &SolverConfig::boundary)
      .def_property(
          "probe",
          [](const SolverConfig& c) { return from_vec2(c.probe); },
          [](SolverConfig& c, std::pair<double, double> p) {
            c.probe = to_vec2(p);
          })
      .def_readwrite("record_interval", &SolverConfig::record_interval)
      .def_readwrite("keep_snapshots", &SolverConfig::keep_snapshots)
      .def_readwrite("allow_small_radius", &SolverConfig::allow_small_radius)
      .def_readwrite("disable_hamiltonian", &SolverConfig::disable_hamiltonian)
      .def("effective_radius", &SolverConfig::effective_radius)
      .def("max_dt", &SolverConfig::max_dt)
      .def("validate", &SolverConfig::validate);

  py::class_<SolverRun>(m, "SolverRun")
      .def_readonly("times", &SolverRun::times)
      .def_readonly("probe_values", &SolverRun::probe_values)
      .def_readonly("max_grad_series", &SolverRun::max_grad_series)
      .def_readonly("max_grad_inf", &SolverRun::max_grad_inf)
      .def_readonly("monotonicity_warning", &SolverRun::monotonicity_warning)
      .def_readonly("steps", &SolverRun::steps)
      .def_readonly("n", &SolverRun::n);

  py::class_<PdeSolver>(m, "PdeSolver")
      .def(py::init<SolverConfig, const Environment&>(), py::arg("config"),
           py::arg("env"))
      .def(py::init([](SolverConfig config,
                       std::function<double(double, double)> c, double q) {
             return PdeSolver(std::move(config),
                              [c](Vec2 x) { return c(x.x, x.y); }, q);
           }),
           py::arg("config"), py::arg("c_field"), py::arg("q") = 2.0)
      .def("solve", &PdeSolver::solve,
           py::call_guard<py::gil_scoped_release>());

  m.def("normalize_value", &normalize_value, py::arg("run"), py::arg("T"));
  m.def("probe_series_csv", &probe_series_csv);

  m.def("p_ck_lower", &p_ck_lower, py::arg("k"), py::arg("delta"));
  m.def("p_ck_exact_disk", &p_ck_exact_disk, py::arg("k"), py::arg("delta"));
  m.def("lattice_points_in_disk", &lattice_points_in_disk);
  m.def("p_dk_given_ck_lower", &p_dk_given_ck_lower, py::arg("k"),
        py::arg("params"));
  m.def("liminf_lower", &liminf_lower, py::arg("delta"), py::arg("lambda_"));

  py::class_<EventQuery>(m, "EventQuery")
      .def(py::init<>())
      .def_readwrite("k", &EventQuery::k)
      .def_readwrite("delta", &EventQuery::delta)
      .def_readwrite("params", &EventQuery::params)
      .def_readwrite("trials", &EventQuery::trials)
      .def_readwrite("k_margin", &EventQuery::k_margin);

  py::class_<McEstimate>(m, "McEstimate")
      .def_readonly("trials", &McEstimate::trials)
      .def_readonly("freq_bk", &McEstimate::freq_bk)
      .def_readonly("freq_ck", &McEstimate::freq_ck)
      .def_readonly("se_bk", &McEstimate::se_bk)
      .def_readonly("se_ck", &McEstimate::se_ck)
      .def_readonly("exact_ck", &McEstimate::exact_ck)
      .def_readonly("closed_form_lower", &McEstimate::closed_form_lower)
      .def_readonly("truncation_bound", &McEstimate::truncation_bound);

  m.def("mc_estimate", &mc_estimate,
        py::call_guard<py::gil_scoped_release>());
}
