#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "desoc/analysis.hpp"
#include "desoc/error.hpp"
#include "desoc/problem_file.hpp"

namespace py = pybind11;
using namespace desoc;

namespace {

py::dict trajectory_dict(const transcription::DiscreteTrajectory& t, const nlp::SolverReport& r) {
  py::dict d;
  d["status"] = nlp::to_string(r.status);
  d["feasibility"] = r.feasibility;
  d["optimality"] = r.optimality;
  d["objective"] = t.objective;
  d["terminal_cost"] = t.terminal_cost;
  d["penalty"] = t.penalty;
  d["times"] = t.times;
  d["states"] = t.states;
  d["mass"] = t.mass;
  d["lambda_t"] = t.lambda_t;
  d["controls"] = t.controls;
  return d;
}

transcription::ProblemDefinition orbit_raising(double q, double t1, std::optional<double> t2, double thrust,
                                               double mdot, double tf) {
  transcription::ProblemDefinition p;
  p.t0 = 0.0;
  p.tf = tf;
  p.gravity = {1.0};
  p.desensitization.q_weight = q;
  p.desensitization.t1 = t1;
  p.desensitization.t2 = t2.value_or(tf);
  transcription::OrbitRaisingProblem op;
  op.model.thrust = thrust;
  op.model.mdot = mdot;
  p.details = op;
  return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Time-triggered desensitized trajectory optimization (C++ core)";

  py::register_exception<Error>(m, "DesocError", PyExc_RuntimeError);

  m.def(
      "cart_to_mee",
      [](const Eigen::Vector3d& r, const Eigen::Vector3d& v, double mu) {
        const auto x = astro::cart_to_mee({r, v}, astro::GravityModel{mu});
        return x.as_array();
      },
      py::arg("position"), py::arg("velocity"), py::arg("mu"), "Returns (p, f, g, h, k, L).");

  m.def(
      "mee_to_cart",
      [](const std::array<double, 6>& x, double mu) {
        const auto s = astro::mee_to_cart(astro::MeeState::from_array(x), astro::GravityModel{mu});
        return py::make_tuple(s.position, s.velocity);
      },
      py::arg("elements"), py::arg("mu"));

  m.def(
      "kepler_propagate",
      [](const std::array<double, 6>& x, double dt, double mu) {
        return astro::kepler_propagate(astro::MeeState::from_array(x), dt, astro::GravityModel{mu}).as_array();
      },
      py::arg("elements"), py::arg("dt"), py::arg("mu"));

  m.def(
      "trigger",
      [](double t, double t1, double t2, double rho) {
        dynamics::DesensitizationConfig c;
        c.t1 = t1;
        c.t2 = t2;
        c.rho = rho;
        return dynamics::trigger(t, c);
      },
      py::arg("t"), py::arg("t1"), py::arg("t2"), py::arg("rho") = 1e-5);

  m.def(
      "orbit_raising_rates",
      [](double r, double u, double v, double phi, double t, double thrust, double mdot, double m0) {
        dynamics::OrbitRaisingModel model;
        model.thrust = thrust;
        model.mdot = mdot;
        model.m0 = m0;
        const Eigen::Vector3d d = dynamics::orbit_raising_rates({r, u, v}, phi, model, t, astro::GravityModel{1.0});
        return std::array<double, 3>{d[0], d[1], d[2]};
      },
      py::arg("r"), py::arg("u"), py::arg("v"), py::arg("phi"), py::arg("t") = 0.0, py::arg("thrust") = 0.1405,
      py::arg("mdot") = -0.0749, py::arg("m0") = 1.0);

  m.def(
      "shooting_oracle",
      [](double thrust, double mdot, double tf, std::uint64_t seed) {
        dynamics::OrbitRaisingModel model;
        model.thrust = thrust;
        model.mdot = mdot;
        analysis::ShootingOptions o;
        o.seed = seed;
        return analysis::orbit_raising_shooting_oracle(model, astro::GravityModel{1.0}, tf, o).r_final;
      },
      py::arg("thrust") = 0.1405, py::arg("mdot") = -0.0749, py::arg("tf") = 3.32, py::arg("seed") = 0,
      "Optimal r(tf) of the maximum-radius transfer by indirect shooting.");

  m.def(
      "solve_orbit_raising",
      [](double q, double t1, std::optional<double> t2, int segments, double thrust, double mdot, double tf,
         std::uint64_t seed) {
        const auto p = orbit_raising(q, t1, t2, thrust, mdot, tf);
        nlp::SolverOptions o;
        o.seed = seed;
        analysis::SolveOutcome s;
        {
          py::gil_scoped_release release;
          s = analysis::solve_desensitized(p, analysis::window_mesh(p, segments), o);
        }
        return trajectory_dict(s.trajectory, s.report);
      },
      py::arg("q") = 0.0, py::arg("t1") = 0.0, py::arg("t2") = py::none(), py::arg("segments") = 40,
      py::arg("thrust") = 0.1405, py::arg("mdot") = -0.0749, py::arg("tf") = 3.32, py::arg("seed") = 0);

  m.def(
      "solve_problem_file",
      [](const std::string& path, std::optional<double> q, std::optional<double> t2, std::optional<int> segments) {
        auto cfg = io::load_problem_file(path);
        if (q) cfg.desensitization.q_weight = *q;
        if (t2) cfg.desensitization.t2 = *t2;
        if (segments) cfg.segments = *segments;
        cfg.validate();
        const auto sc = io::build_scenario(cfg);
        analysis::SolveOutcome s;
        {
          py::gil_scoped_release release;
          s = analysis::solve_desensitized(sc.problem, analysis::window_mesh(sc.problem, cfg.segments),
                                           io::solver_options(cfg));
        }
        py::dict d = trajectory_dict(s.trajectory, s.report);
        d["sensitive_cost"] = sc.cost_to_file(s.trajectory.terminal_cost);
        return d;
      },
      py::arg("path"), py::arg("q") = py::none(), py::arg("t2") = py::none(), py::arg("segments") = py::none(),
      "Solves a problem file; sensitive_cost is in file units (kg or scaled radius).");

  m.def(
      "dump_config",
      [](const std::string& path) { return io::dump_problem_yaml(io::load_problem_file(path)); }, py::arg("path"));

  m.def(
      "orbit_raising_dispersion",
      [](std::vector<double> thrusts, double q, double t1, std::optional<double> t2, int segments,
         const std::string& mode) {
        const auto p = orbit_raising(q, t1, t2, 0.1405, -0.0749, 3.32);
        analysis::PerturbationSpec spec;
        spec.thrusts = std::move(thrusts);
        spec.mode = analysis::parse_dispersion_mode(mode);
        analysis::DispersionReport rep;
        {
          py::gil_scoped_release release;
          rep = analysis::dispersion(p, spec, analysis::window_mesh(p, segments), {});
        }
        py::dict d;
        d["nominal_cost"] = rep.nominal_cost;
        d["reference_cost"] = rep.reference_cost;
        py::list runs;
        for (const auto& r : rep.runs) {
          runs.append(py::dict(py::arg("thrust") = r.thrust, py::arg("cost") = r.cost, py::arg("d") = r.d,
                               py::arg("ok") = r.ok));
        }
        d["runs"] = runs;
        return d;
      },
      py::arg("thrusts"), py::arg("q") = 0.0, py::arg("t1") = 0.0, py::arg("t2") = py::none(),
      py::arg("segments") = 40, py::arg("mode") = "resolve");
}
