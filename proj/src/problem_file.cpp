#include "desoc/problem_file.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "desoc/error.hpp"

namespace desoc::io {

namespace {

using transcription::Family;

[[noreturn]] void schema_error(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::SchemaError, path + ": " + msg);
}

void check_keys(const YAML::Node& node, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!node.IsMap()) {
    schema_error(path, "expected a mapping");
  }
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    bool known = false;
    for (const char* a : allowed) {
      known = known || key == a;
    }
    if (!known) {
      schema_error(path.empty() ? key : path + "." + key, "unknown key");
    }
  }
}

std::string join(const std::string& path, const char* key) { return path.empty() ? key : path + "." + key; }

double get_double(const YAML::Node& node, const std::string& path, const char* key, std::optional<double> fallback) {
  const YAML::Node v = node[key];
  if (!v) {
    if (!fallback) {
      schema_error(join(path, key), "required key missing");
    }
    return *fallback;
  }
  if (!v.IsScalar()) {
    schema_error(join(path, key), "expected a number");
  }
  try {
    const double x = v.as<double>();
    if (!std::isfinite(x)) {
      schema_error(join(path, key), "must be finite");
    }
    return x;
  } catch (const YAML::Exception&) {
    schema_error(join(path, key), "expected a number, got '" + v.Scalar() + "'");
  }
}

long long get_integer(const YAML::Node& node, const std::string& path, const char* key, long long fallback) {
  const YAML::Node v = node[key];
  if (!v) {
    return fallback;
  }
  try {
    return v.as<long long>();
  } catch (const YAML::Exception&) {
    schema_error(join(path, key), "expected an integer, got '" + (v.IsScalar() ? v.Scalar() : "?") + "'");
  }
}

std::string get_string(const YAML::Node& node, const std::string& path, const char* key,
                       std::optional<std::string> fallback) {
  const YAML::Node v = node[key];
  if (!v) {
    if (!fallback) {
      schema_error(join(path, key), "required key missing");
    }
    return *fallback;
  }
  if (!v.IsScalar()) {
    schema_error(join(path, key), "expected a string");
  }
  return v.Scalar();
}

astro::Vec3 get_vec3(const YAML::Node& node, const std::string& path, const char* key) {
  const YAML::Node v = node[key];
  if (!v) {
    schema_error(join(path, key), "required key missing");
  }
  if (!v.IsSequence() || v.size() != 3) {
    schema_error(join(path, key), "expected a list of three numbers");
  }
  astro::Vec3 out;
  for (std::size_t i = 0; i < 3; ++i) {
    try {
      out[static_cast<int>(i)] = v[i].as<double>();
    } catch (const YAML::Exception&) {
      schema_error(join(path, key), "expected a list of three numbers");
    }
  }
  return out;
}

YAML::Node require_map(const YAML::Node& parent, const std::string& path, const char* key) {
  const YAML::Node v = parent[key];
  if (!v) {
    schema_error(join(path, key), "required section missing");
  }
  return v;
}

astro::CartesianState parse_cartesian(const YAML::Node& node, const std::string& path) {
  check_keys(node, path, {"position", "velocity"});
  return {get_vec3(node, path, "position"), get_vec3(node, path, "velocity")};
}

// Shortest text that parses back to the same double.
std::string num(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".eEn") == std::string::npos) {
    s += ".0";
  }
  return s;
}

std::string vec(const astro::Vec3& v) { return "[" + num(v[0]) + ", " + num(v[1]) + ", " + num(v[2]) + "]"; }

}  // namespace

void ProblemConfig::validate() const {
  if (!(tf > t0)) {
    schema_error("times", "tf must exceed t0");
  }
  if (!(mu > 0.0)) {
    schema_error("gravity.mu", "must be positive");
  }
  if (segments < 1) {
    schema_error("mesh.segments", "must be at least 1");
  }
  if (family == Family::MeeRendezvous && !rendezvous) {
    schema_error("rendezvous", "required for family mee_rendezvous");
  }
  if (family == Family::OrbitRaising && !orbit_raising) {
    schema_error("orbit_raising", "required for family orbit_raising");
  }
  if (rendezvous && orbit_raising) {
    schema_error("", "give either a rendezvous or an orbit_raising section, not both");
  }
  if (solver.derivatives != "analytic" && solver.derivatives != "finite_difference") {
    schema_error("solver.derivatives", "must be 'analytic' or 'finite_difference'");
  }
  try {
    desensitization.validate(t0, tf);
    if (rendezvous) {
      rendezvous->spacecraft.validate();
      if (!(rendezvous->mass_lower_fraction > 0.0 && rendezvous->mass_lower_fraction < 1.0)) {
        schema_error("rendezvous.mass_lower_fraction", "must lie in (0, 1)");
      }
      if (rendezvous->revolutions && *rendezvous->revolutions < 0) {
        schema_error("rendezvous.revolutions", "must be non-negative");
      }
    }
    solver_options(*this).validate();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SchemaError) {
      throw;
    }
    throw Error(ErrorCode::SchemaError, e.what());
  }
}

ProblemConfig parse_problem_yaml(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw Error(ErrorCode::SchemaError, std::string("malformed YAML: ") + e.what());
  }
  if (!root || !root.IsMap()) {
    schema_error("", "top level must be a mapping");
  }
  check_keys(root, "",
             {"family", "name", "times", "gravity", "rendezvous", "orbit_raising", "desensitization", "mesh", "solver"});

  ProblemConfig cfg;
  const std::string family = get_string(root, "", "family", std::nullopt);
  if (family == "mee_rendezvous") {
    cfg.family = Family::MeeRendezvous;
  } else if (family == "orbit_raising") {
    cfg.family = Family::OrbitRaising;
  } else {
    schema_error("family", "must be 'mee_rendezvous' or 'orbit_raising'");
  }
  cfg.name = get_string(root, "", "name", std::string());

  const YAML::Node times = require_map(root, "", "times");
  check_keys(times, "times", {"t0", "tf"});
  cfg.t0 = get_double(times, "times", "t0", 0.0);
  cfg.tf = get_double(times, "times", "tf", std::nullopt);

  const YAML::Node gravity = require_map(root, "", "gravity");
  check_keys(gravity, "gravity", {"mu"});
  cfg.mu = get_double(gravity, "gravity", "mu", std::nullopt);

  if (const YAML::Node r = root["rendezvous"]) {
    check_keys(r, "rendezvous", {"initial", "target", "spacecraft", "revolutions", "mass_lower_fraction"});
    RendezvousConfig rc;
    rc.initial = parse_cartesian(require_map(r, "rendezvous", "initial"), "rendezvous.initial");
    rc.target = parse_cartesian(require_map(r, "rendezvous", "target"), "rendezvous.target");
    const YAML::Node sc = require_map(r, "rendezvous", "spacecraft");
    check_keys(sc, "rendezvous.spacecraft", {"m0", "thrust", "isp", "g0"});
    rc.spacecraft.m0 = get_double(sc, "rendezvous.spacecraft", "m0", std::nullopt);
    rc.spacecraft.thrust = get_double(sc, "rendezvous.spacecraft", "thrust", std::nullopt);
    rc.spacecraft.isp = get_double(sc, "rendezvous.spacecraft", "isp", std::nullopt);
    rc.spacecraft.g0 = get_double(sc, "rendezvous.spacecraft", "g0", dynamics::kStandardGravity);
    if (r["revolutions"]) {
      rc.revolutions = static_cast<int>(get_integer(r, "rendezvous", "revolutions", 0));
    }
    rc.mass_lower_fraction = get_double(r, "rendezvous", "mass_lower_fraction", 0.1);
    cfg.rendezvous = rc;
  }

  if (const YAML::Node o = root["orbit_raising"]) {
    check_keys(o, "orbit_raising", {"r0", "u0", "v0", "m0", "mdot", "thrust"});
    OrbitRaisingConfig oc;
    oc.initial.r = get_double(o, "orbit_raising", "r0", 1.0);
    oc.initial.u = get_double(o, "orbit_raising", "u0", 0.0);
    oc.initial.v = get_double(o, "orbit_raising", "v0", 1.0);
    oc.model.m0 = get_double(o, "orbit_raising", "m0", 1.0);
    oc.model.mdot = get_double(o, "orbit_raising", "mdot", std::nullopt);
    oc.model.thrust = get_double(o, "orbit_raising", "thrust", std::nullopt);
    oc.model.t0 = cfg.t0;
    cfg.orbit_raising = oc;
  }

  cfg.desensitization.t1 = cfg.t0;
  cfg.desensitization.t2 = cfg.tf;
  if (const YAML::Node d = root["desensitization"]) {
    check_keys(d, "desensitization", {"q", "t1", "t2", "rho", "k_vr", "k_vt", "k_vn", "k_m"});
    auto& ds = cfg.desensitization;
    ds.q_weight = get_double(d, "desensitization", "q", 0.0);
    ds.t1 = get_double(d, "desensitization", "t1", cfg.t0);
    ds.t2 = get_double(d, "desensitization", "t2", cfg.tf);
    ds.rho = get_double(d, "desensitization", "rho", ds.rho);
    ds.k_vr = get_double(d, "desensitization", "k_vr", 1.0);
    ds.k_vt = get_double(d, "desensitization", "k_vt", 1.0);
    ds.k_vn = get_double(d, "desensitization", "k_vn", 1.0);
    ds.k_m = get_double(d, "desensitization", "k_m", 1.0);
  }

  if (const YAML::Node m = root["mesh"]) {
    check_keys(m, "mesh", {"segments"});
    cfg.segments = static_cast<int>(get_integer(m, "mesh", "segments", cfg.segments));
  }

  if (const YAML::Node s = root["solver"]) {
    check_keys(s, "solver",
               {"feasibility_tol", "optimality_tol", "max_outer_iterations", "max_inner_iterations", "max_restarts",
                "derivatives", "seed"});
    auto& sv = cfg.solver;
    sv.feasibility_tol = get_double(s, "solver", "feasibility_tol", sv.feasibility_tol);
    sv.optimality_tol = get_double(s, "solver", "optimality_tol", sv.optimality_tol);
    sv.max_outer_iterations = static_cast<int>(get_integer(s, "solver", "max_outer_iterations", sv.max_outer_iterations));
    sv.max_inner_iterations = static_cast<int>(get_integer(s, "solver", "max_inner_iterations", sv.max_inner_iterations));
    sv.max_restarts = static_cast<int>(get_integer(s, "solver", "max_restarts", sv.max_restarts));
    sv.derivatives = get_string(s, "solver", "derivatives", sv.derivatives);
    const long long seed = get_integer(s, "solver", "seed", 0);
    if (seed < 0) {
      schema_error("solver.seed", "must be non-negative");
    }
    sv.seed = static_cast<std::uint64_t>(seed);
  }

  cfg.validate();
  return cfg;
}

ProblemConfig load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open problem file '" + path + "'");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem_yaml(ss.str());
}

std::string dump_problem_yaml(const ProblemConfig& cfg) {
  std::ostringstream o;
  o << "family: " << transcription::to_string(cfg.family) << "\n";
  if (!cfg.name.empty()) {
    YAML::Emitter quoted;
    quoted << YAML::DoubleQuoted << cfg.name;
    o << "name: " << quoted.c_str() << "\n";
  }
  o << "times:\n  t0: " << num(cfg.t0) << "\n  tf: " << num(cfg.tf) << "\n";
  o << "gravity:\n  mu: " << num(cfg.mu) << "\n";
  if (cfg.rendezvous) {
    const auto& r = *cfg.rendezvous;
    o << "rendezvous:\n";
    o << "  initial:\n    position: " << vec(r.initial.position) << "\n    velocity: " << vec(r.initial.velocity) << "\n";
    o << "  target:\n    position: " << vec(r.target.position) << "\n    velocity: " << vec(r.target.velocity) << "\n";
    o << "  spacecraft:\n    m0: " << num(r.spacecraft.m0) << "\n    thrust: " << num(r.spacecraft.thrust)
      << "\n    isp: " << num(r.spacecraft.isp) << "\n    g0: " << num(r.spacecraft.g0) << "\n";
    if (r.revolutions) {
      o << "  revolutions: " << *r.revolutions << "\n";
    }
    o << "  mass_lower_fraction: " << num(r.mass_lower_fraction) << "\n";
  }
  if (cfg.orbit_raising) {
    const auto& r = *cfg.orbit_raising;
    o << "orbit_raising:\n  r0: " << num(r.initial.r) << "\n  u0: " << num(r.initial.u) << "\n  v0: " << num(r.initial.v)
      << "\n  m0: " << num(r.model.m0) << "\n  mdot: " << num(r.model.mdot) << "\n  thrust: " << num(r.model.thrust)
      << "\n";
  }
  const auto& d = cfg.desensitization;
  o << "desensitization:\n  q: " << num(d.q_weight) << "\n  t1: " << num(d.t1) << "\n  t2: " << num(d.t2)
    << "\n  rho: " << num(d.rho) << "\n  k_vr: " << num(d.k_vr) << "\n  k_vt: " << num(d.k_vt) << "\n  k_vn: " << num(d.k_vn)
    << "\n  k_m: " << num(d.k_m) << "\n";
  o << "mesh:\n  segments: " << cfg.segments << "\n";
  const auto& s = cfg.solver;
  o << "solver:\n  feasibility_tol: " << num(s.feasibility_tol) << "\n  optimality_tol: " << num(s.optimality_tol)
    << "\n  max_outer_iterations: " << s.max_outer_iterations << "\n  max_inner_iterations: " << s.max_inner_iterations
    << "\n  max_restarts: " << s.max_restarts << "\n  derivatives: " << s.derivatives << "\n  seed: " << s.seed << "\n";
  return o.str();
}

double Scenario::time_to_canonical(double file_time) const {
  return interplanetary() ? scaling.days_to_canonical(file_time) : file_time;
}

double Scenario::time_to_file(double t) const { return interplanetary() ? scaling.canonical_to_days(t) : t; }

double Scenario::cost_to_file(double cost) const { return interplanetary() ? scaling.mass_to_kg(cost) : cost; }

double Scenario::thrust_to_file(double thrust) const {
  return interplanetary() ? scaling.thrust_to_newtons(thrust) : thrust;
}

double Scenario::thrust_to_canonical(double file_thrust) const {
  return interplanetary() ? scaling.thrust_to_canonical(file_thrust) : file_thrust;
}

Scenario build_scenario(const ProblemConfig& cfg) {
  cfg.validate();
  Scenario sc;
  auto& p = sc.problem;
  if (cfg.family == Family::MeeRendezvous) {
    const auto& r = *cfg.rendezvous;
    sc.scaling = astro::CanonicalScaling::from_gravity(astro::kAstronomicalUnitKm, cfg.mu, r.spacecraft.m0);
    const astro::GravityModel unit{1.0};
    const astro::MeeState x0 = astro::cart_to_mee(astro::to_canonical(r.initial, sc.scaling), unit);
    astro::MeeState xt = astro::cart_to_mee(astro::to_canonical(r.target, sc.scaling), unit);
    p.t0 = sc.scaling.days_to_canonical(cfg.t0);
    p.tf = sc.scaling.days_to_canonical(cfg.tf);
    if (r.revolutions) {
      sc.revolutions = *r.revolutions;
    } else {
      // Average mean motion of the two boundary orbits over the flight time.
      const double n0 = astro::kTwoPi / astro::orbital_period(x0, unit);
      const double n1 = astro::kTwoPi / astro::orbital_period(xt, unit);
      const double sweep = 0.5 * (n0 + n1) * (p.tf - p.t0);
      double gap = std::fmod(xt.L - x0.L, astro::kTwoPi);
      if (gap < 0.0) {
        gap += astro::kTwoPi;
      }
      sc.revolutions = std::max(0, static_cast<int>(std::lround((sweep - gap) / astro::kTwoPi)));
    }
    xt.L = astro::unwrap_longitude(x0.L, xt.L, sc.revolutions);
    p.gravity = unit;
    transcription::RendezvousProblem rp;
    rp.initial = x0;
    rp.target = xt;
    rp.initial_mass = 1.0;
    rp.mass_lower_bound = r.mass_lower_fraction;
    rp.propulsion = dynamics::canonical_propulsion(r.spacecraft, sc.scaling);
    p.details = rp;
  } else {
    sc.scaling = astro::CanonicalScaling::identity();
    p.t0 = cfg.t0;
    p.tf = cfg.tf;
    p.gravity = astro::GravityModel{cfg.mu};
    transcription::OrbitRaisingProblem op;
    op.initial = cfg.orbit_raising->initial;
    op.model = cfg.orbit_raising->model;
    op.model.t0 = cfg.t0;
    p.details = op;
  }
  p.desensitization = cfg.desensitization;
  p.desensitization.t1 = sc.time_to_canonical(cfg.desensitization.t1);
  p.desensitization.t2 = sc.time_to_canonical(cfg.desensitization.t2);
  p.desensitization.rho = sc.time_to_canonical(cfg.desensitization.rho);
  // Rounding in the unit conversion must not push the window past the horizon.
  p.desensitization.t1 = std::clamp(p.desensitization.t1, p.t0, p.tf);
  p.desensitization.t2 = std::clamp(p.desensitization.t2, p.desensitization.t1, p.tf);
  p.validate();
  return sc;
}

nlp::SolverOptions solver_options(const ProblemConfig& cfg) {
  nlp::SolverOptions o;
  o.feasibility_tol = cfg.solver.feasibility_tol;
  o.optimality_tol = cfg.solver.optimality_tol;
  o.max_outer_iterations = cfg.solver.max_outer_iterations;
  o.max_inner_iterations = cfg.solver.max_inner_iterations;
  o.max_restarts = cfg.solver.max_restarts;
  o.seed = cfg.solver.seed;
  o.derivative_mode = cfg.solver.derivatives == "finite_difference" ? nlp::DerivativeMode::FiniteDifference
                                                                    : nlp::DerivativeMode::AnalyticDynamics;
  return o;
}

}  // namespace desoc::io
