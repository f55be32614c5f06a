#include "liestab/cli.hpp"

#include "liestab/errors.hpp"
#include "liestab/io.hpp"
#include "liestab/stability.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <random>

namespace liestab {

namespace {

Scenario resolve(const RunConfig& c) {
  if (c.scenario_path.empty() == c.builtin.empty())
    throw InputError("give exactly one of --scenario FILE or --builtin NAME");
  Scenario s = c.builtin.empty() ? load_scenario(c.scenario_path) : builtin(c.builtin);
  if (c.horizon) {
    if (*c.horizon < 0) throw InputError("horizon must be non-negative");
    s.horizon = *c.horizon;
  }
  if (c.M) {
    if (!(*c.M > 0.0)) throw InputError("M must be positive");
    s.M = *c.M;
  }
  return s;
}

std::string out_path(const RunConfig& c, const Scenario& s, const std::string& what) {
  std::filesystem::create_directories(c.out_dir);
  return (std::filesystem::path(c.out_dir) / (s.name + "_" + what)).string();
}

Vector initial_state(const Scenario& s, std::uint64_t seed) {
  if (s.X0.size() == s.system.state_size()) return s.X0;
  std::mt19937_64 rng(seed);
  return random_in_ball(s.system.state_size(), s.M, rng);
}

Json meta(const RunConfig& c, const Scenario& s) {
  return {{"command", c.command}, {"scenario", scenario_to_json(s)}, {"seed", c.seed}, {"tol", c.tol}};
}

const char* verdict(bool ok) { return ok ? "pass" : "FAIL"; }

int cmd_check(const RunConfig& c, const Scenario& s, std::ostream& out) {
  const ClassASystem& sys = s.system;
  const RadiusEstimate radius = radius_estimate(sys);
  const MajorantReport maj = class_a_majorant(sys, radius.radius);
  const EquilibriumReport eq = check_equilibrium_uniqueness(sys, s.signal, 10.0, 100, c.seed);
  const InvarianceReport inv = check_invariance(sys, 100, c.seed + 1);
  const JacobianReport jac = jacobian_check(sys, {1e-2, 1e-3, 1e-4}, c.seed + 2);
  const bool inv_ok = inv.passed(std::max(c.tol, 1e-10));
  Json j = meta(c, s);
  j["class_a"] = {{"majorant", to_json(maj)}, {"radius", to_json(radius)}, {"passed", maj.finite}};
  j["equilibrium"] = to_json(eq);
  j["invariance"] = to_json(inv);
  j["invariance"]["passed"] = inv_ok;
  j["jacobian"] = to_json(jac);
  const bool ok = maj.finite && eq.passed() && inv_ok && jac.passed();
  j["passed"] = ok;
  write_text(out_path(c, s, "check.json"), j.dump(2) + "\n");
  out << s.name << ": class-A majorant " << maj.value << " at radius " << radius.radius << " ... "
      << verdict(maj.finite) << "\n";
  out << s.name << ": unique equilibrium (" << eq.starts << " starts, " << eq.violations.size()
      << " nonzero fixed points" << (eq.structural_ok ? "" : ", input-only words") << ") ... " << verdict(eq.passed())
      << "\n";
  for (const auto& issue : eq.structural_issues) out << "  " << issue << "\n";
  out << s.name << ": ideal chain invariance ... " << verdict(inv_ok) << "\n";
  out << s.name << ": Jacobian at the origin equals A (order " << jac.observed_order
      << (jac.exact ? ", exact to roundoff" : "") << ") ... " << verdict(jac.passed()) << "\n";
  return ok ? kExitPass : kExitHypothesis;
}

int cmd_certify(const RunConfig& c, const Scenario& s, std::ostream& out) {
  const ClassASystem& sys = s.system;
  Json j = meta(c, s);
  const bool nilpotent = is_nilpotent(sys.algebra).nilpotent && sys.ideal.dim() == sys.d();
  bool issued = false;
  if (nilpotent) {
    const NilpotentCertificate cert = certify_nilpotent(sys, s.signal, s.M, c.epsilon);
    j["certificate"] = to_json(cert);
    issued = cert.issued;
    out << s.name << ": nilpotent, p = " << cert.p << ", rho(A) = " << std::setprecision(10) << cert.rho_A
        << ", threshold = " << cert.threshold << "\n";
    if (cert.issued)
      out << "  ||X[k]|| <= " << cert.alpha() << " * " << cert.lambda() << "^k ||X[0]|| for ||X[0]|| <= " << cert.M
          << "\n";
    else
      out << "  rejected: " << cert.reason << "\n";
  } else {
    std::vector<Vector> X0s{initial_state(s, c.seed)};
    std::mt19937_64 rng(c.seed + 101);
    for (int i = 0; i < 9; ++i) X0s.push_back(random_in_ball(sys.state_size(), s.M, rng));
    const SolvableReport rep = certify_solvable(sys, s.signal, X0s, std::max(1L, s.horizon));
    j["certificate"] = to_json(rep);
    issued = rep.issued;
    out << s.name << ": solvable, p = " << rep.p << ", rho(A) = " << std::setprecision(10) << rep.rho_A << "\n";
    out << "  " << (rep.issued ? "conditional certificate issued" : "rejected: " + rep.reason) << "\n";
    out << "  caveat: " << rep.caveat << "\n";
    out << "  simulated decay over " << X0s.size() << " runs: " << (rep.simulated_decay ? "yes" : "no") << "\n";
    for (const auto& w : rep.warnings) out << "  warning: " << w << "\n";
  }
  write_text(out_path(c, s, "certificate.json"), j.dump(2) + "\n");
  return issued ? kExitPass : kExitHypothesis;
}

int write_run(const RunConfig& c, const Scenario& s, const Trajectory& tr, std::ostream& out, std::ostream& err) {
  write_text(out_path(c, s, "trajectory.csv"), trajectory_csv(s.system, tr, s.name + ": " + s.description));
  Json j = meta(c, s);
  j["trajectory"] = trajectory_json(s.system, tr);
  write_text(out_path(c, s, "trajectory.json"), j.dump(2) + "\n");
  if (tr.diverged) {
    err << s.name << ": trajectory diverged at k = " << tr.first_bad << "\n";
    return kExitDivergence;
  }
  out << s.name << ": " << tr.states.size() - 1 << " steps, ||X[0]|| = " << tr.norms.front()
      << ", ||X[end]|| = " << tr.norms.back() << "\n";
  return kExitPass;
}

int cmd_simulate(const RunConfig& c, const Scenario& s, std::ostream& out, std::ostream& err) {
  const Trajectory tr = simulate(s.system, initial_state(s, c.seed), s.signal, s.horizon);
  return write_run(c, s, tr, out, err);
}

int cmd_reproduce(const RunConfig& c, const Scenario& s, std::ostream& out, std::ostream& err) {
  const Trajectory tr = simulate(s.system, initial_state(s, c.seed), s.signal, s.horizon);
  const int code = write_run(c, s, tr, out, err);
  if (code != kExitPass) return code;
  // Envelope over a bundle of initial conditions in the ball of radius M.
  std::vector<Trajectory> bundle{tr};
  std::mt19937_64 rng(c.seed + 7);
  for (int i = 0; i < 9; ++i) {
    Vector x0 = random_in_ball(s.system.state_size(), s.M, rng);
    if (x0.isZero(0.0)) continue;
    bundle.push_back(simulate(s.system, x0, s.signal, s.horizon));
    if (bundle.back().diverged) {
      err << s.name << ": bundle run " << i + 1 << " diverged at k = " << bundle.back().first_bad << "\n";
      return kExitDivergence;
    }
  }
  const EnvelopeFit fit = fit_envelope(bundle);
  Json j = meta(c, s);
  j["envelope"] = to_json(fit);
  j["runs"] = bundle.size();
  write_text(out_path(c, s, "envelope.json"), j.dump(2) + "\n");
  out << s.name << ": fitted envelope alpha = " << fit.alpha << ", lambda = " << fit.lambda
      << (fit.certified ? "" : " (no decay)") << " over " << bundle.size() << " runs\n";
  return kExitPass;
}

int cmd_deadbeat(const RunConfig& c, const Scenario& s, std::ostream& out) {
  const DeadbeatCertificate cert = deadbeat_horizon(s.system);
  const double beta = s.signal.has_envelope() ? s.signal.beta() : 1.0;
  const DeadbeatRunReport runs = verify_deadbeat(s.system, cert, 100, s.M, beta, c.seed);
  const EnvelopeFit env = semiglobal_from_deadbeat(s.system, cert, beta, s.M, 0.5, c.seed);
  Json j = meta(c, s);
  j["certificate"] = to_json(cert);
  j["runs"] = to_json(runs);
  j["runs"]["passed"] = runs.passed(c.tol);
  j["semiglobal"] = to_json(env);
  write_text(out_path(c, s, "deadbeat.json"), j.dump(2) + "\n");
  out << s.name << ": deadbeat horizon " << cert.horizon << " (levels";
  for (int h : cert.level_horizons) out << " " << h;
  out << "), max ||X[k]|| for k >= horizon over " << runs.runs << " runs = " << runs.max_after_horizon << " ... "
      << verdict(runs.passed(c.tol)) << "\n";
  out << "  envelope with lambda = 0.5: alpha = " << env.alpha << ", fresh violations " << env.fresh_violations << "/"
      << env.fresh_runs << "\n";
  return runs.passed(c.tol) && env.fresh_violations == 0 ? kExitPass : kExitHypothesis;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const Scenario s = resolve(config);
    if (config.command == "check") return cmd_check(config, s, out);
    if (config.command == "certify") return cmd_certify(config, s, out);
    if (config.command == "simulate") return cmd_simulate(config, s, out, err);
    if (config.command == "reproduce") return cmd_reproduce(config, s, out, err);
    if (config.command == "deadbeat") return cmd_deadbeat(config, s, out);
    err << "unknown command '" << config.command << "'\n";
    return kExitInput;
  } catch (const HypothesisError& e) {
    err << "hypothesis not met: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const InvarianceViolation& e) {
    err << "invariance violated: " << e.what() << "\n";
    return kExitInput;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Stability certificates and simulation for class-A dynamics on solvable Lie algebras"};
  RunConfig c;
  long horizon = -1;
  double M = 0.0;
  app.add_option("command", c.command, "check | certify | simulate | deadbeat | reproduce")
      ->required()
      ->check(CLI::IsMember({"check", "certify", "simulate", "deadbeat", "reproduce"}));
  auto* scen = app.add_option("--scenario", c.scenario_path, "scenario JSON file");
  auto* bi = app.add_option("--builtin", c.builtin, "built-in scenario name");
  scen->excludes(bi);
  app.add_option("--horizon", horizon, "number of steps (overrides the scenario)");
  app.add_option("--seed", c.seed, "seed for sampled initial conditions and searches");
  app.add_option("--out", c.out_dir, "output directory");
  app.add_option("--tol", c.tol, "zero tolerance for deadbeat and invariance checks");
  app.add_option("--epsilon", c.epsilon, "gap parameter for the nilpotent certificate");
  app.add_option("--M", M, "initial-condition bound");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInput;
  }
  if (horizon >= 0) c.horizon = horizon;
  else if (app.count("--horizon")) c.horizon = horizon;
  if (app.count("--M")) c.M = M;
  if (c.scenario_path.empty() && c.builtin.empty()) {
    std::cerr << "input error: give --scenario FILE or --builtin NAME (one of";
    for (const auto& n : builtin_names()) std::cerr << " " << n;
    std::cerr << ")\n";
    return kExitInput;
  }
  return run(c, std::cout, std::cerr);
}

}  // namespace liestab
