#pragma once

#include "liestab/dynamics.hpp"

#include <string>
#include <vector>

namespace liestab {

/// A system together with the run it ships with.
struct Scenario {
  std::string name;
  std::string description;
  ClassASystem system;
  ExoSignal signal;
  Vector X0;
  long horizon = 50;
  double M = 1.0;  // initial-condition bound used for certificates
  std::vector<std::string> notes;
};

/// Tracking-error dynamics on the Heisenberg algebra under the control law
/// u = K e - (1, 2, 3) w. With `printed_variant` the second bracket uses A e in
/// place of K e, which drops the 3/2 [e, W] contribution.
ClassASystem build_error_dynamics_example(bool printed_variant = false);

/// One step of the group-level pipeline E+ = exp(2W) exp(u) exp(-W) E, returned
/// as log(E+) in Heisenberg coordinates.
Element error_dynamics_group_step(const Element& e, double w);

/// Coupled system on the 6-dimensional upper-triangular algebra with e^{ad}
/// families and the oscillating input driven by W0 = t4 + 7 t5 + 6 t6.
ClassASystem build_solvable_example();
/// W[0] = (g1(0), g2(0)) W0 and W[k] = (g1(k-1), g2(k-1)) W0 for k >= 1.
ExoSignal solvable_example_signal();

/// rho(A) = 0 systems used for the finite-time checks.
ClassASystem build_heisenberg_deadbeat();
ClassASystem build_upper_triangular_deadbeat();

std::vector<std::string> builtin_names();
/// Throws InputError for unknown names.
Scenario builtin(const std::string& name);

}  // namespace liestab
