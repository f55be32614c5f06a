#pragma once

#include "liestab/dynamics.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace liestab {

/// Ladder of constants for the nilpotent semiglobal bound. Vectors are indexed
/// by level i = 1..p (entry 0 is unused and set to zero).
struct NilpotentCertificate {
  int p = 0;
  int n = 0;
  int r = 0;
  double s = 1.0;       // envelope rate actually used (clamped to >= 1)
  double s_input = 1.0; // rate supplied by the signal
  double beta = 0.0;
  double mu = 0.0;
  double M = 0.0;
  double rho_A = 0.0;
  double threshold = 1.0;  // s^{p(1-p)/2}
  double epsilon = 0.0;
  double Lambda = 0.0;
  std::vector<double> rho_levels;     // rho(A_bar_i)
  std::vector<double> Lambda_levels;  // rho(A_bar_i) + i eps / (p + 1)
  std::vector<double> lambda_levels;  // recursion lambda_i = lambda_{i-1} s^{i-1}
  std::vector<double> lambda_closed;  // Lambda s^{i(i-1)/2}
  std::vector<double> sigma_levels;
  std::vector<double> sigma_adapted;  // fallback bound from the adapted norm
  std::vector<double> gamma_levels;
  std::vector<double> alpha_levels;
  std::vector<std::vector<double>> max_coeff;  // [i][l]: largest word weight of length l
  bool ladder_consistent = true;   // recursion equals closed form
  bool max_at_top = true;          // max_{l,q} lambda_{i-1}^q s^{l-q} attained at l = i, q = 1
  bool issued = false;
  std::string reason;

  double alpha() const { return alpha_levels.empty() ? 0.0 : alpha_levels.back(); }
  double lambda() const { return lambda_levels.empty() ? 0.0 : lambda_levels.back(); }
  double margin() const { return threshold - rho_A; }
};

/// Semiglobal exponential bound ||X[k]|| <= alpha_p lambda_p^k ||X[0]|| for
/// ||X[0]|| <= M. Throws HypothesisError when the ideal is not all of g or the
/// algebra is not nilpotent. epsilon <= 0 selects (threshold - rho(A)) / 2. A
/// certificate with issued == false carries the rejection reason and margin.
NilpotentCertificate certify_nilpotent(const ClassASystem& sys, const ExoSignal& w, double M,
                                       double epsilon = 0.0);

/// Forcing constant gamma_i from the level i-1 constants. i = 1 gives 0.
double claim1_gamma(const std::vector<double>& max_coeff_by_length, double mu, double iota_norm, int n,
                    int r, double alpha_prev, double M, double beta, int i);

/// Largest summed weight of the words of each length (index = length) after
/// grouping terms with the same letters. Families are expanded to their cutoff.
std::vector<double> max_word_weight_by_length(const ClassASystem& sys, double radius);

/// u_i[k] = X_bar_i[k+1] - A_bar_i X_bar_i[k] along a trajectory.
std::vector<double> measured_forcing(const ClassASystem& sys, const Trajectory& tr, int level);

/// The same forcing from the word series with every letter replaced by its
/// lift iota_{i-1} P_{i-1} Y.
std::vector<double> word_formula_forcing(const ClassASystem& sys, const Trajectory& tr, int level);

struct SolvableReport {
  double rho_A = 0.0;
  bool schur = false;
  double schur_margin = 0.0;
  bool solvable = false;
  bool ideal_nilpotent = false;
  int p = 0;
  double ideal_residual_max = 0.0;   // max_k quotient norm of W[k] modulo h
  double ideal_residual_tail = 0.0;  // same over the last quarter of the horizon
  bool input_converges_to_ideal = false;
  bool conditional = true;
  std::string caveat;
  std::vector<std::string> warnings;
  // Simulation evidence from the supplied initial conditions.
  std::vector<double> final_norms;
  bool simulated_decay = false;
  // Cross-check with the nilpotent certifier when it applies.
  std::optional<bool> nilpotent_verdict;
  bool issued = false;
  std::string reason;
};

/// Preconditions of the solvable attractivity result plus simulation evidence.
/// The smallness bound on W has no closed form and is reported as an assumption.
SolvableReport certify_solvable(const ClassASystem& sys, const ExoSignal& w, const std::vector<Vector>& X0s,
                                long horizon = 200, double decay_tol = 1e-4);

/// Empirical basin probe: largest multiple of the signal (bisection on [0, max_scale])
/// for which every supplied initial condition still decays below decay_tol.
double basin_probe(const ClassASystem& sys, const ExoSignal& w, const std::vector<Vector>& X0s, long horizon,
                   double decay_tol = 1e-4, double max_scale = 64.0, int iterations = 12);

struct DeadbeatCertificate {
  int p = 0;
  int n = 0;
  int d = 0;
  std::vector<int> ideal_dims;     // dim h^(j), j = 1..p
  std::vector<int> level_horizons; // level i = 1..p+1 for the quotient modulo h^(i)
  int horizon = 0;
  double rho_A = 0.0;
  bool nilpotent_power_check = false;  // ||A^{nd}|| vanishes
};

/// Finite-time horizons n (i dim g - sum_{j<=i} dim h^(j)). Throws HypothesisError
/// unless A is nilpotent and the ideal chain terminates.
DeadbeatCertificate deadbeat_horizon(const ClassASystem& sys);

struct DeadbeatRunReport {
  int runs = 0;
  double max_after_horizon = 0.0;            // max ||X[k]||, k >= horizon
  std::vector<double> max_after_level;       // per level i, max quotient norm for k >= H_i
  int first_zero_max = 0;                    // latest first-zero index across runs
  bool passed(double tol = 1e-9) const;
};

/// Simulates `runs` random initial conditions in the ball of radius `radius` with
/// random h-valued inputs of norm <= beta, horizon + extra steps each.
DeadbeatRunReport verify_deadbeat(const ClassASystem& sys, const DeadbeatCertificate& cert, int runs,
                                  double radius, double beta, std::uint64_t seed, int extra = 10);

/// Random input bounded by beta in every slot and taking values in h.
ExoSignal random_ideal_signal(const ClassASystem& sys, double beta, std::uint64_t seed);

struct EnvelopeFit {
  double alpha = 0.0;
  double lambda = 0.0;
  bool certified = false;  // lambda < 1
  int samples = 0;         // (trajectory, k) pairs used
  std::string note;
  // Verification on fresh samples (semiglobal_from_deadbeat only).
  int fresh_runs = 0;
  int fresh_violations = 0;
  double fresh_worst_ratio = 0.0;  // max ||X[k]|| / (alpha lambda^k ||X[0]||)
};

/// alpha for a prescribed lambda in [0, 1) over a pool of deadbeat runs, checked on
/// fresh samples. The pool is a nested radius grid, so alpha never decreases in M.
EnvelopeFit semiglobal_from_deadbeat(const ClassASystem& sys, const DeadbeatCertificate& cert, double beta,
                                     double M, double lambda, std::uint64_t seed = 23, int fresh = 100);

/// Least-squares rate from log(||X[k]|| / ||X[0]||) against k, then the smallest
/// alpha making the bound hold on every sample above 1e-13 relative.
EnvelopeFit fit_envelope(const std::vector<std::vector<double>>& norms);
EnvelopeFit fit_envelope(const std::vector<Trajectory>& bundle);

struct RadiusEstimate {
  double limsup = 0.0;  // estimate of limsup (sum_{|w|=l} ||c_w||)^{1/l}
  double rho1 = 0.0;
  double rho2 = 0.0;
  double radius = 0.0;  // rho2^2
  std::vector<std::string> warnings;
};

/// Convergence radius for the quotient series. Finite word lists and e^{ad}
/// families give limsup 0. `per_length` overrides the stored series with
/// explicit sums S_l (index = length).
RadiusEstimate radius_estimate(const ClassASystem& sys, const std::vector<double>& per_length = {});

}  // namespace liestab
