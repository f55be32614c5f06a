#pragma once

#include "liestab/algebra.hpp"
#include "liestab/quotient.hpp"
#include "liestab/signal.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace liestab {

enum class SlotKind { State, Input };

/// Reference to one component X_j or W_j (0-based index).
struct Slot {
  SlotKind kind = SlotKind::State;
  int index = 0;

  static Slot X(int j) { return {SlotKind::State, j}; }
  static Slot W(int j) { return {SlotKind::Input, j}; }
  bool operator==(const Slot& o) const { return kind == o.kind && index == o.index; }
  /// "X1", "W2", ... (1-based, as written in scenario files).
  std::string label() const;
};

/// A word letter: the value of a slot, optionally passed through a fixed linear
/// map of g first. An empty map means the identity.
struct Letter {
  Slot slot;
  Matrix map;

  Letter() = default;
  Letter(Slot s) : slot(s) {}  // NOLINT(google-explicit-constructor)
  Letter(Slot s, Matrix m) : slot(s), map(std::move(m)) {}
  bool has_map() const { return map.size() > 0; }
};

/// Right-nested bracket [Y_1, [Y_2, [..., Y_m]]].
struct Word {
  std::vector<Letter> letters;
  std::size_t size() const { return letters.size(); }
  bool has_state_letter() const;
};

/// c (x) w, with c in R^n selecting the output slots.
struct Term {
  Word word;
  Vector coeff;
};

/// scale * (e^{ad_b} - Id)(target) added to output slot `output`, where
/// b = sum base_j * slot_j. The identity part belongs to the linear map A.
struct GeneratedFamily {
  std::vector<std::pair<Slot, double>> base;
  Slot target;
  int output = 0;
  double scale = 1.0;
  int cutoff = 0;  // 0: pick the smallest cutoff meeting tail_tolerance
  double tail_tolerance = 1e-12;
};

/// X+ = A X + sum_w c_w (x) w + generated families, on g^n driven by W in g^r.
struct ClassASystem {
  std::string name;
  LieAlgebra algebra;
  int n = 1;
  int r = 1;
  Matrix A;
  std::vector<Term> terms;
  std::vector<GeneratedFamily> families;
  Subspace ideal;      // h, containing [g, g]
  IdealChain chain;    // lower central series of h
  std::vector<QuotientContext> quotients;  // level i: modulo chain[i]
  NormKind norm = NormKind::Sum;
  double mu = 2.0;

  int d() const { return algebra.dim(); }
  int state_size() const { return n * d(); }
  int input_size() const { return r * d(); }
  int levels() const { return static_cast<int>(quotients.size()); }
  /// Nilindex of h when the chain terminates, -1 otherwise.
  int nilindex() const { return chain.terminated ? static_cast<int>(chain.size()) - 1 : -1; }
};

/// Validates dimensions and builds the chain of h. `mu` <= 0 selects default_mu.
ClassASystem make_system(std::string name, LieAlgebra algebra, int n, int r, Matrix A,
                         std::vector<Term> terms, std::vector<GeneratedFamily> families,
                         Subspace ideal, NormKind norm = NormKind::Sum, double mu = 0.0);

/// Value of a letter for the stacked state and input.
Element letter_value(const ClassASystem& sys, const Letter& l, const Vector& X, const Vector& W);
Element word_value(const ClassASystem& sys, const Word& w, const Vector& X, const Vector& W);

Vector eval(const ClassASystem& sys, const Vector& X, const Vector& W);
/// eval minus the linear part A X.
Vector nonlinear_part(const ClassASystem& sys, const Vector& X, const Vector& W);

struct FamilyExpansion {
  std::vector<Term> terms;
  int cutoff = 0;
  double tail_bound = 0.0;  // bound on the omitted orders for slots of norm <= radius
};

/// Words of length 2..L+1 for (scale / l!) ad_b^l(target), l = 1..L. Throws
/// InputError naming the required cutoff when a fixed cutoff misses the tolerance.
FamilyExpansion expand_family(const ClassASystem& sys, const GeneratedFamily& fam, double radius);

struct Trajectory {
  int n = 0;
  int d = 0;
  std::vector<Vector> states;
  std::vector<Vector> inputs;
  std::vector<double> norms;
  std::vector<std::vector<double>> qnorms;  // [k][level]
  bool diverged = false;
  long first_bad = -1;

  double slot_norm(std::size_t k, int j) const { return states[k].segment(static_cast<Eigen::Index>(j) * d, d).norm(); }
};

Trajectory simulate(const ClassASystem& sys, const Vector& X0, const ExoSignal& w, long k_max,
                    double divergence_threshold = 1e100);

// ------------------------------------------------------------------ checks

struct EquilibriumReport {
  bool structural_ok = true;
  std::vector<std::string> structural_issues;
  int starts = 0;
  std::vector<Vector> violations;  // nonzero fixed points found
  bool linear_certificate = false;
  std::string linear_argument;
  bool passed() const { return structural_ok && violations.empty(); }
};

/// Structural check that every word and family reads a state letter, plus a
/// multi-start search for nonzero X = f(X, W) over sampled inputs. Falsifies only.
EquilibriumReport check_equilibrium_uniqueness(const ClassASystem& sys, const ExoSignal& w,
                                               double search_radius = 10.0, int starts = 100,
                                               std::uint64_t seed = 11);

struct InvarianceReport {
  std::vector<double> level_residuals;  // A on (chain[i])^n
  double letter_map_residual = 0.0;     // linear letter maps on chain[i]
  double nonlinear_residual = 0.0;      // f((chain[i])^n, W) outside (chain[i])^n
  bool passed(double tol = 1e-10) const;
};

InvarianceReport check_invariance(const ClassASystem& sys, int samples = 100, std::uint64_t seed = 13);

struct JacobianReport {
  std::vector<double> steps;
  std::vector<double> coord_error_X;   // ||J_X - A|| (coordinate central differences)
  std::vector<double> coord_error_W;   // ||J_W||
  std::vector<double> direction_error; // random joint directions
  double observed_order = 0.0;
  bool exact = false;  // every error at roundoff level
  bool passed(double min_order = 1.9) const;
};

JacobianReport jacobian_check(const ClassASystem& sys,
                              const std::vector<double>& steps = {1e-2, 1e-3, 1e-4},
                              std::uint64_t seed = 17);

/// Quotient algebra g / V with brackets P [iota a, iota b].
LieAlgebra quotient_algebra(const LieAlgebra& a, const QuotientContext& ctx);

struct QuotientSystem {
  int level = 0;
  QuotientContext ctx;
  ClassASystem system;
};

/// Induced dynamics modulo chain[level]. Throws InvarianceViolation when A or a
/// letter map fails to preserve the ideal, InputError for a zero-dimensional quotient.
QuotientSystem quotient_system(const ClassASystem& sys, int level);

/// Max over samples of ||(I (x) P) f(X, W) - f_bar((I (x) P) X, (I (x) P) W)||.
double commuting_square_residual(const ClassASystem& sys, const QuotientSystem& q, int samples = 100,
                                 double radius = 1.0, std::uint64_t seed = 19);

struct MajorantReport {
  double value = 0.0;
  bool finite = true;
  double critical_radius = INFINITY;
  std::vector<double> per_length;  // mu^{l-1} sum ||c|| radius^l for stored words, index l
};

/// sum_w mu^{|w|-1} ||c_w||_1 prod ||K|| radius^{|w|} over the stored words, plus the
/// closed form |scale| radius (e^{mu ||b||_1 radius} - 1) per family.
MajorantReport class_a_majorant(const ClassASystem& sys, double radius);

/// Coefficient norm of a term, ||c||_1 times the spectral norms of its letter maps.
double term_weight(const Term& t);

}  // namespace liestab
