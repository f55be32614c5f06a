#include "liestab/builtins.hpp"
#include "liestab/dynamics.hpp"
#include "liestab/errors.hpp"

#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include <random>

using namespace liestab;

namespace {

Term make_term(std::vector<Letter> letters, Vector coeff) {
  Term t;
  t.word.letters = std::move(letters);
  t.coeff = std::move(coeff);
  return t;
}

Vector v3(double a, double b, double c) { return (Vector(3) << a, b, c).finished(); }

// Independent evaluation of scale * (e^{ad_b} - I) target through the matrix exponential.
Element family_oracle(const ClassASystem& sys, const GeneratedFamily& f, const Vector& X, const Vector& W) {
  const int d = sys.d();
  Element b = Element::Zero(d);
  for (const auto& [slot, c] : f.base) {
    const Vector& src = slot.kind == SlotKind::State ? X : W;
    b += c * src.segment(slot.index * d, d);
  }
  const Vector& tsrc = f.target.kind == SlotKind::State ? X : W;
  const Element t = tsrc.segment(f.target.index * d, d);
  const Matrix E = sys.algebra.ad(b).exp();
  return f.scale * (E * t - t);
}

}  // namespace

TEST(ErrorDynamics, OracleStepMatchesHandComputation) {
  // e = 3h1 + 2h2 - h3, w = 1: A e = (1.25, -0.25, -0.01), 1/2 [K e, e] = -1.625 h3,
  // -3/2 [K e, Pi12 W] = -1.875 h3.
  const ClassASystem sys = build_error_dynamics_example();
  const Vector e = v3(3, 2, -1);
  const Vector W = v3(1, 2, 3);
  const Vector next = eval(sys, e, W);
  EXPECT_NEAR(next(0), 1.25, 1e-14);
  EXPECT_NEAR(next(1), -0.25, 1e-14);
  EXPECT_NEAR(next(2), -3.51, 1e-13);
  EXPECT_LT((error_dynamics_group_step(e, 1.0) - next).norm(), 1e-12);
}

TEST(ErrorDynamics, PrintedVariantDiffersByThreeHalvesEW) {
  const ClassASystem exact = build_error_dynamics_example(false);
  const ClassASystem printed = build_error_dynamics_example(true);
  const Vector e = v3(3, 2, -1), W = v3(1, 2, 3);
  EXPECT_NEAR(eval(printed, e, W)(2), 2.49, 1e-13);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    const Vector x = random_vector(3, rng), w = random_vector(3, rng);
    const Vector diff = eval(exact, x, w) - eval(printed, x, w);
    const Vector w12 = v3(w(0), w(1), 0);
    EXPECT_LT((diff - 1.5 * exact.algebra.bracket(x, w12)).norm(), 1e-13);
  }
}

TEST(ErrorDynamics, GroupPipelineAgreesOnRandomPoints) {
  const ClassASystem sys = build_error_dynamics_example();
  std::mt19937_64 rng(10);
  for (int t = 0; t < 200; ++t) {
    const Vector e = 5.0 * random_vector(3, rng);
    const double w = 2.0 * random_vector(1, rng)(0);
    const Vector next = eval(sys, e, v3(1, 2, 3) * w);
    EXPECT_LT((error_dynamics_group_step(e, w) - next).norm(), 1e-9 * std::max(1.0, next.norm()));
  }
}

TEST(Families, ExpansionMatchesClosedForm) {
  const ClassASystem sys = build_solvable_example();
  std::mt19937_64 rng(12);
  for (const auto& f : sys.families) {
    const FamilyExpansion ex = expand_family(sys, f, 0.2);
    EXPECT_LE(ex.tail_bound, f.tail_tolerance);
    EXPECT_GE(ex.cutoff, 1);
    for (int t = 0; t < 20; ++t) {
      const Vector X = 0.1 * random_vector(12, rng), W = 0.1 * random_vector(12, rng);
      Vector series = Vector::Zero(12);
      for (const auto& term : ex.terms) {
        const Element v = word_value(sys, term.word, X, W);
        for (int j = 0; j < sys.n; ++j) series.segment(j * 6, 6) += term.coeff(j) * v;
      }
      Vector closed = Vector::Zero(12);
      closed.segment(f.output * 6, 6) = family_oracle(sys, f, X, W);
      EXPECT_LT((series - closed).norm(), 1e-10);
    }
  }
}

TEST(Families, EvalUsesExactFamilyValue) {
  const ClassASystem sys = build_solvable_example();
  std::mt19937_64 rng(13);
  for (int t = 0; t < 20; ++t) {
    const Vector X = 3.0 * random_vector(12, rng), W = 3.0 * random_vector(12, rng);
    Vector expected = Vector::Zero(12);
    for (const auto& f : sys.families) expected.segment(f.output * 6, 6) += family_oracle(sys, f, X, W);
    EXPECT_LT((nonlinear_part(sys, X, W) - expected).norm(), 1e-9 * std::max(1.0, expected.norm()));
  }
}

TEST(Families, NilpotentExpansionTerminates) {
  ClassASystem sys = build_heisenberg_deadbeat();
  GeneratedFamily f;
  f.base = {{Slot::W(0), 1.0}};
  f.target = Slot::X(0);
  const FamilyExpansion ex = expand_family(sys, f, 100.0);
  EXPECT_EQ(ex.tail_bound, 0.0);
  EXPECT_LE(ex.cutoff, 2);
}

TEST(Families, FixedCutoffBelowToleranceIsRejected) {
  const ClassASystem sys = build_solvable_example();
  GeneratedFamily f = sys.families[0];
  f.cutoff = 2;
  f.tail_tolerance = 1e-14;
  EXPECT_THROW(expand_family(sys, f, 1.0), InputError);
}

TEST(Majorant, ClosedFormForFamilies) {
  const ClassASystem sys = build_solvable_example();
  const double r = 0.3, mu = sys.mu;
  const double expected = r * (2.5 * std::expm1(mu * r) + 0.25 * std::expm1(2 * mu * r));
  EXPECT_NEAR(class_a_majorant(sys, r).value, expected, 1e-14);
}

TEST(Majorant, BoundsTheNonlinearPart) {
  for (const ClassASystem& sys : {build_solvable_example(), build_error_dynamics_example(), build_heisenberg_deadbeat()}) {
    std::mt19937_64 rng(14);
    const int d = sys.d();
    for (double radius : {0.1, 1.0, 2.0}) {
      const double bound = class_a_majorant(sys, radius).value;
      for (int t = 0; t < 100; ++t) {
        Vector X(sys.state_size()), W(sys.input_size());
        for (int j = 0; j < sys.n; ++j) X.segment(j * d, d) = random_in_ball(d, radius, rng);
        for (int j = 0; j < sys.r; ++j) W.segment(j * d, d) = random_in_ball(d, radius, rng);
        EXPECT_LE(product_norm(nonlinear_part(sys, X, W), d), bound * (1 + 1e-12)) << sys.name;
      }
    }
  }
}

TEST(MakeSystem, RejectsNonIdealAndMissingDerivedAlgebra) {
  const LieAlgebra g = catalog::upper_triangular();
  const Matrix A = 0.5 * Matrix::Identity(6, 6);
  // span{t4} is not an ideal since [t4, t5] = t6.
  EXPECT_THROW(make_system("bad", g, 1, 1, A, {}, {}, Subspace::coordinate(6, {3})), InputError);
  // span{t6} is an ideal but does not contain [g, g].
  EXPECT_THROW(make_system("bad", g, 1, 1, A, {}, {}, Subspace::coordinate(6, {5})), InputError);
  EXPECT_THROW(make_system("bad", g, 1, 1, Matrix::Identity(5, 5), {}, {}, derived_algebra(g)), InputError);
}

TEST(Equilibrium, ExamplesPass) {
  for (const auto& name : {"example-4.1", "example-6.1", "heisenberg-deadbeat"}) {
    const Scenario s = builtin(name);
    const EquilibriumReport r = check_equilibrium_uniqueness(s.system, s.signal, 10.0, 40);
    EXPECT_TRUE(r.passed()) << name;
  }
}

TEST(Equilibrium, InputOnlyWordIsRejected) {
  const LieAlgebra h = catalog::heisenberg();
  std::vector<Term> terms = {make_term({Letter(Slot::W(0)), Letter(Slot::W(1))}, Vector::Ones(1))};
  const ClassASystem sys = make_system("input-word", h, 1, 2, 0.5 * Matrix::Identity(3, 3), terms, {},
                                       Subspace::full(3));
  const EquilibriumReport r = check_equilibrium_uniqueness(sys, ExoSignal::zero(2, 3), 1.0, 5);
  EXPECT_FALSE(r.structural_ok);
  EXPECT_FALSE(r.passed());
  ASSERT_FALSE(r.structural_issues.empty());
}

TEST(Equilibrium, InputOnlyFamilyIsRejected) {
  const LieAlgebra h = catalog::heisenberg();
  GeneratedFamily f;
  f.base = {{Slot::W(0), 1.0}};
  f.target = Slot::W(1);
  const ClassASystem sys = make_system("input-family", h, 1, 2, 0.5 * Matrix::Identity(3, 3), {}, {f},
                                       Subspace::full(3));
  EXPECT_FALSE(check_equilibrium_uniqueness(sys, ExoSignal::zero(2, 3), 1.0, 5).structural_ok);
}

TEST(Equilibrium, FindsPlantedFixedPoint) {
  // X+ = X on an abelian algebra: every X is a fixed point.
  const ClassASystem sys = make_system("identity", LieAlgebra::abelian(2), 1, 1, Matrix::Identity(2, 2), {}, {},
                                       Subspace::full(2));
  const EquilibriumReport r = check_equilibrium_uniqueness(sys, ExoSignal::zero(1, 2), 5.0, 10);
  EXPECT_FALSE(r.violations.empty());
  EXPECT_FALSE(r.passed());
}

TEST(Invariance, ExamplesPass) {
  for (const auto& name : builtin_names()) {
    const Scenario s = builtin(name);
    EXPECT_TRUE(check_invariance(s.system).passed(1e-10)) << name;
  }
}

TEST(Invariance, MixingMatrixFails) {
  const LieAlgebra g = catalog::upper_triangular();
  Matrix A = 0.5 * Matrix::Identity(6, 6);
  A(0, 3) = 1.0;  // t4 -> t1 leaves h
  const ClassASystem sys = make_system("mix", g, 1, 1, A, {}, {}, derived_algebra(g));
  const InvarianceReport r = check_invariance(sys);
  EXPECT_FALSE(r.passed(1e-10));
  EXPECT_GT(r.level_residuals.at(0), 0.1);
  EXPECT_THROW(quotient_system(sys, 0), InvarianceViolation);
}

TEST(Jacobian, MatchesLinearPartAtSecondOrder) {
  for (const auto& name : {"example-4.1", "example-6.1", "upper-triangular-deadbeat"}) {
    const JacobianReport r = jacobian_check(builtin(name).system);
    EXPECT_TRUE(r.passed()) << name;
    if (!r.exact) EXPECT_GE(r.observed_order, 1.9) << name;
    for (double e : r.coord_error_X) EXPECT_LT(e, 1e-6);
    for (double e : r.coord_error_W) EXPECT_LT(e, 1e-6);
  }
}

TEST(QuotientDynamics, CommutingSquareAtEveryLevel) {
  for (const auto& name : builtin_names()) {
    const ClassASystem sys = builtin(name).system;
    int checked = 0;
    for (int level = 0; level < sys.levels(); ++level) {
      if (sys.quotients[static_cast<std::size_t>(level)].degenerate()) {
        EXPECT_THROW(quotient_system(sys, level), InputError);
        continue;
      }
      const QuotientSystem q = quotient_system(sys, level);
      EXPECT_LT(commuting_square_residual(sys, q), 1e-9) << name << " level " << level;
      // The induced linear map satisfies A_bar P = P A on the stacked space.
      const Matrix P = q.ctx.stacked_P(sys.n);
      EXPECT_LT((q.system.A * P - P * sys.A).norm(), 1e-10);
      ++checked;
    }
    EXPECT_GE(checked, 1) << name;
  }
}

TEST(QuotientDynamics, QuotientAlgebraOfUpperTriangularModDerivedIsAbelian) {
  const LieAlgebra g = catalog::upper_triangular();
  const LieAlgebra q = quotient_algebra(g, make_quotient(g, derived_algebra(g)));
  EXPECT_EQ(q.dim(), 3);
  for (double c : q.structure_constants()) EXPECT_LT(std::abs(c), 1e-14);
}

TEST(Simulation, ExampleDecaysAndRecordsLevels) {
  const Scenario s = builtin("example-4.1");
  const Trajectory tr = simulate(s.system, s.X0, s.signal, s.horizon);
  ASSERT_EQ(tr.states.size(), 51u);
  EXPECT_FALSE(tr.diverged);
  EXPECT_LT(tr.norms.back(), 1e-6);
  EXPECT_NEAR(tr.norms[0], std::sqrt(14.0), 1e-15);  // one slot: the sum norm is Euclidean
}

TEST(Simulation, DetectsDivergence) {
  const ClassASystem sys = make_system("grow", LieAlgebra::abelian(2), 1, 1, 2.0 * Matrix::Identity(2, 2), {}, {},
                                       Subspace::full(2));
  const Trajectory tr = simulate(sys, Vector::Ones(2), ExoSignal::zero(1, 2), 100, 1e3);
  EXPECT_TRUE(tr.diverged);
  EXPECT_EQ(tr.first_bad, 10);
}

TEST(Simulation, RejectsMismatchedInputs) {
  const Scenario s = builtin("example-4.1");
  EXPECT_THROW(simulate(s.system, Vector::Zero(2), s.signal, 5), InputError);
  EXPECT_THROW(simulate(s.system, s.X0, ExoSignal::zero(2, 3), 5), InputError);
}
