#include "liestab/builtins.hpp"
#include "liestab/errors.hpp"
#include "liestab/stability.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace liestab;

namespace {

std::vector<Vector> random_starts(int size, int count, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vector> out;
  for (int i = 0; i < count; ++i) out.push_back(random_in_ball(size, radius, rng));
  return out;
}

}  // namespace

TEST(NilpotentCertificate, ErrorDynamicsNumbers) {
  const Scenario s = builtin("example-4.1");
  const NilpotentCertificate c = certify_nilpotent(s.system, s.signal, s.M);
  const double rho = 1.0 / (2.0 * std::sqrt(2.0));
  ASSERT_TRUE(c.issued) << c.reason;
  EXPECT_EQ(c.p, 2);
  EXPECT_DOUBLE_EQ(c.s, 2.0);
  EXPECT_NEAR(c.threshold, 0.5, 1e-15);
  EXPECT_NEAR(c.rho_A, rho, 1e-12);
  EXPECT_NEAR(c.epsilon, (0.5 - rho) / 2, 1e-12);
  EXPECT_NEAR(c.Lambda, rho + c.epsilon, 1e-12);
  EXPECT_NEAR(c.lambda(), 2.0 * c.Lambda, 1e-12);
  EXPECT_LT(c.lambda(), 1.0);
  EXPECT_TRUE(c.ladder_consistent);
  EXPECT_TRUE(c.max_at_top);
  EXPECT_GT(c.alpha(), 1.0);
  EXPECT_TRUE(std::isfinite(c.alpha()));
  // Level spectra: the quotient modulo [g, g] carries the 2x2 block, the top level everything.
  EXPECT_NEAR(c.rho_levels[1], rho, 1e-12);
  EXPECT_NEAR(c.rho_levels[2], rho, 1e-12);
  for (int i = 1; i <= c.p; ++i) {
    EXPECT_NEAR(c.lambda_levels[static_cast<std::size_t>(i)], c.lambda_closed[static_cast<std::size_t>(i)], 1e-14);
    EXPECT_GT(c.lambda_levels[static_cast<std::size_t>(i)], c.Lambda_levels[static_cast<std::size_t>(i)]);
  }
}

TEST(NilpotentCertificate, BoundHoldsOnSimulatedRuns) {
  const Scenario s = builtin("example-4.1");
  const NilpotentCertificate c = certify_nilpotent(s.system, s.signal, s.M);
  ASSERT_TRUE(c.issued);
  for (const Vector& x0 : random_starts(3, 50, s.M, 31)) {
    const Trajectory tr = simulate(s.system, x0, s.signal, 50);
    for (std::size_t k = 0; k < tr.norms.size(); ++k)
      EXPECT_LE(tr.norms[k], c.alpha() * std::pow(c.lambda(), static_cast<double>(k)) * tr.norms[0] * (1 + 1e-9));
  }
}

TEST(NilpotentCertificate, RejectsRhoAboveThreshold) {
  Scenario s = builtin("example-4.1");
  s.system.A *= 0.6 / spectral_radius(s.system.A);
  const NilpotentCertificate c = certify_nilpotent(s.system, s.signal, s.M);
  EXPECT_FALSE(c.issued);
  EXPECT_FALSE(c.reason.empty());
  EXPECT_NEAR(c.margin(), -0.1, 1e-12);
}

TEST(NilpotentCertificate, ExplicitEpsilonOutsideGapIsRejected) {
  const Scenario s = builtin("example-4.1");
  const NilpotentCertificate c = certify_nilpotent(s.system, s.signal, s.M, 0.2);
  EXPECT_FALSE(c.issued);
}

TEST(NilpotentCertificate, SolvableAlgebraThrows) {
  const Scenario s = builtin("example-6.1");
  EXPECT_THROW(certify_nilpotent(s.system, s.signal, s.M), HypothesisError);
}

TEST(NilpotentCertificate, ZeroSignalUsesUnitThreshold) {
  const Scenario s = builtin("example-4.1");
  const NilpotentCertificate c = certify_nilpotent(s.system, ExoSignal::zero(1, 3), s.M);
  EXPECT_TRUE(c.issued);
  EXPECT_DOUBLE_EQ(c.threshold, 1.0);
}

TEST(ClaimOne, MeasuredForcingWithinGammaEnvelope) {
  const Scenario s = builtin("example-4.1");
  const NilpotentCertificate c = certify_nilpotent(s.system, s.signal, s.M);
  ASSERT_TRUE(c.issued);
  const Trajectory tr = simulate(s.system, s.X0, s.signal, 50);
  const std::vector<double> u = measured_forcing(s.system, tr, 2);
  const std::vector<double> formula = word_formula_forcing(s.system, tr, 2);
  ASSERT_EQ(u.size(), formula.size());
  const double x0 = tr.qnorms[0][2];
  for (std::size_t k = 0; k < u.size(); ++k) {
    EXPECT_LE(u[k], c.gamma_levels[2] * std::pow(c.lambda_levels[2], static_cast<double>(k)) * x0 * (1 + 1e-6));
    EXPECT_NEAR(u[k], formula[k], 1e-9 * std::max(1.0, u[k]));
  }
}

TEST(ClaimOne, GammaIsZeroOnFirstLevelAndMonotoneInM) {
  const std::vector<double> coeff = {0.0, 0.0, 1.5, 0.5};
  EXPECT_EQ(claim1_gamma(coeff, 1.4, 1.0, 1, 1, 2.0, 5.0, 3.0, 1), 0.0);
  const double g1 = claim1_gamma(coeff, 1.4, 1.0, 1, 1, 2.0, 5.0, 3.0, 2);
  const double g2 = claim1_gamma(coeff, 1.4, 1.0, 1, 1, 2.0, 10.0, 3.0, 2);
  EXPECT_GT(g1, 0.0);
  EXPECT_GE(g2, g1);
}

TEST(ClaimOne, WordWeightsGroupEqualLetters) {
  const Scenario s = builtin("example-4.1");
  const std::vector<double> w = max_word_weight_by_length(s.system, s.M);
  ASSERT_GE(w.size(), 3u);
  EXPECT_EQ(w[1], 0.0);
  EXPECT_GT(w[2], 0.0);
}

TEST(Deadbeat, HeisenbergHorizon) {
  const DeadbeatCertificate c = deadbeat_horizon(build_heisenberg_deadbeat());
  EXPECT_EQ(c.p, 2);
  EXPECT_EQ(c.horizon, 5);  // (p + 1) dim g - (3 + 1)
  EXPECT_EQ(c.level_horizons, (std::vector<int>{0, 2, 5}));
  EXPECT_EQ(c.ideal_dims, (std::vector<int>{3, 1}));
  EXPECT_TRUE(c.nilpotent_power_check);
}

TEST(Deadbeat, UpperTriangularHorizon) {
  const DeadbeatCertificate c = deadbeat_horizon(build_upper_triangular_deadbeat());
  EXPECT_EQ(c.horizon, 14);
  EXPECT_EQ(c.level_horizons, (std::vector<int>{3, 8, 14}));
}

TEST(Deadbeat, AbelianHorizonIsDimension) {
  Matrix A = Matrix::Zero(3, 3);
  A(1, 0) = 1.0;
  A(2, 1) = 1.0;
  const ClassASystem sys = make_system("shift", LieAlgebra::abelian(3), 1, 1, A, {}, {}, Subspace::full(3));
  const DeadbeatCertificate c = deadbeat_horizon(sys);
  EXPECT_EQ(c.horizon, 3);
  const Trajectory tr = simulate(sys, Vector::Ones(3), ExoSignal::zero(1, 3), 5);
  EXPECT_GT(tr.norms[2], 0.0);
  EXPECT_EQ(tr.norms[3], 0.0);
}

TEST(Deadbeat, RejectsNonNilpotentA) {
  EXPECT_THROW(deadbeat_horizon(build_error_dynamics_example()), HypothesisError);
}

TEST(Deadbeat, SimulationReachesZeroByEveryLevelHorizon) {
  for (const ClassASystem& sys : {build_heisenberg_deadbeat(), build_upper_triangular_deadbeat()}) {
    const DeadbeatCertificate c = deadbeat_horizon(sys);
    const DeadbeatRunReport r = verify_deadbeat(sys, c, 100, 5.0, 2.0, 77);
    EXPECT_TRUE(r.passed()) << sys.name;
    EXPECT_EQ(r.runs, 100);
    EXPECT_LE(r.first_zero_max, c.horizon);
    for (double v : r.max_after_level) EXPECT_LT(v, 1e-9);
  }
}

TEST(Deadbeat, RandomIdealSignalStaysInIdeal) {
  const ClassASystem sys = build_upper_triangular_deadbeat();
  const ExoSignal w = random_ideal_signal(sys, 2.0, 5);
  EXPECT_TRUE(w.ideal_valued());
  EXPECT_LT(ideal_residual(w, sys.quotients.front(), 100), 1e-12);
  EXPECT_LE(envelope_ratio(w, 100), 1.0 + 1e-12);
}

TEST(Semiglobal, AlphaIsMonotoneInM) {
  const ClassASystem sys = build_heisenberg_deadbeat();
  const DeadbeatCertificate c = deadbeat_horizon(sys);
  double prev = 0.0;
  for (double M : {0.5, 2.0, 8.0}) {
    const EnvelopeFit f = semiglobal_from_deadbeat(sys, c, 1.0, M, 0.5, 23, 100);
    EXPECT_GE(f.alpha, prev) << "M = " << M;
    EXPECT_EQ(f.fresh_violations, 0) << "M = " << M;
    EXPECT_EQ(f.fresh_runs, 100);
    EXPECT_LE(f.fresh_worst_ratio, 1.0);
    prev = f.alpha;
  }
}

TEST(FitEnvelope, GeometricSequence) {
  std::vector<std::vector<double>> norms(3);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 40; ++k) norms[static_cast<std::size_t>(j)].push_back((j + 1) * std::pow(0.7, k));
  const EnvelopeFit f = fit_envelope(norms);
  EXPECT_NEAR(f.lambda, 0.7, 1e-10);
  EXPECT_NEAR(f.alpha, 1.0, 1e-9);
  EXPECT_TRUE(f.certified);
}

TEST(FitEnvelope, AlphaCoversEverySample) {
  std::vector<std::vector<double>> norms(1);
  for (int k = 0; k < 30; ++k) norms[0].push_back(std::pow(0.6, k) * (1.0 + 0.5 * std::sin(k)));
  const EnvelopeFit f = fit_envelope(norms);
  for (int k = 0; k < 30; ++k)
    EXPECT_LE(norms[0][static_cast<std::size_t>(k)], f.alpha * std::pow(f.lambda, k) * norms[0][0] * (1 + 1e-12));
}

TEST(FitEnvelope, AllZeroAfterStart) {
  const EnvelopeFit f = fit_envelope(std::vector<std::vector<double>>{{1.0, 0.0, 0.0, 0.0}});
  EXPECT_EQ(f.lambda, 0.0);
  EXPECT_EQ(f.alpha, 1.0);
}

TEST(FitEnvelope, GrowingSequenceIsNotCertified) {
  const EnvelopeFit f = fit_envelope(std::vector<std::vector<double>>{{1.0, 1.5, 2.25, 3.375}});
  EXPECT_FALSE(f.certified);
  EXPECT_NEAR(f.lambda, 1.5, 1e-12);
}

TEST(RadiusEstimate, ExplicitSeries) {
  const ClassASystem sys = build_error_dynamics_example();
  std::vector<double> s(9, 0.0);
  for (int l = 1; l <= 8; ++l) s[static_cast<std::size_t>(l)] = std::pow(3.0, l);
  const RadiusEstimate r = radius_estimate(sys, s);
  EXPECT_NEAR(r.limsup, 3.0, 1e-12);
  EXPECT_NEAR(r.rho1, std::min(1.0, 1.0 / (3.0 * sys.mu)), 1e-12);
  EXPECT_NEAR(r.radius, r.rho2 * r.rho2, 1e-15);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(RadiusEstimate, ShortSeriesWarns) {
  const RadiusEstimate r = radius_estimate(build_error_dynamics_example(), {0.0, 0.0, 0.25});
  EXPECT_FALSE(r.warnings.empty());
  EXPECT_NEAR(r.limsup, 0.5, 1e-12);
}

TEST(RadiusEstimate, FiniteWordListHasUnitRho1) {
  const RadiusEstimate r = radius_estimate(build_error_dynamics_example());
  EXPECT_EQ(r.limsup, 0.0);
  EXPECT_EQ(r.rho1, 1.0);
}

TEST(SolvableCertificate, ExampleIsIssuedConditionally) {
  const Scenario s = builtin("example-6.1");
  std::vector<Vector> starts = random_starts(12, 9, 3.0, 3);
  starts.push_back(s.X0);
  const SolvableReport r = certify_solvable(s.system, s.signal, starts, 200);
  EXPECT_TRUE(r.issued) << r.reason;
  EXPECT_TRUE(r.conditional);
  EXPECT_FALSE(r.caveat.empty());
  EXPECT_NEAR(r.rho_A, 0.75, 1e-12);
  EXPECT_EQ(r.p, 2);
  EXPECT_TRUE(r.simulated_decay);
  EXPECT_TRUE(r.input_converges_to_ideal);
}

TEST(SolvableCertificate, EigenvalueAboveOneIsRejected) {
  Scenario s = builtin("example-6.1");
  s.system.A *= 1.01 / 0.75;
  const SolvableReport r = certify_solvable(s.system, s.signal, {s.X0}, 50);
  EXPECT_FALSE(r.issued);
  EXPECT_FALSE(r.schur);
}

TEST(SolvableCertificate, NonSolvableAlgebraThrows) {
  const ClassASystem sys = make_system("sl2", catalog::sl2(), 1, 1, 0.5 * Matrix::Identity(3, 3), {}, {},
                                       Subspace::full(3));
  EXPECT_THROW(certify_solvable(sys, ExoSignal::zero(1, 3), {Vector::Ones(3)}), HypothesisError);
}

TEST(SolvableCertificate, AgreesWithNilpotentCertifier) {
  const ClassASystem sys = build_error_dynamics_example();
  const SolvableReport r = certify_solvable(sys, ExoSignal::zero(1, 3), random_starts(3, 5, 4.0, 9), 100);
  ASSERT_TRUE(r.nilpotent_verdict.has_value());
  EXPECT_EQ(*r.nilpotent_verdict, r.issued);
  EXPECT_TRUE(r.issued);
}

TEST(BasinProbe, ShippedSignalDecays) {
  const Scenario s = builtin("example-6.1");
  const double scale = basin_probe(s.system, s.signal, {s.X0}, 200, 1e-4, 4.0, 6);
  EXPECT_GE(scale, 1.0);
}
