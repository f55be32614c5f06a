#include "liestab/algebra.hpp"
#include "liestab/errors.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace liestab;

namespace {

Matrix unit(int n, int i, int j) {
  Matrix m = Matrix::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

}  // namespace

TEST(Catalog, JacobiHoldsOnRandomTriples) {
  std::mt19937_64 rng(5);
  for (const auto& a : catalog::all()) {
    for (int t = 0; t < 200; ++t) {
      const Element x = random_vector(a.dim(), rng), y = random_vector(a.dim(), rng), z = random_vector(a.dim(), rng);
      EXPECT_LT(a.jacobi_residual(x, y, z), 1e-12) << a.name();
    }
  }
}

TEST(Catalog, BracketIsAntisymmetricAndBilinear) {
  std::mt19937_64 rng(6);
  for (const auto& a : catalog::all()) {
    const Element x = random_vector(a.dim(), rng), y = random_vector(a.dim(), rng), z = random_vector(a.dim(), rng);
    EXPECT_LT((a.bracket(x, y) + a.bracket(y, x)).norm(), 1e-14);
    EXPECT_LT((a.bracket(2.0 * x + z, y) - 2.0 * a.bracket(x, y) - a.bracket(z, y)).norm(), 1e-13);
  }
}

TEST(Catalog, MatrixRepsMatchCommutators) {
  std::mt19937_64 rng(7);
  for (const auto& a : catalog::all()) {
    if (!a.has_matrix_rep()) continue;
    const Element x = random_vector(a.dim(), rng), y = random_vector(a.dim(), rng);
    const Matrix X = a.to_matrix(x), Y = a.to_matrix(y);
    EXPECT_LT((a.to_matrix(a.bracket(x, y)) - (X * Y - Y * X)).norm(), 1e-13) << a.name();
    EXPECT_LT((a.from_matrix(X) - x).norm(), 1e-13);
  }
}

TEST(Catalog, HeisenbergBracketSign) {
  const LieAlgebra h = catalog::heisenberg();
  EXPECT_DOUBLE_EQ(h.c(0, 1, 2), -1.0);
  EXPECT_DOUBLE_EQ(h.c(1, 0, 2), 1.0);
  EXPECT_DOUBLE_EQ(h.c(0, 2, 2), 0.0);
}

TEST(Catalog, UpperTriangularBrackets) {
  // Nonzero brackets as listed for the 6-dimensional upper-triangular algebra.
  const LieAlgebra g = catalog::upper_triangular();
  EXPECT_DOUBLE_EQ(g.c(0, 3, 3), 1.0);
  EXPECT_DOUBLE_EQ(g.c(0, 5, 5), 1.0);
  EXPECT_DOUBLE_EQ(g.c(1, 3, 3), -1.0);
  EXPECT_DOUBLE_EQ(g.c(1, 4, 4), 1.0);
  EXPECT_DOUBLE_EQ(g.c(2, 4, 4), -1.0);
  EXPECT_DOUBLE_EQ(g.c(2, 5, 5), -1.0);
  EXPECT_DOUBLE_EQ(g.c(3, 4, 5), 1.0);
  int nonzero = 0;
  for (double v : g.structure_constants()) nonzero += v != 0.0;
  EXPECT_EQ(nonzero, 14);  // seven brackets, each with its antisymmetric partner
}

TEST(Catalog, Sl2Relations) {
  const LieAlgebra s = catalog::sl2();
  const Element e = Vector::Unit(3, 0), f = Vector::Unit(3, 1), h = Vector::Unit(3, 2);
  EXPECT_LT((s.bracket(e, f) - h).norm(), 1e-15);
  EXPECT_LT((s.bracket(h, e) - 2 * e).norm(), 1e-15);
  EXPECT_LT((s.bracket(h, f) + 2 * f).norm(), 1e-15);
}

TEST(Catalog, ByNameParsesAbelian) {
  EXPECT_EQ(catalog::by_name("abelian-4").dim(), 4);
  EXPECT_THROW(catalog::by_name("abelian-0"), InputError);
  EXPECT_THROW(catalog::by_name("e8"), InputError);
}

TEST(LieAlgebraCtor, RejectsNonAntisymmetric) {
  std::vector<double> c(8, 0.0);
  c[(0 * 2 + 1) * 2 + 0] = 1.0;  // [e1, e2] = e1 without [e2, e1] = -e1
  EXPECT_THROW(LieAlgebra("bad", 2, c), InputError);
}

TEST(LieAlgebraCtor, RejectsJacobiFailure) {
  // [e1,e2] = e3, [e2,e3] = e1, [e3,e1] = e1 breaks Jacobi.
  std::vector<double> c(27, 0.0);
  auto set = [&](int i, int j, int k, double v) {
    c[(i * 3 + j) * 3 + k] = v;
    c[(j * 3 + i) * 3 + k] = -v;
  };
  set(0, 1, 2, 1.0);
  set(1, 2, 0, 1.0);
  set(2, 0, 0, 1.0);
  EXPECT_THROW(LieAlgebra("bad", 3, c), InputError);
}

TEST(LieAlgebraCtor, MatrixBasisMustClose) {
  // E12 and E21 do not close: their commutator is diagonal.
  EXPECT_THROW(LieAlgebra::from_matrix_basis("open", {unit(2, 0, 1), unit(2, 1, 0)}), InputError);
}

TEST(Series, HeisenbergIsNilpotentOfIndexTwo) {
  const LieAlgebra h = catalog::heisenberg();
  const IdealChain lcs = lower_central_series(h, Subspace::full(3));
  ASSERT_TRUE(lcs.terminated);
  ASSERT_EQ(lcs.size(), 3u);
  EXPECT_EQ(lcs[1].dim(), 1);
  EXPECT_TRUE(lcs[1].same_as(Subspace::coordinate(3, {2})));
  const NilpotencyResult r = is_nilpotent(h);
  EXPECT_TRUE(r.nilpotent);
  EXPECT_EQ(r.nilindex, 2);
}

TEST(Series, UpperTriangularDerivedAlgebra) {
  const LieAlgebra g = catalog::upper_triangular();
  const Subspace h = derived_algebra(g);
  EXPECT_TRUE(h.same_as(Subspace::coordinate(6, {3, 4, 5})));
  const IdealChain lcs = lower_central_series(g, h);
  ASSERT_TRUE(lcs.terminated);
  ASSERT_EQ(lcs.size(), 3u);
  EXPECT_TRUE(lcs[1].same_as(Subspace::coordinate(6, {5})));
  EXPECT_FALSE(is_nilpotent(g).nilpotent);
  const SolvabilityResult s = is_solvable(g);
  EXPECT_TRUE(s.solvable);
  EXPECT_TRUE(s.nilpotent_derived_algebra);
  EXPECT_EQ(s.derived_length, 2);  // g > h > span{t6} > 0
}

TEST(Series, SolvableIffDerivedAlgebraNilpotent) {
  for (const auto& a : catalog::all()) {
    const bool solvable = derived_series(a).terminated;
    const bool nil_derived = lower_central_series(a, derived_algebra(a)).terminated;
    EXPECT_EQ(solvable, nil_derived) << a.name();
    EXPECT_NO_THROW(is_solvable(a));
  }
  EXPECT_FALSE(is_solvable(catalog::sl2()).solvable);
  EXPECT_TRUE(is_solvable(catalog::se2()).solvable);
}

TEST(Series, StrongCentrality) {
  for (const auto& a : catalog::all()) {
    const IdealChain lcs = lower_central_series(a, Subspace::full(a.dim()));
    EXPECT_LT(strong_centrality_residual(a, lcs), 1e-10) << a.name();
  }
}

TEST(Series, StrictlyUpperTriangularFourByFour) {
  std::vector<Matrix> basis;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) basis.push_back(unit(4, i, j));
  const LieAlgebra n4 = LieAlgebra::from_matrix_basis("n4", basis);
  const NilpotencyResult r = is_nilpotent(n4);
  EXPECT_TRUE(r.nilpotent);
  EXPECT_EQ(r.nilindex, 3);
  const IdealChain lcs = lower_central_series(n4, Subspace::full(6));
  EXPECT_EQ(lcs[1].dim(), 3);
  EXPECT_EQ(lcs[2].dim(), 1);
}

TEST(Mu, FrobeniusRepGivesSqrtTwoForOrthonormalReps) {
  EXPECT_NEAR(mu_constant(catalog::heisenberg(), MuKind::FrobeniusRep), std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(mu_constant(catalog::upper_triangular(), MuKind::FrobeniusRep), std::sqrt(2.0), 1e-12);
  EXPECT_DOUBLE_EQ(mu_constant(catalog::heisenberg(), MuKind::Generic), 2.0);
}

TEST(Mu, BoundsRandomBrackets) {
  std::mt19937_64 rng(8);
  for (const auto& a : catalog::all()) {
    const double mu = default_mu(a);
    for (int t = 0; t < 500; ++t) {
      const Element x = random_vector(a.dim(), rng), y = random_vector(a.dim(), rng);
      EXPECT_LE(a.bracket(x, y).norm(), mu * x.norm() * y.norm() * (1 + 1e-12)) << a.name();
    }
  }
}

TEST(Mu, EstimateIsNearTheTrueMaximum) {
  // For the Heisenberg coordinates the sup of |x1 y2 - x2 y1| over unit vectors is 1.
  const double est = mu_constant(catalog::heisenberg(), MuKind::Estimated);
  EXPECT_GE(est, 1.0);
  EXPECT_LE(est, 1.05 + 1e-9);
}

TEST(SubspaceOps, SpanDropsDependentColumns) {
  Matrix g(3, 3);
  g << 1, 2, 0, 0, 0, 0, 1, 2, 0;
  const Subspace s = Subspace::span(g);
  EXPECT_EQ(s.dim(), 1);
  EXPECT_TRUE(s.contains(Vector((Vector(3) << 1, 0, 1).finished())));
  EXPECT_FALSE(s.contains(Vector::Unit(3, 1)));
  EXPECT_EQ(Subspace::zero(4).dim(), 0);
  EXPECT_TRUE(Subspace::full(3).contains(s));
}
