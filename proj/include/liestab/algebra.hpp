#pragma once

#include "liestab/linalg.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace liestab {

/// Finite-dimensional real Lie algebra given by dense structure constants
/// C[i][j][k], meaning [e_i, e_j] = sum_k C[i][j][k] e_k.
class LieAlgebra {
 public:
  LieAlgebra() = default;

  /// `constants` is indexed (i * d + j) * d + k. Validates antisymmetry,
  /// the Jacobi identity on basis triples and, when given, the matrix rep.
  LieAlgebra(std::string name, int dim, std::vector<double> constants,
             std::vector<std::string> labels = {},
             std::vector<Matrix> matrix_rep = {});

  /// Structure constants read off a basis of matrices under the commutator.
  /// The basis must be linearly independent and closed under commutators.
  static LieAlgebra from_matrix_basis(std::string name, std::vector<Matrix> basis,
                                      std::vector<std::string> labels = {});

  /// Algebra with all brackets zero.
  static LieAlgebra abelian(int dim);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  double c(int i, int j, int k) const {
    return constants_[(static_cast<std::size_t>(i) * dim_ + j) * dim_ + k];
  }
  const std::vector<double>& structure_constants() const { return constants_; }
  const std::vector<std::string>& labels() const { return labels_; }
  bool has_matrix_rep() const { return !matrix_rep_.empty(); }
  const std::vector<Matrix>& matrix_rep() const { return matrix_rep_; }

  /// ad_{e_i} as a d x d matrix: column j holds [e_i, e_j].
  const Matrix& ad_basis(int i) const { return ad_basis_[static_cast<std::size_t>(i)]; }
  Matrix ad(const Element& x) const;
  Element bracket(const Element& x, const Element& y) const;

  /// Largest coordinate of [[x,y],z] + [[y,z],x] + [[z,x],y].
  double jacobi_residual(const Element& x, const Element& y, const Element& z) const;

  /// Matrix realisation sum_i x_i R_i. Requires a matrix rep.
  Matrix to_matrix(const Element& x) const;
  /// Least-squares coordinates of a matrix in the span of the rep.
  Element from_matrix(const Matrix& m) const;

  int index_of(const std::string& label) const;  // -1 when absent

 private:
  void build_ad();
  void validate() const;

  std::string name_;
  int dim_ = 0;
  std::vector<double> constants_;
  std::vector<std::string> labels_;
  std::vector<Matrix> matrix_rep_;
  std::vector<Matrix> ad_basis_;
  Matrix rep_coords_;  // pseudo-inverse used by from_matrix
};

/// Subspace of R^d held as an orthonormal basis (d x m).
class Subspace {
 public:
  Subspace() = default;
  /// Span of the columns of `generators`, rank decided with kRankTolerance.
  static Subspace span(const Matrix& generators, double scale = 0.0);
  static Subspace zero(int ambient);
  static Subspace full(int ambient);
  /// Span of the listed coordinate axes.
  static Subspace coordinate(int ambient, const std::vector<int>& axes);

  int ambient() const { return static_cast<int>(basis_.rows()); }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Matrix& basis() const { return basis_; }
  Matrix projector() const { return basis_ * basis_.transpose(); }

  /// ||(I - Pi) M|| for the columns of M; the containment residual.
  double residual(const Matrix& m) const;
  bool contains(const Vector& v, double tol = 1e-10) const;
  bool contains(const Subspace& other, double tol = 1e-10) const;
  bool same_as(const Subspace& other, double tol = 1e-10) const;

 private:
  Matrix basis_;
};

enum class ChainKind { DerivedSeries, LowerCentralSeries };

/// Weakly decreasing chain of subspaces. `terminated` is true when the last
/// entry is the zero subspace, false when the chain stabilised above zero.
struct IdealChain {
  ChainKind kind = ChainKind::LowerCentralSeries;
  std::vector<Subspace> ideals;
  bool terminated = false;

  std::size_t size() const { return ideals.size(); }
  const Subspace& operator[](std::size_t i) const { return ideals[i]; }
};

Element bracket(const LieAlgebra& a, const Element& x, const Element& y);
Subspace subspace_bracket(const LieAlgebra& a, const Subspace& s1, const Subspace& s2);

/// g_0 = g, g_{i+1} = [g_i, g_i].
IdealChain derived_series(const LieAlgebra& a);
/// h^(1) = start, h^(i+1) = [h^(i), h], with brackets taken inside h.
IdealChain lower_central_series(const LieAlgebra& a, const Subspace& start);
Subspace derived_algebra(const LieAlgebra& a);

struct SolvabilityResult {
  bool solvable = false;
  int derived_length = -1;  // smallest v with g_{v+1} = 0, -1 when not solvable
  bool nilpotent_derived_algebra = false;
};
struct NilpotencyResult {
  bool nilpotent = false;
  int nilindex = -1;  // number of nonzero terms, -1 when undefined
};

/// Also evaluates nilpotency of [g, g] and throws std::logic_error if the two
/// classifications disagree.
SolvabilityResult is_solvable(const LieAlgebra& a);
NilpotencyResult is_nilpotent(const LieAlgebra& a, const Subspace& start);
NilpotencyResult is_nilpotent(const LieAlgebra& a);

/// Max residual of [h^(i), h^(j)] inside h^(i+j) over the whole chain.
double strong_centrality_residual(const LieAlgebra& a, const IdealChain& lcs);

enum class MuKind { FrobeniusRep, Generic, Estimated };

/// Constant with ||[x, y]|| <= mu ||x|| ||y||. Estimated: best of alternating
/// maximisations from seeded starts, inflated by 5%.
double mu_constant(const LieAlgebra& a, MuKind kind, std::uint64_t seed = 7);
/// FrobeniusRep when a matrix rep is present, otherwise Estimated.
double default_mu(const LieAlgebra& a);

namespace catalog {
/// [h1,h2] = -h3, realised by h1 = E12, h2 = E23, h3 = -E13.
LieAlgebra heisenberg();
/// 3x3 upper-triangular matrices, t1..t3 diagonal, t4 = E12, t5 = E23, t6 = E13.
LieAlgebra upper_triangular();
LieAlgebra abelian(int dim);
/// [e,f] = h, [h,e] = 2e, [h,f] = -2f. Not solvable.
LieAlgebra sl2();
/// Planar rigid motions in homogeneous 3x3 coordinates.
LieAlgebra se2();
/// Every shipped algebra, used by the identity sweeps.
std::vector<LieAlgebra> all();
/// Lookup by name: heisenberg, upper-triangular, abelian-N, sl2, se2.
LieAlgebra by_name(const std::string& name);
}  // namespace catalog

}  // namespace liestab
