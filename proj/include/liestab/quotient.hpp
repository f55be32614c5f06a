#pragma once

#include "liestab/algebra.hpp"

#include <random>
#include <vector>

namespace liestab {

/// Canonical projection onto R^d / V in orthogonal-complement coordinates.
/// P = Q^T and iota = Q for an orthonormal basis Q of V-perp, so P iota = I,
/// ||iota|| = 1 and the quotient norm of x + V is ||P x||.
struct QuotientContext {
  Subspace ideal;
  Matrix P;
  Matrix iota;

  int ambient() const { return static_cast<int>(P.cols()); }
  int quotient_dim() const { return static_cast<int>(P.rows()); }
  /// V equals the whole space, so the quotient is the zero space.
  bool degenerate() const { return P.rows() == 0; }
  /// (I_n (x) P) for slot-major stacked vectors.
  Matrix stacked_P(int n) const { return block_diagonal(P, n); }
  Matrix stacked_iota(int n) const { return block_diagonal(iota, n); }
};

QuotientContext make_quotient(const LieAlgebra& a, const Subspace& v);
QuotientContext make_quotient(int ambient, const Subspace& v);

double quotient_norm(const QuotientContext& ctx, const Element& x);

/// ||(I - Pi_V) A B_V|| relative to max(1, ||A||), where B_V spans V (stacked n times).
double invariance_residual(const Matrix& A, const Subspace& v, int n = 1);

/// Unique A_bar with A_bar P = P A on (R^d / V)^n. Throws InvarianceViolation
/// when A does not leave V^n invariant to `tol`.
Matrix induced_map(const QuotientContext& ctx, const Matrix& A, int n = 1, double tol = 1e-10);

/// Operator norm of P from (R^d, ||.||_2) to the quotient norm. Exact (SVD).
double projection_norm(const QuotientContext& ctx);

/// Norm ||x||_T = ||T^{-1} x||_2 in which ||A|| < rho(A) + epsilon.
struct AdaptedNorm {
  Matrix transform;
  Matrix inverse;
  double epsilon = 0.0;
  double rho = 0.0;
  double induced_norm = 0.0;  // ||T^{-1} A T||_2
  Matrix target_map;

  double norm(const Vector& x) const { return (inverse * x).norm(); }
  bool certified() const { return induced_norm < rho + epsilon; }
};

AdaptedNorm adapted_norm(const Matrix& A, double epsilon);

/// Maps for one level of a chain: P_i = projection modulo chain[i].
std::vector<QuotientContext> chain_quotients(const LieAlgebra& a, const IdealChain& chain);

/// Max over levels i = 1..size-1 of the residual between P_i w and
/// P_i [iota_{i-1} P_{i-1} Y_1, [..., iota_{i-1} P_{i-1} Y_m]].
double check_word_decomposition_nilpotent(const LieAlgebra& a, const IdealChain& chain,
                                          const std::vector<Element>& letters);

struct SolvableDecompositionResidual {
  double lemma = 0.0;       // m+1 term decomposition of P_i w
  double claim = 0.0;       // iota_0 P_0 iota_{i-1} P_{i-1} = iota_0 P_0 on the letters
};

/// Levels are taken modulo chain[i] with chain[0] = h. Every level i >= 1 is checked.
SolvableDecompositionResidual check_word_decomposition_solvable(const LieAlgebra& a,
                                                                const IdealChain& chain,
                                                                const std::vector<Element>& letters);

/// Matrix residual of iota_0 P_0 iota_{i-1} P_{i-1} - iota_0 P_0 over all levels.
double claim_projection_residual(const LieAlgebra& a, const IdealChain& chain);

/// Right-nested evaluation [y_1, [y_2, [..., y_m]]].
Element nested_bracket(const LieAlgebra& a, const std::vector<Element>& letters);

}  // namespace liestab
