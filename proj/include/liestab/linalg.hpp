#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace liestab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
/// Coordinates of an algebra element in the algebra basis.
using Element = Eigen::VectorXd;

/// Relative rank threshold used for every subspace decision.
inline constexpr double kRankTolerance = 1e-10;

/// Norm on a product space g^n. Sum is the default product norm.
enum class NormKind { Sum, Euclidean };

std::vector<std::complex<double>> eigenvalues(const Matrix& m);
double spectral_radius(const Matrix& m);
double spectral_norm(const Matrix& m);

/// Orthonormal basis of the column span of `generators`. Columns whose
/// singular value is below 1e-10 * max(sigma_max, scale) are dropped. The
/// basis is canonicalized by pivoted Gram-Schmidt on projected unit vectors,
/// so coordinate-aligned spans come back as coordinate axes.
Matrix orthonormal_span(const Matrix& generators, double scale = 0.0);

/// Orthonormal basis of the orthogonal complement of span(basis) in R^ambient,
/// using the same canonical pivoting. `basis` must be orthonormal.
Matrix orthonormal_complement(const Matrix& basis, Eigen::Index ambient);

/// I_n (x) m, i.e. block-diagonal with n copies of m.
Matrix block_diagonal(const Matrix& m, int n);
Matrix kron(const Matrix& a, const Matrix& b);

/// Norm of a stacked vector made of slots of size `slot_dim`.
double product_norm(const Vector& v, Eigen::Index slot_dim, NormKind kind = NormKind::Sum);

/// Induced operator norm (or an upper bound for it) on stacked vectors.
/// Euclidean: exact spectral norm. Sum: max_j sum_i ||M_ij||_2, exact for one slot.
double product_operator_norm(const Matrix& m, Eigen::Index slot_dim,
                             NormKind kind = NormKind::Sum);

/// Uniform coordinates in [-1, 1].
Vector random_vector(Eigen::Index size, std::mt19937_64& rng);
/// Uniformly distributed direction times radius drawn uniformly in [0, radius].
Vector random_in_ball(Eigen::Index size, double radius, std::mt19937_64& rng);

}  // namespace liestab
