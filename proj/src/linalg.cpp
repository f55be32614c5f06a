#include "liestab/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace liestab {

std::vector<std::complex<double>> eigenvalues(const Matrix& m) {
  if (m.size() == 0) return {};
  Eigen::EigenSolver<Matrix> solver(m, false);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double spectral_radius(const Matrix& m) {
  double rho = 0.0;
  for (const auto& z : eigenvalues(m)) rho = std::max(rho, std::abs(z));
  return rho;
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

namespace {

// Pivoted Gram-Schmidt over the columns of `candidates` (already restricted to
// the target space). Picks the largest remaining residual each round; ties keep
// the lowest index so coordinate axes stay in order.
Matrix pivoted_gram_schmidt(Matrix candidates, Eigen::Index rank) {
  const Eigen::Index rows = candidates.rows();
  Matrix basis(rows, rank);
  std::vector<bool> used(static_cast<std::size_t>(candidates.cols()), false);
  for (Eigen::Index r = 0; r < rank; ++r) {
    Eigen::Index best = -1;
    double best_norm = -1.0;
    for (Eigen::Index c = 0; c < candidates.cols(); ++c) {
      if (used[static_cast<std::size_t>(c)]) continue;
      const double nrm = candidates.col(c).norm();
      if (nrm > best_norm * (1.0 + 1e-12)) {
        best_norm = nrm;
        best = c;
      }
    }
    used[static_cast<std::size_t>(best)] = true;
    Vector v = candidates.col(best) / best_norm;
    // second pass for orthogonality
    v -= basis.leftCols(r) * (basis.leftCols(r).transpose() * v);
    v.normalize();
    basis.col(r) = v;
    for (Eigen::Index c = 0; c < candidates.cols(); ++c) {
      if (used[static_cast<std::size_t>(c)]) continue;
      candidates.col(c) -= v * v.dot(candidates.col(c));
    }
  }
  return basis;
}

}  // namespace

Matrix orthonormal_span(const Matrix& generators, double scale) {
  const Eigen::Index rows = generators.rows();
  if (generators.cols() == 0 || rows == 0) return Matrix(rows, 0);
  Eigen::JacobiSVD<Matrix> svd(generators, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
  const double threshold = kRankTolerance * std::max(sigma_max, scale);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > threshold && sv(i) > 0.0) ++rank;
  }
  if (rank == 0) return Matrix(rows, 0);
  const Matrix u = svd.matrixU().leftCols(rank);
  // Project the standard basis onto the span and re-orthonormalize.
  Matrix projected = u * u.transpose();
  return pivoted_gram_schmidt(projected, rank);
}

Matrix orthonormal_complement(const Matrix& basis, Eigen::Index ambient) {
  const Eigen::Index rank = ambient - basis.cols();
  if (rank <= 0) return Matrix(ambient, 0);
  Matrix projected = Matrix::Identity(ambient, ambient) - basis * basis.transpose();
  return pivoted_gram_schmidt(projected, rank);
}

Matrix block_diagonal(const Matrix& m, int n) {
  Matrix out = Matrix::Zero(m.rows() * n, m.cols() * n);
  for (int i = 0; i < n; ++i) out.block(i * m.rows(), i * m.cols(), m.rows(), m.cols()) = m;
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double product_norm(const Vector& v, Eigen::Index slot_dim, NormKind kind) {
  if (kind == NormKind::Euclidean || slot_dim <= 0) return v.norm();
  double total = 0.0;
  for (Eigen::Index s = 0; s + slot_dim <= v.size(); s += slot_dim) total += v.segment(s, slot_dim).norm();
  return total;
}

double product_operator_norm(const Matrix& m, Eigen::Index slot_dim, NormKind kind) {
  if (m.size() == 0) return 0.0;
  if (kind == NormKind::Euclidean || slot_dim <= 0 || m.rows() == slot_dim) return spectral_norm(m);
  const Eigen::Index out_slots = m.rows() / slot_dim;
  const Eigen::Index in_slots = m.cols() / slot_dim;
  double best = 0.0;
  for (Eigen::Index j = 0; j < in_slots; ++j) {
    double column = 0.0;
    for (Eigen::Index i = 0; i < out_slots; ++i)
      column += spectral_norm(m.block(i * slot_dim, j * slot_dim, slot_dim, slot_dim));
    best = std::max(best, column);
  }
  return best;
}

Vector random_vector(Eigen::Index size, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Vector v(size);
  for (Eigen::Index i = 0; i < size; ++i) v(i) = dist(rng);
  return v;
}

Vector random_in_ball(Eigen::Index size, double radius, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vector v(size);
  for (Eigen::Index i = 0; i < size; ++i) v(i) = normal(rng);
  const double nrm = v.norm();
  if (nrm == 0.0) return Vector::Zero(size);
  return v * (radius * unit(rng) / nrm);
}

}  // namespace liestab
