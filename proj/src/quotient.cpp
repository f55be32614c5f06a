#include "liestab/quotient.hpp"

#include "liestab/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>

namespace liestab {

QuotientContext make_quotient(int ambient, const Subspace& v) {
  if (v.ambient() != ambient) throw InputError("make_quotient: subspace has wrong ambient dimension");
  QuotientContext ctx;
  ctx.ideal = v;
  const Matrix q = orthonormal_complement(v.basis(), ambient);
  ctx.P = q.transpose();
  ctx.iota = q;
  return ctx;
}

QuotientContext make_quotient(const LieAlgebra& a, const Subspace& v) { return make_quotient(a.dim(), v); }

double quotient_norm(const QuotientContext& ctx, const Element& x) {
  if (x.size() != ctx.ambient()) throw InputError("quotient_norm: dimension mismatch");
  if (ctx.degenerate()) return 0.0;
  return (ctx.P * x).norm();
}

double invariance_residual(const Matrix& A, const Subspace& v, int n) {
  if (v.dim() == 0) return 0.0;
  const Matrix basis = block_diagonal(v.basis(), n);
  const Matrix proj = basis * basis.transpose();
  const Matrix image = A * basis;
  const double r = spectral_norm(image - proj * image);
  return r / std::max(1.0, spectral_norm(A));
}

Matrix induced_map(const QuotientContext& ctx, const Matrix& A, int n, double tol) {
  const Eigen::Index full = static_cast<Eigen::Index>(ctx.ambient()) * n;
  if (A.rows() != full || A.cols() != full) throw InputError("induced_map: map has wrong size");
  const double res = invariance_residual(A, ctx.ideal, n);
  if (res > tol) throw InvarianceViolation("linear map does not leave the ideal invariant", res);
  const Matrix P = ctx.stacked_P(n);
  const Matrix iota = ctx.stacked_iota(n);
  return P * A * iota;
}

double projection_norm(const QuotientContext& ctx) {
  if (ctx.degenerate()) return 0.0;
  return spectral_norm(ctx.P);
}

// ----------------------------------------------------------- adapted norm

namespace {

// Real Schur form A = U T U^T with each 2x2 block rotated so that its diagonal
// entries are equal and its off-diagonal entries have equal magnitude, i.e. the
// block reads [[a, b], [-b, a]] up to a diagonal similarity.
void normalise_blocks(Matrix& T, Matrix& S) {
  const Eigen::Index n = T.rows();
  S = Matrix::Identity(n, n);
  for (Eigen::Index i = 0; i + 1 < n;) {
    if (std::abs(T(i + 1, i)) > 0.0) {
      const Eigen::Matrix2d B = T.block<2, 2>(i, i);
      Eigen::EigenSolver<Eigen::Matrix2d> es(B);
      const Eigen::Vector2cd v = es.eigenvectors().col(0);
      Eigen::Matrix2d Y;
      Y.col(0) = v.real();
      Y.col(1) = v.imag();
      if (std::abs(Y.determinant()) > 1e-14) {
        // B Y = Y [[re, im], [-im, re]] for the eigenpair (re + i im, v).
        Matrix big = Matrix::Identity(n, n);
        big.block<2, 2>(i, i) = Y;
        const Matrix big_inv = big.inverse();
        T = big_inv * T * big;
        S = S * big;
      }
      i += 2;
    } else {
      i += 1;
    }
  }
}

}  // namespace

AdaptedNorm adapted_norm(const Matrix& A, double epsilon) {
  if (epsilon <= 0.0) throw InputError("adapted_norm: epsilon must be positive");
  if (A.rows() != A.cols()) throw InputError("adapted_norm: map must be square");
  const Eigen::Index n = A.rows();
  AdaptedNorm out;
  out.epsilon = epsilon;
  out.target_map = A;
  out.rho = spectral_radius(A);
  if (n == 0) {
    out.transform = out.inverse = Matrix(0, 0);
    return out;
  }
  Eigen::RealSchur<Matrix> schur(A);
  Matrix T = schur.matrixT();
  Matrix S;
  normalise_blocks(T, S);
  const Matrix base = schur.matrixU() * S;  // A = base T base^{-1}
  const Matrix base_inv = base.inverse();

  // Block starts, so that whole 2x2 blocks share one scaling power.
  std::vector<Eigen::Index> block_of(static_cast<std::size_t>(n));
  Eigen::Index b = 0;
  for (Eigen::Index i = 0; i < n;) {
    const bool pair = i + 1 < n && std::abs(T(i + 1, i)) > 0.0;
    block_of[static_cast<std::size_t>(i)] = b;
    if (pair) block_of[static_cast<std::size_t>(i + 1)] = b;
    i += pair ? 2 : 1;
    ++b;
  }
  Matrix strict = T;  // off-block part
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (block_of[static_cast<std::size_t>(i)] == block_of[static_cast<std::size_t>(j)]) strict(i, j) = 0.0;
  const double off = strict.norm();
  double delta = off > 0.0 ? std::min(1.0, epsilon / (2.0 * off)) : 1.0;

  for (int attempt = 0; attempt < 200; ++attempt) {
    Vector scale(n);
    for (Eigen::Index i = 0; i < n; ++i)
      scale(i) = std::pow(delta, static_cast<double>(block_of[static_cast<std::size_t>(i)]));
    // D^{-1} T D scales entry (i, j) by delta^(b_j - b_i): shrinks the upper part.
    const Matrix Tm = base * scale.asDiagonal();
    const Matrix Tinv = scale.cwiseInverse().asDiagonal() * base_inv;
    const double nrm = spectral_norm(Tinv * A * Tm);
    out.transform = Tm;
    out.inverse = Tinv;
    out.induced_norm = nrm;
    if (nrm < out.rho + epsilon) break;
    delta *= 0.5;
  }
  return out;
}

// ------------------------------------------------------- word identities

Element nested_bracket(const LieAlgebra& a, const std::vector<Element>& letters) {
  if (letters.empty()) throw InputError("word must have at least one letter");
  Element acc = letters.back();
  for (std::size_t k = letters.size() - 1; k-- > 0;) acc = a.bracket(letters[k], acc);
  return acc;
}

std::vector<QuotientContext> chain_quotients(const LieAlgebra& a, const IdealChain& chain) {
  std::vector<QuotientContext> out;
  out.reserve(chain.size());
  for (const Subspace& s : chain.ideals) out.push_back(make_quotient(a, s));
  return out;
}

namespace {

Element lift(const QuotientContext& q, const Element& y) {
  if (q.degenerate()) return Element::Zero(y.size());
  return q.iota * (q.P * y);
}

Vector project(const QuotientContext& q, const Element& y) {
  if (q.degenerate()) return Vector(0);
  return q.P * y;
}

double scale_of(const std::vector<Element>& letters) {
  double s = 1.0;
  for (const auto& y : letters) s *= std::max(1.0, y.norm());
  return s;
}

}  // namespace

double check_word_decomposition_nilpotent(const LieAlgebra& a, const IdealChain& chain,
                                          const std::vector<Element>& letters) {
  const auto qs = chain_quotients(a, chain);
  const double scale = scale_of(letters);
  double worst = 0.0;
  for (std::size_t i = 1; i < qs.size(); ++i) {
    const Vector lhs = project(qs[i], nested_bracket(a, letters));
    std::vector<Element> lifted;
    for (const auto& y : letters) lifted.push_back(lift(qs[i - 1], y));
    const Vector rhs = project(qs[i], nested_bracket(a, lifted));
    if (lhs.size() > 0) worst = std::max(worst, (lhs - rhs).norm() / scale);
  }
  return worst;
}

SolvableDecompositionResidual check_word_decomposition_solvable(const LieAlgebra& a,
                                                                const IdealChain& chain,
                                                                const std::vector<Element>& letters) {
  const auto qs = chain_quotients(a, chain);
  const double scale = scale_of(letters);
  const std::size_t m = letters.size();
  SolvableDecompositionResidual out;
  for (std::size_t i = 1; i < qs.size(); ++i) {
    const Vector lhs = project(qs[i], nested_bracket(a, letters));
    std::vector<Element> hat, base;
    for (const auto& y : letters) {
      hat.push_back(lift(qs[i - 1], y));
      base.push_back(lift(qs[0], y));
    }
    Vector rhs = project(qs[i], nested_bracket(a, hat));
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<Element> w = base;
      w[j] = letters[j] - hat[j];  // (Id - iota_{i-1} P_{i-1}) Y_j
      rhs += project(qs[i], nested_bracket(a, w));
    }
    if (lhs.size() > 0) out.lemma = std::max(out.lemma, (lhs - rhs).norm() / scale);
    for (const auto& y : letters) {
      const Element l = lift(qs[0], lift(qs[i - 1], y));
      out.claim = std::max(out.claim, (l - lift(qs[0], y)).norm() / std::max(1.0, y.norm()));
    }
  }
  return out;
}

double claim_projection_residual(const LieAlgebra& a, const IdealChain& chain) {
  const auto qs = chain_quotients(a, chain);
  const int d = a.dim();
  auto lift_map = [&](const QuotientContext& q) -> Matrix {
    return q.degenerate() ? Matrix::Zero(d, d) : Matrix(q.iota * q.P);
  };
  double worst = 0.0;
  const Matrix l0 = lift_map(qs[0]);
  for (std::size_t i = 1; i < qs.size(); ++i)
    worst = std::max(worst, spectral_norm(l0 * lift_map(qs[i - 1]) - l0));
  return worst;
}

}  // namespace liestab
