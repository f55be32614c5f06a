#include "liestab/algebra.hpp"

#include "liestab/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace liestab {

namespace {

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

}  // namespace

LieAlgebra::LieAlgebra(std::string name, int dim, std::vector<double> constants,
                       std::vector<std::string> labels, std::vector<Matrix> matrix_rep)
    : name_(std::move(name)),
      dim_(dim),
      constants_(std::move(constants)),
      labels_(std::move(labels)),
      matrix_rep_(std::move(matrix_rep)) {
  if (dim_ <= 0) throw InputError("algebra dimension must be positive");
  const auto d = static_cast<std::size_t>(dim_);
  if (constants_.size() != d * d * d)
    throw InputError("structure constant tensor must have dim^3 entries");
  if (labels_.empty()) {
    for (int i = 0; i < dim_; ++i) labels_.push_back("e" + std::to_string(i + 1));
  }
  if (labels_.size() != d) throw InputError("label count does not match dimension");
  if (!matrix_rep_.empty() && matrix_rep_.size() != d)
    throw InputError("matrix representation must have one matrix per basis element");
  for (double v : constants_)
    if (!std::isfinite(v)) throw InputError("structure constants must be finite");
  build_ad();
  validate();
}

void LieAlgebra::build_ad() {
  ad_basis_.assign(static_cast<std::size_t>(dim_), Matrix::Zero(dim_, dim_));
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) ad_basis_[static_cast<std::size_t>(i)](k, j) = c(i, j, k);
  if (!matrix_rep_.empty()) {
    const Eigen::Index m = matrix_rep_[0].rows();
    Matrix stacked(m * m, dim_);
    for (int i = 0; i < dim_; ++i) {
      const Matrix& r = matrix_rep_[static_cast<std::size_t>(i)];
      if (r.rows() != m || r.cols() != m) throw InputError("matrix representation sizes differ");
      stacked.col(i) = vec(r);
    }
    rep_coords_ = stacked.completeOrthogonalDecomposition().pseudoInverse();
  }
}

void LieAlgebra::validate() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        if (std::abs(c(i, j, k) + c(j, i, k)) > 1e-12)
          throw InputError("structure constants are not antisymmetric in " + labels_[i] + ", " +
                           labels_[j]);
  double scale = 1.0;
  for (double v : constants_) scale = std::max(scale, std::abs(v));
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j)
      for (int k = j + 1; k < dim_; ++k) {
        const Element ei = Element::Unit(dim_, i), ej = Element::Unit(dim_, j),
                      ek = Element::Unit(dim_, k);
        if (jacobi_residual(ei, ej, ek) > 1e-12 * scale * scale)
          throw InputError("Jacobi identity fails on " + labels_[i] + ", " + labels_[j] + ", " +
                           labels_[k]);
      }
  if (!matrix_rep_.empty()) {
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) {
        const Matrix& a = matrix_rep_[static_cast<std::size_t>(i)];
        const Matrix& b = matrix_rep_[static_cast<std::size_t>(j)];
        const Matrix comm = a * b - b * a;
        const Matrix img = to_matrix(bracket(Element::Unit(dim_, i), Element::Unit(dim_, j)));
        if ((comm - img).cwiseAbs().maxCoeff() > 1e-10)
          throw InputError("matrix representation disagrees with bracket of " + labels_[i] +
                           ", " + labels_[j]);
      }
  }
}

LieAlgebra LieAlgebra::from_matrix_basis(std::string name, std::vector<Matrix> basis,
                                         std::vector<std::string> labels) {
  if (basis.empty()) throw InputError("empty matrix basis");
  const int d = static_cast<int>(basis.size());
  const Eigen::Index m = basis[0].rows();
  Matrix stacked(m * m, d);
  for (int i = 0; i < d; ++i) {
    if (basis[static_cast<std::size_t>(i)].rows() != m || basis[static_cast<std::size_t>(i)].cols() != m)
      throw InputError("matrix basis sizes differ");
    stacked.col(i) = vec(basis[static_cast<std::size_t>(i)]);
  }
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(stacked);
  if (cod.rank() != d) throw InputError("matrix basis is linearly dependent");
  std::vector<double> constants(static_cast<std::size_t>(d) * d * d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Matrix& a = basis[static_cast<std::size_t>(i)];
      const Matrix& b = basis[static_cast<std::size_t>(j)];
      const Vector target = vec(a * b - b * a);
      const Vector coords = cod.solve(target);
      if ((stacked * coords - target).norm() > 1e-10 * std::max(1.0, target.norm()))
        throw InputError("matrix basis is not closed under the commutator");
      for (int k = 0; k < d; ++k) {
        double v = coords(k);
        if (std::abs(v) < 1e-14) v = 0.0;
        constants[(static_cast<std::size_t>(i) * d + j) * d + k] = v;
      }
    }
  return LieAlgebra(std::move(name), d, std::move(constants), std::move(labels), std::move(basis));
}

LieAlgebra LieAlgebra::abelian(int dim) {
  const auto d = static_cast<std::size_t>(dim);
  return LieAlgebra("abelian-" + std::to_string(dim), dim, std::vector<double>(d * d * d, 0.0));
}

Matrix LieAlgebra::ad(const Element& x) const {
  if (x.size() != dim_) throw InputError("element has wrong dimension");
  Matrix out = Matrix::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    if (x(i) != 0.0) out += x(i) * ad_basis_[static_cast<std::size_t>(i)];
  return out;
}

Element LieAlgebra::bracket(const Element& x, const Element& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw InputError("bracket arguments have wrong dimension");
  Element out = Element::Zero(dim_);
  for (int i = 0; i < dim_; ++i)
    if (x(i) != 0.0) out.noalias() += x(i) * (ad_basis_[static_cast<std::size_t>(i)] * y);
  return out;
}

double LieAlgebra::jacobi_residual(const Element& x, const Element& y, const Element& z) const {
  const Element r = bracket(bracket(x, y), z) + bracket(bracket(y, z), x) + bracket(bracket(z, x), y);
  return r.cwiseAbs().maxCoeff();
}

Matrix LieAlgebra::to_matrix(const Element& x) const {
  if (matrix_rep_.empty()) throw InputError("algebra " + name_ + " has no matrix representation");
  Matrix out = Matrix::Zero(matrix_rep_[0].rows(), matrix_rep_[0].cols());
  for (int i = 0; i < dim_; ++i) out += x(i) * matrix_rep_[static_cast<std::size_t>(i)];
  return out;
}

Element LieAlgebra::from_matrix(const Matrix& m) const {
  if (matrix_rep_.empty()) throw InputError("algebra " + name_ + " has no matrix representation");
  return rep_coords_ * vec(m);
}

int LieAlgebra::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<int>(i);
  return -1;
}

// ---------------------------------------------------------------- Subspace

Subspace Subspace::span(const Matrix& generators, double scale) {
  Subspace s;
  s.basis_ = orthonormal_span(generators, scale);
  return s;
}

Subspace Subspace::zero(int ambient) {
  Subspace s;
  s.basis_ = Matrix(ambient, 0);
  return s;
}

Subspace Subspace::full(int ambient) {
  Subspace s;
  s.basis_ = Matrix::Identity(ambient, ambient);
  return s;
}

Subspace Subspace::coordinate(int ambient, const std::vector<int>& axes) {
  Matrix gen = Matrix::Zero(ambient, static_cast<Eigen::Index>(axes.size()));
  for (std::size_t c = 0; c < axes.size(); ++c) {
    if (axes[c] < 0 || axes[c] >= ambient) throw InputError("coordinate axis out of range");
    gen(axes[c], static_cast<Eigen::Index>(c)) = 1.0;
  }
  return span(gen);
}

double Subspace::residual(const Matrix& m) const {
  if (m.cols() == 0) return 0.0;
  if (m.rows() != ambient()) throw InputError("subspace residual: dimension mismatch");
  const Matrix r = m - basis_ * (basis_.transpose() * m);
  return spectral_norm(r);
}

bool Subspace::contains(const Vector& v, double tol) const {
  return residual(v) <= tol * std::max(1.0, v.norm());
}

bool Subspace::contains(const Subspace& other, double tol) const {
  return residual(other.basis()) <= tol;
}

bool Subspace::same_as(const Subspace& other, double tol) const {
  return dim() == other.dim() && contains(other, tol) && other.contains(*this, tol);
}

// ------------------------------------------------------------- operations

Element bracket(const LieAlgebra& a, const Element& x, const Element& y) { return a.bracket(x, y); }

Subspace subspace_bracket(const LieAlgebra& a, const Subspace& s1, const Subspace& s2) {
  if (s1.ambient() != a.dim() || s2.ambient() != a.dim())
    throw InputError("subspace_bracket: subspace lives in a different algebra");
  if (s1.dim() == 0 || s2.dim() == 0) return Subspace::zero(a.dim());
  Matrix gens(a.dim(), static_cast<Eigen::Index>(s1.dim()) * s2.dim());
  Eigen::Index col = 0;
  for (int i = 0; i < s1.dim(); ++i)
    for (int j = 0; j < s2.dim(); ++j) gens.col(col++) = a.bracket(s1.basis().col(i), s2.basis().col(j));
  // Scale reference: brackets of unit vectors are bounded by max |ad_basis|.
  double scale = 0.0;
  for (int i = 0; i < a.dim(); ++i) scale = std::max(scale, a.ad_basis(i).cwiseAbs().maxCoeff());
  return Subspace::span(gens, scale);
}

IdealChain derived_series(const LieAlgebra& a) {
  IdealChain chain;
  chain.kind = ChainKind::DerivedSeries;
  chain.ideals.push_back(Subspace::full(a.dim()));
  while (true) {
    const Subspace& last = chain.ideals.back();
    if (last.dim() == 0) {
      chain.terminated = true;
      break;
    }
    Subspace next = subspace_bracket(a, last, last);
    if (next.dim() == last.dim()) break;  // stabilised above zero
    chain.ideals.push_back(std::move(next));
  }
  return chain;
}

IdealChain lower_central_series(const LieAlgebra& a, const Subspace& start) {
  if (start.ambient() != a.dim()) throw InputError("lower_central_series: wrong ambient dimension");
  IdealChain chain;
  chain.kind = ChainKind::LowerCentralSeries;
  chain.ideals.push_back(start);
  while (true) {
    const Subspace& last = chain.ideals.back();
    if (last.dim() == 0) {
      chain.terminated = true;
      break;
    }
    Subspace next = subspace_bracket(a, last, start);
    if (next.dim() == last.dim()) break;
    chain.ideals.push_back(std::move(next));
  }
  return chain;
}

Subspace derived_algebra(const LieAlgebra& a) {
  const Subspace g = Subspace::full(a.dim());
  return subspace_bracket(a, g, g);
}

NilpotencyResult is_nilpotent(const LieAlgebra& a, const Subspace& start) {
  const IdealChain chain = lower_central_series(a, start);
  NilpotencyResult r;
  r.nilpotent = chain.terminated;
  if (r.nilpotent) r.nilindex = static_cast<int>(chain.size()) - 1;
  return r;
}

NilpotencyResult is_nilpotent(const LieAlgebra& a) { return is_nilpotent(a, Subspace::full(a.dim())); }

SolvabilityResult is_solvable(const LieAlgebra& a) {
  const IdealChain chain = derived_series(a);
  SolvabilityResult r;
  r.solvable = chain.terminated;
  if (r.solvable) r.derived_length = static_cast<int>(chain.size()) - 2;
  r.nilpotent_derived_algebra = is_nilpotent(a, derived_algebra(a)).nilpotent;
  if (r.solvable != r.nilpotent_derived_algebra)
    throw std::logic_error("solvability and nilpotency of the derived algebra disagree for " +
                           a.name());
  return r;
}

double strong_centrality_residual(const LieAlgebra& a, const IdealChain& lcs) {
  double worst = 0.0;
  const std::size_t q = lcs.size();
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) {
      const Subspace br = subspace_bracket(a, lcs[i], lcs[j]);
      // Index i holds h^(i+1); the product lands in h^(i+j+2), zero past the end.
      const std::size_t target = i + j + 1;
      const Subspace& dest = target < q ? lcs[target] : (lcs.terminated ? lcs.ideals.back() : lcs[q - 1]);
      worst = std::max(worst, dest.residual(br.basis()));
    }
  return worst;
}

// ---------------------------------------------------------------------- mu

namespace {

double estimate_mu(const LieAlgebra& a, std::uint64_t seed) {
  const int d = a.dim();
  std::mt19937_64 rng(seed);
  double best = 0.0;
  // Alternating maximisation: for fixed x the best y is the top right singular
  // vector of ad_x, and symmetrically for fixed y.
  for (int start = 0; start < 64; ++start) {
    Element x = random_vector(d, rng);
    Element y = random_vector(d, rng);
    if (x.norm() == 0.0 || y.norm() == 0.0) continue;
    x.normalize();
    y.normalize();
    for (int it = 0; it < 50; ++it) {
      Eigen::JacobiSVD<Matrix> sx(a.ad(x), Eigen::ComputeFullV);
      y = sx.matrixV().col(0);
      Matrix ady(d, d);  // x -> [x, y] = -ad_y x
      for (int i = 0; i < d; ++i) ady.col(i) = a.bracket(Element::Unit(d, i), y);
      Eigen::JacobiSVD<Matrix> sy(ady, Eigen::ComputeFullV);
      x = sy.matrixV().col(0);
      best = std::max(best, a.bracket(x, y).norm());
    }
  }
  return best;
}

}  // namespace

double mu_constant(const LieAlgebra& a, MuKind kind, std::uint64_t seed) {
  switch (kind) {
    case MuKind::Generic:
      return 2.0;
    case MuKind::Estimated:
      return 1.05 * estimate_mu(a, seed);
    case MuKind::FrobeniusRep: {
      if (!a.has_matrix_rep()) throw InputError("frobenius-rep mu needs a matrix representation");
      const Eigen::Index m = a.matrix_rep()[0].rows();
      Matrix stacked(m * m, a.dim());
      for (int i = 0; i < a.dim(); ++i) stacked.col(i) = vec(a.matrix_rep()[static_cast<std::size_t>(i)]);
      Eigen::JacobiSVD<Matrix> svd(stacked);
      const auto& sv = svd.singularValues();
      const double smax = sv(0), smin = sv(sv.size() - 1);
      // Coordinates -> matrices -> coordinates; equals sqrt(2) for an orthonormal rep.
      const double factor = smax * smax / smin;
      return std::abs(factor - 1.0) < 1e-12 ? std::sqrt(2.0) : std::sqrt(2.0) * factor;
    }
  }
  return 2.0;
}

double default_mu(const LieAlgebra& a) {
  return a.has_matrix_rep() ? mu_constant(a, MuKind::FrobeniusRep) : mu_constant(a, MuKind::Estimated);
}

}  // namespace liestab
