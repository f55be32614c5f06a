#include "liestab/sampling.hpp"

#include "liestab/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <array>
#include <cmath>

namespace liestab {

namespace {

double norm1(const Matrix& m) { return m.cwiseAbs().colwise().sum().maxCoeff(); }

bool strictly_triangular(const Matrix& m) {
  const Eigen::Index n = m.rows();
  bool upper = true, lower = true;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (m(i, j) == 0.0) continue;
      if (j <= i) upper = false;
      if (j >= i) lower = false;
    }
  return upper || lower;
}

// Pade approximant r_m(A) for the degrees used by scaling and squaring.
Matrix pade(const Matrix& A, int m) {
  const Eigen::Index n = A.rows();
  const Matrix I = Matrix::Identity(n, n);
  const Matrix A2 = A * A;
  Matrix U, V;
  if (m == 13) {
    static constexpr std::array<double, 14> b = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
        129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
        1323241920.0,        40840800.0,          960960.0,           16380.0,
        182.0,               1.0};
    const Matrix A4 = A2 * A2, A6 = A4 * A2;
    U = A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * I);
    V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;
  } else {
    static const std::array<std::array<double, 10>, 4> coeffs = {{
        {120.0, 60.0, 12.0, 1.0},
        {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0},
        {17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0},
        {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0, 2162160.0, 110880.0,
         3960.0, 90.0, 1.0},
    }};
    const auto& b = coeffs[static_cast<std::size_t>((m - 3) / 2)];
    Matrix Ak = I;
    U = Matrix::Zero(n, n);
    V = Matrix::Zero(n, n);
    for (int k = 0; k <= m; k += 2) {
      V += b[static_cast<std::size_t>(k)] * Ak;
      U += b[static_cast<std::size_t>(k + 1)] * Ak;
      Ak = Ak * A2;
    }
    U = A * U;
  }
  return (V - U).partialPivLu().solve(V + U);
}

}  // namespace

Matrix expm(const Matrix& m) {
  if (m.rows() != m.cols()) throw InputError("expm: matrix must be square");
  const Eigen::Index n = m.rows();
  if (n == 0) return m;
  if (!m.allFinite()) throw InputError("expm: matrix has non-finite entries");
  if (strictly_triangular(m)) {
    Matrix out = Matrix::Identity(n, n), term = Matrix::Identity(n, n);
    for (Eigen::Index k = 1; k < n; ++k) {
      term = term * m / static_cast<double>(k);
      out += term;
    }
    return out;
  }
  static constexpr std::array<double, 4> theta = {1.495585217958292e-2, 2.539398330063230e-1,
                                                  9.504178996162932e-1, 2.097847961257068};
  const double a1 = norm1(m);
  for (int i = 0; i < 4; ++i)
    if (a1 <= theta[static_cast<std::size_t>(i)]) return pade(m, 3 + 2 * i);
  constexpr double theta13 = 5.371920351148152;
  int s = 0;
  if (a1 > theta13) s = static_cast<int>(std::ceil(std::log2(a1 / theta13)));
  Matrix r = pade(m / std::ldexp(1.0, s), 13);
  for (int i = 0; i < s; ++i) r = r * r;
  return r;
}

namespace {

Matrix sqrtm_db(const Matrix& x) {
  const Eigen::Index n = x.rows();
  Matrix Y = x, Z = Matrix::Identity(n, n);
  for (int it = 0; it < 100; ++it) {
    const Matrix Yi = Y.inverse(), Zi = Z.inverse();
    const Matrix Yn = 0.5 * (Y + Zi);
    Z = 0.5 * (Z + Yi);
    const double change = (Yn - Y).norm();
    Y = Yn;
    if (change <= 1e-15 * Y.norm()) break;
  }
  return Y;
}

struct Quadrature {
  Vector nodes, weights;  // on [0, 1]
};

// Golub-Welsch nodes for 12-point Gauss-Legendre.
const Quadrature& gauss_legendre() {
  static const Quadrature q = [] {
    constexpr int m = 12;
    Matrix J = Matrix::Zero(m, m);
    for (int k = 1; k < m; ++k) {
      const double b = k / std::sqrt(4.0 * k * k - 1.0);
      J(k - 1, k) = J(k, k - 1) = b;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(J);
    Quadrature out;
    out.nodes = (es.eigenvalues().array() + 1.0) / 2.0;
    out.weights = es.eigenvectors().row(0).transpose().array().square();  // sums to 1 on [0, 1]
    return out;
  }();
  return q;
}

}  // namespace

Matrix logm(const Matrix& g) {
  if (g.rows() != g.cols()) throw InputError("logm: matrix must be square");
  const Eigen::Index n = g.rows();
  if (n == 0) return g;
  const Matrix I = Matrix::Identity(n, n);
  const Matrix N = g - I;
  if (strictly_triangular(N)) {
    Matrix out = Matrix::Zero(n, n), power = I;
    for (Eigen::Index k = 1; k < n; ++k) {
      power = power * N;
      out += ((k % 2 == 1) ? 1.0 : -1.0) / static_cast<double>(k) * power;
    }
    return out;
  }
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  for (const auto& z : eigenvalues(g)) {
    if (std::abs(z.imag()) <= 1e-13 * scale && z.real() <= 1e-13 * scale)
      throw PrincipalLogUndefined("logm: eigenvalue " + std::to_string(z.real()) +
                                  " on the closed negative real axis");
  }
  Matrix x = g;
  int s = 0;
  while (norm1(x - I) > 0.25 && s < 64) {
    x = sqrtm_db(x);
    ++s;
  }
  const Matrix E = x - I;
  const Quadrature& q = gauss_legendre();
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < q.nodes.size(); ++j)
    out += q.weights(j) * (I + q.nodes(j) * E).partialPivLu().solve(E);
  return std::ldexp(1.0, s) * out;
}

GroupElement step_invariant(const LieAlgebra& a, const std::function<Element(const Vector&)>& a_of_u,
                            const Vector& u, double T) {
  const Element x = a_of_u(u);
  if (x.size() != a.dim()) throw InputError("step_invariant: A(u) has wrong dimension");
  return {expm(T * a.to_matrix(x))};
}

const std::vector<BchEntry>& bch_table() {
  // Right-nested words in X, Y ending in XY; generated from the Dynkin form and
  // reduced to this spanning set.
  static const std::vector<BchEntry> table = {
      {1, "X", 1.0},
      {1, "Y", 1.0},
      {2, "XY", 1.0 / 2},
      {3, "XXY", 1.0 / 12},
      {3, "YXY", -1.0 / 12},
      {4, "XYXY", -1.0 / 48},
      {4, "YXXY", -1.0 / 48},
      {5, "XXXXY", -1.0 / 720},
      {5, "XYXXY", -1.0 / 120},
      {5, "XYYXY", -1.0 / 360},
      {5, "YXXXY", 1.0 / 360},
      {5, "YXYXY", 1.0 / 120},
      {5, "YYYXY", 1.0 / 720},
      {6, "XXXYXY", 1.0 / 2160},
      {6, "XXYXXY", -1.0 / 1440},
      {6, "XXYYXY", -1.0 / 1440},
      {6, "XYXXXY", 1.0 / 2160},
      {6, "XYXYXY", 1.0 / 360},
      {6, "XYYXXY", -1.0 / 1440},
      {6, "XYYYXY", 1.0 / 2160},
      {6, "YXXXXY", 1.0 / 2160},
      {6, "YXXYXY", -1.0 / 1440},
      {6, "YXYXXY", 1.0 / 360},
      {6, "YXYYXY", 1.0 / 2160},
      {6, "YYXXXY", -1.0 / 1440},
      {6, "YYXYXY", -1.0 / 1440},
      {6, "YYYXXY", 1.0 / 2160},
  };
  return table;
}

Element bch_compose(const LieAlgebra& a, const Element& X, const Element& Y, int order,
                    std::string* warning) {
  if (X.size() != a.dim() || Y.size() != a.dim()) throw InputError("bch_compose: dimension mismatch");
  if (order < 1) throw InputError("bch_compose: order must be at least 1");
  if (order > kBchMaxOrder) {
    const NilpotencyResult nil = is_nilpotent(a);
    if (!(nil.nilpotent && nil.nilindex <= kBchMaxOrder) && warning)
      *warning = "series truncated at order " + std::to_string(kBchMaxOrder) +
                 "; omitted terms are O((||X|| + ||Y||)^" + std::to_string(kBchMaxOrder + 1) + ")";
    order = kBchMaxOrder;
  }
  const Element xy = a.bracket(X, Y);
  Element out = Element::Zero(a.dim());
  for (const auto& e : bch_table()) {
    if (e.order > order) break;
    if (e.order == 1) {
      out += e.coeff * (e.word == "X" ? X : Y);
      continue;
    }
    Element acc = xy;
    for (std::size_t k = e.word.size() - 2; k-- > 0;) acc = a.bracket(e.word[k] == 'X' ? X : Y, acc);
    out += e.coeff * acc;
  }
  return out;
}

Element adjoint_flow_step(const LieAlgebra& a, const Element& A, double T, const Element& X) {
  const Matrix ad = a.ad(T * A);
  const double nrm = spectral_norm(ad);
  if (nrm > 1.0) return expm(ad) * X;  // the plain series loses digits to cancellation here
  Element out = X, term = X;
  const double ref = std::max(X.norm(), 1e-300);
  for (int k = 1; k < 200; ++k) {
    term = ad * term / static_cast<double>(k);
    const double tn = term.norm();
    out += term;
    if (tn == 0.0 || tn < 1e-16 * ref) break;
  }
  return out;
}

}  // namespace liestab
