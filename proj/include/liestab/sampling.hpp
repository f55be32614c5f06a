#pragma once

#include "liestab/algebra.hpp"

#include <functional>
#include <string>
#include <vector>

namespace liestab {

/// Scaling and squaring with the degree-13 diagonal Pade approximant. Strictly
/// triangular input takes the terminating power series instead.
Matrix expm(const Matrix& m);

/// Principal logarithm by inverse scaling and squaring: square roots until
/// ||X - I|| < 1/4, then a Gauss-Legendre evaluation of log(I + E). Unipotent
/// triangular input takes the terminating series. Throws PrincipalLogUndefined
/// when an eigenvalue lies on the closed negative real axis.
Matrix logm(const Matrix& g);

/// Element of a matrix group with a link back to its algebra coordinates.
struct GroupElement {
  Matrix matrix;
  static GroupElement exp(const LieAlgebra& a, const Element& x) { return {expm(a.to_matrix(x))}; }
  Element log(const LieAlgebra& a) const { return a.from_matrix(logm(matrix)); }
  GroupElement operator*(const GroupElement& o) const { return {matrix * o.matrix}; }
};

/// Zero-order-hold sampling of dPsi/dt = A(u) Psi over one period T when A(u)
/// is constant on the interval: the factor exp(T A(u)).
GroupElement step_invariant(const LieAlgebra& a, const std::function<Element(const Vector&)>& a_of_u,
                            const Vector& u, double T);

/// One coefficient of the truncated series: coeff * [w_1, [w_2, [..., [X, Y]]]]
/// with every w_i in {X, Y}; `word` lists the letters left to right ("XXY").
struct BchEntry {
  int order;
  std::string word;
  double coeff;
};
const std::vector<BchEntry>& bch_table();
inline constexpr int kBchMaxOrder = 6;

/// log(exp X exp Y) truncated after `order` (<= 6). Orders above the table are
/// accepted on algebras nilpotent with nilindex <= 6; otherwise a warning is
/// written to `warning` and the series stops at order 6.
Element bch_compose(const LieAlgebra& a, const Element& X, const Element& Y, int order = kBchMaxOrder,
                    std::string* warning = nullptr);

/// e^{ad_{T A}} X by the ad series, stopped once the next term is below 1e-14
/// relative (or exactly zero on nilpotent algebras).
Element adjoint_flow_step(const LieAlgebra& a, const Element& A, double T, const Element& X);

}  // namespace liestab
