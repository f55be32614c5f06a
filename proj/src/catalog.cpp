#include "liestab/algebra.hpp"
#include "liestab/errors.hpp"

#include <string>

namespace liestab::catalog {

namespace {

Matrix unit(int m, int row, int col) {
  Matrix e = Matrix::Zero(m, m);
  e(row, col) = 1.0;
  return e;
}

}  // namespace

LieAlgebra heisenberg() {
  return LieAlgebra::from_matrix_basis("heisenberg", {unit(3, 0, 1), unit(3, 1, 2), -unit(3, 0, 2)},
                                       {"h1", "h2", "h3"});
}

LieAlgebra upper_triangular() {
  return LieAlgebra::from_matrix_basis(
      "upper-triangular",
      {unit(3, 0, 0), unit(3, 1, 1), unit(3, 2, 2), unit(3, 0, 1), unit(3, 1, 2), unit(3, 0, 2)},
      {"t1", "t2", "t3", "t4", "t5", "t6"});
}

LieAlgebra abelian(int dim) { return LieAlgebra::abelian(dim); }

LieAlgebra sl2() {
  Matrix h = Matrix::Zero(2, 2);
  h(0, 0) = 1.0;
  h(1, 1) = -1.0;
  return LieAlgebra::from_matrix_basis("sl2", {unit(2, 0, 1), unit(2, 1, 0), h}, {"e", "f", "h"});
}

LieAlgebra se2() {
  Matrix rot = Matrix::Zero(3, 3);
  rot(0, 1) = -1.0;
  rot(1, 0) = 1.0;
  return LieAlgebra::from_matrix_basis("se2", {rot, unit(3, 0, 2), unit(3, 1, 2)},
                                       {"r", "x", "y"});
}

std::vector<LieAlgebra> all() {
  return {heisenberg(), upper_triangular(), abelian(1), abelian(3), sl2(), se2()};
}

LieAlgebra by_name(const std::string& name) {
  if (name == "heisenberg") return heisenberg();
  if (name == "upper-triangular") return upper_triangular();
  if (name == "sl2") return sl2();
  if (name == "se2") return se2();
  const std::string prefix = "abelian-";
  if (name.rfind(prefix, 0) == 0) {
    int d = 0;
    try {
      d = std::stoi(name.substr(prefix.size()));
    } catch (const std::exception&) {
      throw InputError("bad abelian algebra name: " + name);
    }
    if (d <= 0) throw InputError("abelian dimension must be positive");
    return abelian(d);
  }
  throw InputError("unknown catalog algebra: " + name);
}

}  // namespace liestab::catalog
