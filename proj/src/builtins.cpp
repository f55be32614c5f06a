#include "liestab/builtins.hpp"

#include "liestab/errors.hpp"
#include "liestab/sampling.hpp"

#include <cmath>

namespace liestab {

namespace {

const Matrix& error_gain() {
  static const Matrix K = (Matrix(3, 3) << -0.75, 0.25, 0.0, -0.25, -0.75, 0.0, 0.0, 0.0, -0.99).finished();
  return K;
}

Element reference_direction() { return (Element(3) << 1.0, 2.0, 3.0).finished(); }

Matrix project12() { return Vector((Vector(3) << 1.0, 1.0, 0.0).finished()).asDiagonal(); }

Term term(std::vector<Letter> letters, double c) {
  Term t;
  t.word.letters = std::move(letters);
  t.coeff = Vector::Constant(1, c);
  return t;
}

double g1(long k) { return 2.0 * (1.0 - k * std::pow(1.1, -0.5 * k)) * std::sin(10.0 * k); }
double g2(long k) { return (2.0 - static_cast<double>(k) * k * std::pow(1.1, -2.0 * k)) * std::cos(20.0 * k); }

Vector solvable_input(long k) {
  const Element W0 = (Element(6) << 0, 0, 0, 1, 7, 6).finished();
  const long j = k == 0 ? 0 : k - 1;
  Vector W(12);
  W << g1(j) * W0, g2(j) * W0;
  return W;
}

}  // namespace

ClassASystem build_error_dynamics_example(bool printed_variant) {
  LieAlgebra g = catalog::heisenberg();
  const Matrix& K = error_gain();
  const Matrix A = Matrix::Identity(3, 3) + K;
  const Slot e = Slot::X(0), W = Slot::W(0);
  std::vector<Term> terms;
  terms.push_back(term({Letter(e, K), Letter(e)}, 0.5));
  // The variant loop writes A e inside the second bracket.
  const Matrix first = printed_variant ? Matrix(project12() * A) : K;
  terms.push_back(term({Letter(e, first), Letter(W, project12())}, -1.5));
  return make_system(printed_variant ? "example-4.1-printed" : "example-4.1", std::move(g), 1, 1, A,
                     std::move(terms), {}, Subspace::full(3));
}

Element error_dynamics_group_step(const Element& e, double w) {
  static const LieAlgebra g = catalog::heisenberg();
  const Element W = reference_direction() * w;
  const Element u = error_gain() * e - W;
  const GroupElement next = GroupElement::exp(g, 2.0 * W) * GroupElement::exp(g, u) * GroupElement::exp(g, -W) *
                            GroupElement::exp(g, e);
  return next.log(g);
}

ClassASystem build_solvable_example() {
  LieAlgebra g = catalog::upper_triangular();
  const Matrix A = kron((Matrix(2, 2) << -0.5, 0.5, 0.5, 0.25).finished(), Matrix::Identity(6, 6));
  auto family = [](std::vector<std::pair<Slot, double>> base, Slot target, int output, double scale) {
    GeneratedFamily f;
    f.base = std::move(base);
    f.target = target;
    f.output = output;
    f.scale = scale;
    return f;
  };
  const Slot X1 = Slot::X(0), X2 = Slot::X(1), W1 = Slot::W(0), W2 = Slot::W(1);
  std::vector<GeneratedFamily> families = {
      family({{W1, 1.0}}, X1, 0, 0.5),
      family({{X2, 1.0}}, X1, 0, -1.0),
      family({{W2, 1.0}}, X2, 0, 0.5),
      family({{X2, 1.0}}, X1, 1, 0.5),
      family({{X1, 1.0}, {W1, 1.0}}, X2, 1, 0.25),
  };
  const Subspace h = derived_algebra(g);
  return make_system("example-6.1", std::move(g), 2, 2, A, {}, std::move(families), h);
}

ExoSignal solvable_example_signal() {
  double beta = 0.0;
  for (long k = 0; k <= 20000; ++k) beta = std::max(beta, product_norm(solvable_input(k), 6));
  ExoSignal w = ExoSignal::function(solvable_input, beta, 1.0, 2, 6,
                                    "W[k+1] = (g1(k), g2(k)) W0, W0 = t4 + 7 t5 + 6 t6");
  w.set_ideal_valued(true);
  return w;
}

ClassASystem build_heisenberg_deadbeat() {
  LieAlgebra g = catalog::heisenberg();
  Matrix A = Matrix::Zero(3, 3);
  A(0, 1) = 1.0;
  A(1, 0) = -1.0;
  A(0, 0) = 1.0;
  A(1, 1) = -1.0;  // [[1, 1], [-1, -1]] squares to zero
  const Matrix K = (Vector(3) << 1.0, 2.0, 0.0).finished().asDiagonal();
  const Slot X = Slot::X(0), W = Slot::W(0);
  std::vector<Term> terms = {term({Letter(X, K), Letter(X)}, 0.5), term({Letter(X), Letter(W)}, 1.0)};
  return make_system("heisenberg-deadbeat", std::move(g), 1, 1, A, std::move(terms), {}, Subspace::full(3));
}

ClassASystem build_upper_triangular_deadbeat() {
  LieAlgebra g = catalog::upper_triangular();
  Matrix A = Matrix::Zero(6, 6);
  A(1, 0) = 1.0;  // t1 -> t2 -> t3 -> 0
  A(2, 1) = 1.0;
  A(4, 3) = 1.0;  // t4 -> t5 -> t6 -> 0
  A(5, 4) = 1.0;
  const Slot X = Slot::X(0), W = Slot::W(0);
  std::vector<Term> terms = {term({Letter(X), Letter(W)}, 1.0), term({Letter(X, A), Letter(X)}, 0.5)};
  GeneratedFamily f;
  f.base = {{W, 1.0}};
  f.target = X;
  f.scale = 0.5;
  const Subspace h = derived_algebra(g);
  return make_system("upper-triangular-deadbeat", std::move(g), 1, 1, A, std::move(terms), {f}, h);
}

std::vector<std::string> builtin_names() {
  return {"example-4.1", "example-4.1-printed", "example-6.1", "heisenberg-deadbeat", "upper-triangular-deadbeat"};
}

Scenario builtin(const std::string& name) {
  Scenario s;
  s.name = name;
  if (name == "example-4.1" || name == "example-4.1-printed") {
    const bool printed = name == "example-4.1-printed";
    s.system = build_error_dynamics_example(printed);
    s.signal = ExoSignal::geometric(reference_direction(), 2.0, 1, 3);
    s.signal.set_ideal_valued(true);
    s.X0 = (Vector(3) << 3.0, 2.0, -1.0).finished();
    s.horizon = 50;
    s.M = 5.0;
    s.description = "Heisenberg tracking error, e[0] = 3 h1 + 2 h2 - h3, w[0] = 1, w+ = 2 w";
    if (printed) s.notes.push_back("printed closed loop; differs from the exact error dynamics by 3/2 [e, W]");
  } else if (name == "example-6.1") {
    s.system = build_solvable_example();
    s.signal = solvable_example_signal();
    s.X0 = (Vector(12) << 1, -1, 0.5, 1, -2, 1, -0.5, 1, 1, 0.5, 1, -1).finished();
    s.horizon = 200;
    s.M = s.X0.norm();
    s.description = "upper-triangular coupled system with the oscillating input";
    s.notes.push_back("initial condition chosen here; the example fixes none");
  } else if (name == "heisenberg-deadbeat") {
    s.system = build_heisenberg_deadbeat();
    s.signal = ExoSignal::geometric((Vector(3) << 0.5, -0.25, 1.0).finished(), 1.0, 1, 3);
    s.signal.set_ideal_valued(true);
    s.X0 = (Vector(3) << 2.0, -1.0, 3.0).finished();
    s.horizon = 10;
    s.M = 10.0;
    s.description = "nilpotent linear part on the Heisenberg algebra, h = g";
  } else if (name == "upper-triangular-deadbeat") {
    s.system = build_upper_triangular_deadbeat();
    s.signal = ExoSignal::geometric((Vector(6) << 0, 0, 0, 1.0, -0.5, 0.25).finished(), 1.0, 1, 6);
    s.signal.set_ideal_valued(true);
    s.X0 = (Vector(6) << 1.0, -2.0, 0.5, 1.0, 1.0, -1.0).finished();
    s.horizon = 20;
    s.M = 10.0;
    s.description = "nilpotent linear part on the upper-triangular algebra, h = span{t4, t5, t6}";
  } else {
    throw InputError("unknown builtin '" + name + "'");
  }
  return s;
}

}  // namespace liestab
