#include "liestab/dynamics.hpp"

#include "liestab/errors.hpp"
#include "liestab/parallel.hpp"
#include "liestab/sampling.hpp"

#include <unsupported/Eigen/NonLinearOptimization>

#include <algorithm>
#include <cmath>
#include <random>

namespace liestab {

std::string Slot::label() const {
  return (kind == SlotKind::State ? "X" : "W") + std::to_string(index + 1);
}

bool Word::has_state_letter() const {
  return std::any_of(letters.begin(), letters.end(),
                     [](const Letter& l) { return l.slot.kind == SlotKind::State; });
}

double term_weight(const Term& t) {
  double w = t.coeff.lpNorm<1>();
  for (const auto& l : t.word.letters)
    if (l.has_map()) w *= spectral_norm(l.map);
  return w;
}

namespace {

void check_slot(const Slot& s, int n, int r, const std::string& where) {
  const int limit = s.kind == SlotKind::State ? n : r;
  if (s.index < 0 || s.index >= limit) throw InputError(where + ": slot " + s.label() + " out of range");
}

}  // namespace

ClassASystem make_system(std::string name, LieAlgebra algebra, int n, int r, Matrix A,
                         std::vector<Term> terms, std::vector<GeneratedFamily> families,
                         Subspace ideal, NormKind norm, double mu) {
  if (n <= 0) throw InputError("state multiplicity n must be positive");
  if (r < 0) throw InputError("input multiplicity r must be non-negative");
  const int d = algebra.dim();
  if (A.rows() != n * d || A.cols() != n * d)
    throw InputError("linear part must be " + std::to_string(n * d) + " x " + std::to_string(n * d));
  if (!A.allFinite()) throw InputError("linear part has non-finite entries");
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const std::string where = "term " + std::to_string(t + 1);
    if (terms[t].word.letters.empty()) throw InputError(where + ": empty word");
    if (terms[t].coeff.size() != n) throw InputError(where + ": coefficient must have length n");
    if (!terms[t].coeff.allFinite()) throw InputError(where + ": coefficient is not finite");
    for (const auto& l : terms[t].word.letters) {
      check_slot(l.slot, n, r, where);
      if (l.has_map() && (l.map.rows() != d || l.map.cols() != d))
        throw InputError(where + ": letter map must be d x d");
    }
  }
  for (std::size_t f = 0; f < families.size(); ++f) {
    const std::string where = "family " + std::to_string(f + 1);
    check_slot(families[f].target, n, r, where);
    for (const auto& [slot, coeff] : families[f].base) {
      check_slot(slot, n, r, where);
      if (!std::isfinite(coeff)) throw InputError(where + ": base coefficient is not finite");
    }
    if (families[f].output < 0 || families[f].output >= n) throw InputError(where + ": output slot out of range");
    if (families[f].cutoff < 0 || families[f].cutoff > 30) throw InputError(where + ": cutoff must be in 0..30");
  }
  if (ideal.ambient() != d) throw InputError("ideal lives in a different algebra");
  const Subspace g = Subspace::full(d);
  if (!ideal.contains(subspace_bracket(algebra, g, ideal)))
    throw InputError("the chosen subspace is not an ideal");
  if (!ideal.contains(derived_algebra(algebra)))
    throw InputError("the chosen ideal does not contain the derived algebra");

  ClassASystem sys;
  sys.name = std::move(name);
  sys.n = n;
  sys.r = r;
  sys.A = std::move(A);
  sys.terms = std::move(terms);
  sys.families = std::move(families);
  sys.ideal = ideal;
  sys.chain = lower_central_series(algebra, ideal);
  sys.quotients = chain_quotients(algebra, sys.chain);
  sys.norm = norm;
  sys.mu = mu > 0.0 ? mu : default_mu(algebra);
  sys.algebra = std::move(algebra);
  return sys;
}

namespace {

Element slot_value(const ClassASystem& sys, const Slot& s, const Vector& X, const Vector& W) {
  const int d = sys.d();
  const Vector& src = s.kind == SlotKind::State ? X : W;
  return src.segment(static_cast<Eigen::Index>(s.index) * d, d);
}

// (e^M - I) t without cancellation: exp([[M, M t], [0, 0]]) carries it in the last column.
Element exp_minus_identity(const Matrix& M, const Element& t) {
  const Eigen::Index d = M.rows();
  Matrix aug = Matrix::Zero(d + 1, d + 1);
  aug.topLeftCorner(d, d) = M;
  aug.topRightCorner(d, 1) = M * t;
  return expm(aug).topRightCorner(d, 1);
}

}  // namespace

Element letter_value(const ClassASystem& sys, const Letter& l, const Vector& X, const Vector& W) {
  Element v = slot_value(sys, l.slot, X, W);
  if (l.has_map()) v = l.map * v;
  return v;
}

Element word_value(const ClassASystem& sys, const Word& w, const Vector& X, const Vector& W) {
  Element acc = letter_value(sys, w.letters.back(), X, W);
  for (std::size_t k = w.letters.size() - 1; k-- > 0;) {
    if (acc.isZero(0.0)) return acc;
    acc = sys.algebra.bracket(letter_value(sys, w.letters[k], X, W), acc);
  }
  return acc;
}

Vector nonlinear_part(const ClassASystem& sys, const Vector& X, const Vector& W) {
  const int d = sys.d();
  if (X.size() != sys.state_size()) throw InputError("state has wrong size");
  if (W.size() != sys.input_size()) throw InputError("input has wrong size");
  Vector out = Vector::Zero(sys.state_size());
  for (const auto& t : sys.terms) {
    const Element w = word_value(sys, t.word, X, W);
    for (int j = 0; j < sys.n; ++j)
      if (t.coeff(j) != 0.0) out.segment(static_cast<Eigen::Index>(j) * d, d) += t.coeff(j) * w;
  }
  for (const auto& f : sys.families) {
    Element b = Element::Zero(d);
    for (const auto& [slot, coeff] : f.base) b += coeff * slot_value(sys, slot, X, W);
    const Element target = slot_value(sys, f.target, X, W);
    if (b.isZero(0.0) || target.isZero(0.0)) continue;
    out.segment(static_cast<Eigen::Index>(f.output) * d, d) += f.scale * exp_minus_identity(sys.algebra.ad(b), target);
  }
  return out;
}

Vector eval(const ClassASystem& sys, const Vector& X, const Vector& W) {
  return sys.A * X + nonlinear_part(sys, X, W);
}

// --------------------------------------------------------- family expansion

FamilyExpansion expand_family(const ClassASystem& sys, const GeneratedFamily& fam, double radius) {
  double b1 = 0.0;
  for (const auto& [slot, coeff] : fam.base) b1 += std::abs(coeff);
  const double x = sys.mu * b1 * radius;
  // Remainder of sum_{l > L} x^l / l! is at most x^{L+1} / (L+1)! e^x.
  auto tail = [&](int L) {
    double term = 1.0;
    for (int l = 1; l <= L + 1; ++l) term *= x / l;
    return std::abs(fam.scale) * radius * term * std::exp(x);
  };
  const int nil = is_nilpotent(sys.algebra).nilindex;  // words longer than nil vanish
  FamilyExpansion out;
  int L = fam.cutoff;
  if (L == 0) {
    L = 1;
    while (L < 30 && tail(L) >= fam.tail_tolerance && !(nil > 0 && L + 1 >= nil)) ++L;
  }
  out.cutoff = L;
  out.tail_bound = (nil > 0 && L + 1 >= nil) ? 0.0 : tail(L);
  if (fam.cutoff > 0 && out.tail_bound > fam.tail_tolerance) {
    int need = L;
    while (need < 200 && tail(need) > fam.tail_tolerance) ++need;
    throw InputError("family cutoff " + std::to_string(L) + " misses the tail tolerance; needs L = " +
                     std::to_string(need));
  }
  const std::size_t nb = fam.base.size();
  double words = 0.0;
  for (int l = 1; l <= L; ++l) words += std::pow(static_cast<double>(nb), l);
  if (words > 2e6) throw InputError("family expansion would produce too many words");
  if (nb == 0) return out;

  std::vector<std::size_t> idx;
  double fact = 1.0;
  for (int l = 1; l <= L; ++l) {
    fact *= l;
    idx.assign(static_cast<std::size_t>(l), 0);
    while (true) {
      Term t;
      double c = fam.scale / fact;
      for (std::size_t k : idx) {
        t.word.letters.emplace_back(fam.base[k].first);
        c *= fam.base[k].second;
      }
      t.word.letters.emplace_back(fam.target);
      t.coeff = Vector::Zero(sys.n);
      t.coeff(fam.output) = c;
      if (c != 0.0) out.terms.push_back(std::move(t));
      std::size_t pos = 0;
      while (pos < idx.size() && ++idx[pos] == nb) idx[pos++] = 0;
      if (pos == idx.size()) break;
    }
  }
  if (sys.algebra.structure_constants().end() ==
      std::find_if(sys.algebra.structure_constants().begin(), sys.algebra.structure_constants().end(),
                   [](double v) { return v != 0.0; }))
    out.terms.clear();  // abelian: every bracket vanishes
  return out;
}

// --------------------------------------------------------------- simulate

Trajectory simulate(const ClassASystem& sys, const Vector& X0, const ExoSignal& w, long k_max,
                    double divergence_threshold) {
  if (k_max < 0) throw InputError("horizon must be non-negative");
  if (X0.size() != sys.state_size()) throw InputError("initial state has wrong size");
  if (w.r() != sys.r || w.d() != sys.d()) throw InputError("signal does not match the system inputs");
  Trajectory tr;
  tr.n = sys.n;
  tr.d = sys.d();
  const auto record = [&](const Vector& X) {
    tr.states.push_back(X);
    tr.norms.push_back(product_norm(X, sys.d(), sys.norm));
    std::vector<double> q;
    for (const auto& ctx : sys.quotients) {
      if (ctx.degenerate()) {
        q.push_back(0.0);
        continue;
      }
      const Vector bar = ctx.stacked_P(sys.n) * X;
      q.push_back(product_norm(bar, ctx.quotient_dim(), sys.norm));
    }
    tr.qnorms.push_back(std::move(q));
  };
  Vector X = X0;
  record(X);
  for (long k = 0; k < k_max; ++k) {
    const Vector W = w.at(k);
    tr.inputs.push_back(W);
    X = eval(sys, X, W);
    if (!X.allFinite() || product_norm(X, sys.d(), sys.norm) > divergence_threshold) {
      tr.diverged = true;
      tr.first_bad = k + 1;
      break;
    }
    record(X);
  }
  return tr;
}

// ----------------------------------------------------------- equilibrium

namespace {

struct FixedPointResidual {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Vector;
  using ValueType = Vector;
  using JacobianType = Matrix;

  const ClassASystem* sys = nullptr;
  Vector W;

  int inputs() const { return sys->state_size(); }
  int values() const { return sys->state_size(); }
  int operator()(const Vector& x, Vector& fvec) const {
    fvec.resize(x.size());
    if (!x.allFinite()) {
      fvec.setConstant(1e150);
      return 0;
    }
    try {
      fvec = eval(*sys, x, W) - x;
    } catch (const InputError&) {  // e^ad overflowed far from the origin
      fvec.setConstant(1e150);
    }
    if (!fvec.allFinite()) fvec.setConstant(1e150);
    return 0;
  }
};

bool family_reads_state(const GeneratedFamily& f) {
  if (f.target.kind == SlotKind::State) return true;
  return std::any_of(f.base.begin(), f.base.end(),
                     [](const auto& p) { return p.first.kind == SlotKind::State && p.second != 0.0; });
}

}  // namespace

EquilibriumReport check_equilibrium_uniqueness(const ClassASystem& sys, const ExoSignal& w,
                                               double search_radius, int starts, std::uint64_t seed) {
  EquilibriumReport rep;
  for (std::size_t t = 0; t < sys.terms.size(); ++t)
    if (!sys.terms[t].word.has_state_letter() && !sys.terms[t].coeff.isZero(0.0)) {
      rep.structural_ok = false;
      rep.structural_issues.push_back("term " + std::to_string(t + 1) + " has no state letter");
    }
  for (std::size_t f = 0; f < sys.families.size(); ++f)
    if (!family_reads_state(sys.families[f]) && sys.families[f].scale != 0.0) {
      const bool base_has_input = std::any_of(sys.families[f].base.begin(), sys.families[f].base.end(),
                                              [](const auto& p) { return p.second != 0.0; });
      if (base_has_input) {
        rep.structural_ok = false;
        rep.structural_issues.push_back("family " + std::to_string(f + 1) + " produces input-only words");
      }
    }

  // Linear-part argument: level by level the fixed-point equation reduces to
  // X_bar = A_bar X_bar, which forces zero when 1 is not an eigenvalue.
  bool one_in_spectrum = false;
  for (const auto& z : eigenvalues(sys.A))
    if (std::abs(z - std::complex<double>(1.0, 0.0)) < 1e-10) one_in_spectrum = true;
  const bool h_is_g = sys.ideal.dim() == sys.d();
  const QuotientContext& q0 = sys.quotients.front();
  const bool w_in_h = w.ideal_valued() && ideal_residual(w, q0, 64) < 1e-10;
  if (!rep.structural_ok) {
    rep.linear_argument = "structural check failed";
  } else if (one_in_spectrum) {
    rep.linear_argument = "A has eigenvalue 1";
  } else if (!sys.chain.terminated) {
    rep.linear_argument = "ideal is not nilpotent";
  } else if (!(h_is_g || w_in_h)) {
    rep.linear_argument = "input does not take values in the ideal";
  } else {
    rep.linear_certificate = true;
    rep.linear_argument = "1 is not an eigenvalue of A; quotient levels force each X_bar_i = 0 in turn";
  }

  // Starts are drawn serially so the result does not depend on the thread count.
  std::mt19937_64 rng(seed);
  rep.starts = starts;
  std::vector<Vector> x0(static_cast<std::size_t>(std::max(starts, 0)));
  for (auto& x : x0) x = random_in_ball(sys.state_size(), search_radius, rng);
  std::vector<char> hit(x0.size(), 0);
  std::vector<Vector> found(x0.size());
  parallel_for(x0.size(), [&](std::size_t s) {
    FixedPointResidual fn;
    fn.sys = &sys;
    fn.W = sys.r > 0 ? w.at(static_cast<long>(s % 16)) : Vector(0);
    Vector x = x0[s];
    // Powell's hybrid method with a forward-difference Jacobian.
    Eigen::HybridNonLinearSolver<FixedPointResidual> solver(fn);
    solver.parameters.maxfev = 600;
    solver.solveNumericalDiff(x);
    Vector res;
    fn(x, res);
    const double xn = x.norm();
    hit[s] = res.norm() < 1e-8 && xn > 1e-4 && std::isfinite(xn);
    found[s] = x;
  });
  for (std::size_t s = 0; s < x0.size() && rep.violations.size() < 10; ++s)
    if (hit[s]) rep.violations.push_back(found[s]);
  return rep;
}

// -------------------------------------------------------------- invariance

bool InvarianceReport::passed(double tol) const {
  for (double r : level_residuals)
    if (r > tol) return false;
  return letter_map_residual <= tol && nonlinear_residual <= 1e-9;
}

InvarianceReport check_invariance(const ClassASystem& sys, int samples, std::uint64_t seed) {
  InvarianceReport rep;
  std::mt19937_64 rng(seed);
  for (const auto& level : sys.chain.ideals) {
    rep.level_residuals.push_back(invariance_residual(sys.A, level, sys.n));
    for (const auto& t : sys.terms)
      for (const auto& l : t.word.letters)
        if (l.has_map()) rep.letter_map_residual = std::max(rep.letter_map_residual, invariance_residual(l.map, level));
    if (level.dim() == 0) continue;
    const Matrix B = block_diagonal(level.basis(), sys.n);
    for (int s = 0; s < samples; ++s) {
      const Vector X = B * random_vector(B.cols(), rng);
      const Vector W = random_vector(sys.input_size(), rng);
      const Vector f = eval(sys, X, W);
      const double res = (f - B * (B.transpose() * f)).norm() / std::max(1.0, f.norm());
      rep.nonlinear_residual = std::max(rep.nonlinear_residual, res);
    }
  }
  return rep;
}

// ---------------------------------------------------------------- jacobian

bool JacobianReport::passed(double min_order) const {
  const double ex = coord_error_X.empty() ? 0.0 : coord_error_X.back();
  const double ew = coord_error_W.empty() ? 0.0 : coord_error_W.back();
  if (ex > 1e-6 || ew > 1e-6) return false;
  return exact || observed_order >= min_order;
}

JacobianReport jacobian_check(const ClassASystem& sys, const std::vector<double>& steps, std::uint64_t seed) {
  JacobianReport rep;
  rep.steps = steps;
  const int nx = sys.state_size(), nw = sys.input_size();
  const Vector zx = Vector::Zero(nx), zw = Vector::Zero(nw);
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Vector, Vector>> dirs;
  for (int k = 0; k < 5; ++k) {
    Vector vx = random_vector(nx, rng), vw = random_vector(nw, rng);
    const double nrm = std::sqrt(vx.squaredNorm() + vw.squaredNorm());
    dirs.emplace_back(vx / nrm, vw / nrm);
  }
  const double scale = std::max(1.0, spectral_norm(sys.A));
  std::vector<double> floors;
  for (double h : steps) {
    Matrix JX(nx, nx), JW(nx, nw);
    for (int j = 0; j < nx; ++j) {
      const Vector e = h * Vector::Unit(nx, j);
      JX.col(j) = (eval(sys, e, zw) - eval(sys, -e, zw)) / (2.0 * h);
    }
    for (int j = 0; j < nw; ++j) {
      const Vector e = h * Vector::Unit(nw, j);
      JW.col(j) = (eval(sys, zx, e) - eval(sys, zx, -e)) / (2.0 * h);
    }
    rep.coord_error_X.push_back((JX - sys.A).norm());
    rep.coord_error_W.push_back(JW.norm());
    double worst = 0.0;
    for (const auto& [vx, vw] : dirs) {
      const Vector fd = (eval(sys, h * vx, h * vw) - eval(sys, -h * vx, -h * vw)) / (2.0 * h);
      worst = std::max(worst, (fd - sys.A * vx).norm());
    }
    rep.direction_error.push_back(worst);
    floors.push_back(1e3 * std::numeric_limits<double>::epsilon() * scale / h);
  }
  // Order from a least-squares fit of log(error) against log(h) above the roundoff floor.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (rep.direction_error[i] <= floors[i]) continue;
    const double lx = std::log(steps[i]), ly = std::log(rep.direction_error[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  rep.exact = m == 0;
  if (m >= 2) rep.observed_order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return rep;
}

// ------------------------------------------------------- quotient dynamics

LieAlgebra quotient_algebra(const LieAlgebra& a, const QuotientContext& ctx) {
  const int q = ctx.quotient_dim();
  if (q == 0) throw InputError("quotient algebra is zero-dimensional");
  std::vector<double> c(static_cast<std::size_t>(q) * q * q, 0.0);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      const Vector v = ctx.P * a.bracket(ctx.iota.col(i), ctx.iota.col(j));
      for (int k = 0; k < q; ++k) {
        const double x = std::abs(v(k)) < 1e-15 ? 0.0 : v(k);
        c[(static_cast<std::size_t>(i) * q + j) * q + k] = x;
      }
    }
  // Enforce exact antisymmetry against roundoff in the projection.
  for (int i = 0; i < q; ++i)
    for (int j = i; j < q; ++j)
      for (int k = 0; k < q; ++k) {
        auto& cij = c[(static_cast<std::size_t>(i) * q + j) * q + k];
        auto& cji = c[(static_cast<std::size_t>(j) * q + i) * q + k];
        const double avg = 0.5 * (cij - cji);
        cij = avg;
        cji = -avg;
      }
  std::vector<std::string> labels;
  for (int i = 0; i < q; ++i) labels.push_back("q" + std::to_string(i + 1));
  return LieAlgebra(a.name() + "/quotient", q, std::move(c), std::move(labels));
}

QuotientSystem quotient_system(const ClassASystem& sys, int level) {
  if (level < 0 || level >= sys.levels()) throw InputError("quotient level out of range");
  QuotientSystem out;
  out.level = level;
  out.ctx = sys.quotients[static_cast<std::size_t>(level)];
  const QuotientContext& ctx = out.ctx;
  if (ctx.degenerate()) throw InputError("quotient at this level is zero-dimensional");
  const Matrix Abar = induced_map(ctx, sys.A, sys.n);
  std::vector<Term> terms = sys.terms;
  for (auto& t : terms)
    for (auto& l : t.word.letters)
      if (l.has_map()) {
        const double res = invariance_residual(l.map, ctx.ideal);
        if (res > 1e-10) throw InvarianceViolation("letter map does not preserve the ideal", res);
        l.map = ctx.P * l.map * ctx.iota;
      }
  LieAlgebra qa = quotient_algebra(sys.algebra, ctx);
  const Subspace qh = Subspace::span(ctx.P * sys.ideal.basis());
  out.system = make_system(sys.name + "/level" + std::to_string(level), std::move(qa), sys.n, sys.r, Abar,
                           std::move(terms), sys.families, qh.dim() > 0 ? qh : Subspace::zero(ctx.quotient_dim()),
                           sys.norm, sys.mu);
  return out;
}

double commuting_square_residual(const ClassASystem& sys, const QuotientSystem& q, int samples, double radius,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Matrix Px = q.ctx.stacked_P(sys.n), Pw = q.ctx.stacked_P(sys.r);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Vector X = radius * random_vector(sys.state_size(), rng);
    const Vector W = radius * random_vector(sys.input_size(), rng);
    const Vector lhs = Px * eval(sys, X, W);
    const Vector rhs = eval(q.system, Px * X, Pw * W);
    worst = std::max(worst, (lhs - rhs).norm() / std::max(1.0, lhs.norm()));
  }
  return worst;
}

// ---------------------------------------------------------------- majorant

MajorantReport class_a_majorant(const ClassASystem& sys, double radius) {
  if (radius < 0.0) throw InputError("majorant radius must be non-negative");
  MajorantReport rep;
  for (const auto& t : sys.terms) {
    const std::size_t len = t.word.size();
    if (rep.per_length.size() <= len) rep.per_length.resize(len + 1, 0.0);
    const double v = std::pow(sys.mu, static_cast<double>(len) - 1.0) * term_weight(t) *
                     std::pow(radius, static_cast<double>(len));
    rep.per_length[len] += v;
    rep.value += v;
  }
  for (const auto& f : sys.families) {
    double b1 = 0.0;
    for (const auto& [slot, coeff] : f.base) b1 += std::abs(coeff);
    rep.value += std::abs(f.scale) * radius * std::expm1(sys.mu * b1 * radius);
  }
  rep.finite = std::isfinite(rep.value);
  return rep;
}

}  // namespace liestab
