#include "liestab/stability.hpp"

#include "liestab/errors.hpp"
#include "liestab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

namespace liestab {

namespace {

double binomial(int n, int k) {
  double out = 1.0;
  for (int j = 1; j <= k; ++j) out = out * (n - k + j) / j;
  return out;
}

// Smallest sigma with ||Abar^k|| <= sigma Lambda^k for k <= kcap, in the product norm.
// Reports whether the ratio had clearly decayed by kcap.
std::pair<double, bool> power_sigma(const Matrix& Abar, double Lambda, int slot_dim, NormKind kind, int kcap = 500) {
  Matrix power = Matrix::Identity(Abar.rows(), Abar.cols());
  double best = 1.0, last = 1.0;
  for (int k = 1; k <= kcap; ++k) {
    power = power * Abar;
    const double nrm = product_operator_norm(power, slot_dim, kind);
    if (nrm == 0.0) return {best, true};
    last = nrm / std::pow(Lambda, k);
    if (!std::isfinite(last)) return {best, false};
    best = std::max(best, last);
  }
  return {best, last <= 1e-3 * best};
}

double adapted_sigma(const Matrix& Abar, double Lambda, int n, NormKind kind) {
  const double rho = spectral_radius(Abar);
  if (Lambda <= rho) return std::numeric_limits<double>::infinity();
  const AdaptedNorm an = adapted_norm(Abar, Lambda - rho);
  if (!an.certified()) return std::numeric_limits<double>::infinity();
  const double kappa = spectral_norm(an.transform) * spectral_norm(an.inverse);
  // ||x||_2 <= ||x||_sum <= sqrt(n) ||x||_2 for the slotwise sum norm.
  return kind == NormKind::Sum ? std::sqrt(static_cast<double>(n)) * kappa : kappa;
}

std::string letters_key(const Term& t) {
  std::string key;
  for (const auto& l : t.word.letters) key += l.slot.label() + ",";
  return key;
}

std::vector<Term> all_terms(const ClassASystem& sys, double radius) {
  std::vector<Term> terms = sys.terms;
  for (const auto& f : sys.families) {
    FamilyExpansion e = expand_family(sys, f, radius);
    for (auto& t : e.terms) terms.push_back(std::move(t));
  }
  return terms;
}

}  // namespace

// ------------------------------------------------------------- nilpotent

double claim1_gamma(const std::vector<double>& max_coeff_by_length, double mu, double iota_norm, int n, int r,
                    double alpha_prev, double M, double beta, int i) {
  double gamma = 0.0;
  for (int l = 2; l <= i; ++l) {
    const double c = l < static_cast<int>(max_coeff_by_length.size()) ? max_coeff_by_length[static_cast<std::size_t>(l)] : 0.0;
    if (c == 0.0) continue;
    double inner = 0.0;
    for (int q = 1; q <= l; ++q)
      inner += binomial(l, q) * std::pow(n, q) * std::pow(r, l - q) * std::pow(alpha_prev, q) * std::pow(M, q - 1) *
               std::pow(beta, l - q);
    gamma += c * std::pow(mu, l - 1) * std::pow(iota_norm, l) * inner;
  }
  return gamma;
}

std::vector<double> max_word_weight_by_length(const ClassASystem& sys, double radius) {
  std::map<std::string, std::pair<std::size_t, double>> grouped;
  for (const auto& t : all_terms(sys, radius)) {
    auto& entry = grouped[letters_key(t)];
    entry.first = t.word.size();
    entry.second += term_weight(t);
  }
  std::vector<double> out;
  for (const auto& [key, entry] : grouped) {
    if (out.size() <= entry.first) out.resize(entry.first + 1, 0.0);
    out[entry.first] = std::max(out[entry.first], entry.second);
  }
  return out;
}

NilpotentCertificate certify_nilpotent(const ClassASystem& sys, const ExoSignal& w, double M, double epsilon) {
  if (!is_nilpotent(sys.algebra).nilpotent) throw HypothesisError("algebra is not nilpotent");
  if (sys.ideal.dim() != sys.d()) throw HypothesisError("the nilpotent certificate needs the ideal to be all of g");
  if (!w.has_envelope()) throw HypothesisError("signal has no certified envelope");
  if (!(M > 0.0)) throw InputError("initial-condition bound M must be positive");

  NilpotentCertificate c;
  c.p = sys.nilindex();
  c.n = sys.n;
  c.r = sys.r;
  c.s_input = w.s();
  c.s = std::max(1.0, w.s());  // an envelope with rate s < 1 also holds with rate 1
  c.beta = w.beta();
  c.mu = sys.mu;
  c.M = M;
  c.rho_A = spectral_radius(sys.A);
  const int p = c.p;
  c.threshold = std::pow(c.s, 0.5 * p * (1 - p));
  if (c.rho_A >= c.threshold) {
    std::ostringstream os;
    os << "rho(A) = " << c.rho_A << " is not below the threshold " << c.threshold << " (margin " << c.margin() << ")";
    c.reason = os.str();
    return c;
  }
  c.epsilon = epsilon > 0.0 ? epsilon : 0.5 * (c.threshold - c.rho_A);
  if (c.rho_A + c.epsilon >= c.threshold) {
    c.reason = "epsilon too large: rho(A) + epsilon must stay below the threshold";
    return c;
  }
  c.Lambda = c.rho_A + c.epsilon;

  const std::size_t P1 = static_cast<std::size_t>(p) + 1;
  c.rho_levels.assign(P1, 0.0);
  c.Lambda_levels.assign(P1, 0.0);
  c.lambda_levels.assign(P1, 0.0);
  c.lambda_closed.assign(P1, 0.0);
  c.sigma_levels.assign(P1, 0.0);
  c.sigma_adapted.assign(P1, 0.0);
  c.gamma_levels.assign(P1, 0.0);
  c.alpha_levels.assign(P1, 0.0);
  c.max_coeff.assign(P1, {});
  const std::vector<double> max_coeff = max_word_weight_by_length(sys, M);

  for (int i = 1; i <= p; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const QuotientContext& ctx = sys.quotients[ui];
    const Matrix Abar = induced_map(ctx, sys.A, sys.n);
    c.rho_levels[ui] = spectral_radius(Abar);
    c.Lambda_levels[ui] = c.rho_levels[ui] + i * c.epsilon / (p + 1);
    c.lambda_levels[ui] = i == 1 ? c.Lambda : c.lambda_levels[ui - 1] * std::pow(c.s, i - 1);
    c.lambda_closed[ui] = c.Lambda * std::pow(c.s, 0.5 * i * (i - 1));
    if (std::abs(c.lambda_levels[ui] - c.lambda_closed[ui]) > 1e-12 * c.lambda_closed[ui]) c.ladder_consistent = false;

    if (i >= 2) {
      const double lp = c.lambda_levels[ui - 1];
      double best = 0.0;
      for (int l = 2; l <= i; ++l)
        for (int q = 1; q <= l; ++q) best = std::max(best, std::pow(lp, q) * std::pow(c.s, l - q));
      if (best > lp * std::pow(c.s, i - 1) * (1.0 + 1e-12)) c.max_at_top = false;
    }

    const auto [direct, decayed] = power_sigma(Abar, c.Lambda_levels[ui], ctx.quotient_dim(), sys.norm);
    c.sigma_adapted[ui] = adapted_sigma(Abar, c.Lambda_levels[ui], sys.n, sys.norm);
    c.sigma_levels[ui] = decayed ? direct : c.sigma_adapted[ui];

    std::vector<double> level_coeff(static_cast<std::size_t>(i) + 1, 0.0);
    for (int l = 2; l <= i && l < static_cast<int>(max_coeff.size()); ++l)
      level_coeff[static_cast<std::size_t>(l)] = max_coeff[static_cast<std::size_t>(l)];
    c.max_coeff[ui] = level_coeff;
    if (i >= 2) {
      const double iota = spectral_norm(sys.quotients[ui - 1].iota);
      c.gamma_levels[ui] = claim1_gamma(level_coeff, sys.mu, iota, sys.n, sys.r, c.alpha_levels[ui - 1], M, c.beta, i);
    }
    c.alpha_levels[ui] =
        c.sigma_levels[ui] * (1.0 + c.gamma_levels[ui] / (c.lambda_levels[ui] - c.Lambda_levels[ui]));
  }

  if (!std::isfinite(c.alpha())) {
    c.reason = "could not bound the powers of an induced map";
    return c;
  }
  if (!(c.lambda() < 1.0)) {
    c.reason = "final rate is not below 1";
    return c;
  }
  c.issued = true;
  c.reason = "certificate issued";
  return c;
}

std::vector<double> measured_forcing(const ClassASystem& sys, const Trajectory& tr, int level) {
  if (level < 0 || level >= sys.levels()) throw InputError("forcing level out of range");
  const QuotientContext& ctx = sys.quotients[static_cast<std::size_t>(level)];
  if (ctx.degenerate()) return std::vector<double>(tr.states.empty() ? 0 : tr.states.size() - 1, 0.0);
  const Matrix Abar = induced_map(ctx, sys.A, sys.n);
  const Matrix P = ctx.stacked_P(sys.n);
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < tr.states.size(); ++k) {
    const Vector u = P * tr.states[k + 1] - Abar * (P * tr.states[k]);
    out.push_back(product_norm(u, ctx.quotient_dim(), sys.norm));
  }
  return out;
}

std::vector<double> word_formula_forcing(const ClassASystem& sys, const Trajectory& tr, int level) {
  if (level < 1 || level >= sys.levels()) throw InputError("forcing level must be in 1..p");
  const QuotientContext& ctx = sys.quotients[static_cast<std::size_t>(level)];
  const QuotientContext& below = sys.quotients[static_cast<std::size_t>(level) - 1];
  if (ctx.degenerate()) return std::vector<double>(tr.states.empty() ? 0 : tr.states.size() - 1, 0.0);
  const int d = sys.d();
  const Matrix lift = below.degenerate() ? Matrix::Zero(d, d) : Matrix(below.iota * below.P);
  double radius = 1.0;
  for (const auto& X : tr.states) radius = std::max(radius, product_norm(X, d, sys.norm));
  const std::vector<Term> terms = all_terms(sys, radius);
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < tr.states.size(); ++k) {
    const Vector& X = tr.states[k];
    const Vector& W = tr.inputs[k];
    Vector u = Vector::Zero(static_cast<Eigen::Index>(sys.n) * ctx.quotient_dim());
    for (const auto& t : terms) {
      std::vector<Element> letters;
      for (const auto& l : t.word.letters) letters.push_back(lift * letter_value(sys, l, X, W));
      const Element pw = ctx.P * nested_bracket(sys.algebra, letters);
      for (int j = 0; j < sys.n; ++j)
        u.segment(static_cast<Eigen::Index>(j) * ctx.quotient_dim(), ctx.quotient_dim()) += t.coeff(j) * pw;
    }
    out.push_back(product_norm(u, ctx.quotient_dim(), sys.norm));
  }
  return out;
}

// -------------------------------------------------------------- solvable

SolvableReport certify_solvable(const ClassASystem& sys, const ExoSignal& w, const std::vector<Vector>& X0s,
                                long horizon, double decay_tol) {
  SolvableReport rep;
  rep.solvable = is_solvable(sys.algebra).solvable;
  if (!rep.solvable) throw HypothesisError("algebra is not solvable");
  rep.ideal_nilpotent = sys.chain.terminated;
  if (!rep.ideal_nilpotent) throw HypothesisError("the invariance ideal is not nilpotent");
  rep.p = sys.nilindex();
  rep.rho_A = spectral_radius(sys.A);
  rep.schur_margin = 1.0 - rep.rho_A;
  rep.schur = rep.schur_margin > 1e-12;

  const QuotientContext& q0 = sys.quotients.front();
  if (!q0.degenerate()) {
    const long tail_start = horizon - horizon / 4;
    for (long k = 0; k <= horizon; ++k) {
      const Vector W = w.at(k);
      double worst = 0.0;
      for (int j = 0; j < sys.r; ++j) worst = std::max(worst, quotient_norm(q0, W.segment(static_cast<Eigen::Index>(j) * sys.d(), sys.d())));
      rep.ideal_residual_max = std::max(rep.ideal_residual_max, worst);
      if (k >= tail_start) rep.ideal_residual_tail = std::max(rep.ideal_residual_tail, worst);
    }
  }
  rep.input_converges_to_ideal = rep.ideal_residual_tail <= 1e-8 * std::max(1.0, rep.ideal_residual_max);
  if (!rep.input_converges_to_ideal) rep.warnings.push_back("input does not appear to converge to the ideal");
  rep.caveat =
      "attractivity needs the input to be ultimately small, below a bound with no closed form; "
      "the certificate is conditional on that and is backed by simulation only";

  rep.final_norms.assign(X0s.size(), 0.0);
  std::vector<char> ok(X0s.size(), 0);
  parallel_for(X0s.size(), [&](std::size_t i) {
    const Trajectory tr = simulate(sys, X0s[i], w, horizon);
    rep.final_norms[i] = tr.diverged ? std::numeric_limits<double>::infinity() : tr.norms.back();
    ok[i] = !tr.diverged && tr.norms.back() < decay_tol;
  });
  rep.simulated_decay = std::all_of(ok.begin(), ok.end(), [](char v) { return v != 0; });

  if (is_nilpotent(sys.algebra).nilpotent && sys.ideal.dim() == sys.d() && w.kind() == ExoSignal::Kind::Zero) {
    double M = 1.0;
    for (const auto& x : X0s) M = std::max(M, product_norm(x, sys.d(), sys.norm));
    rep.nilpotent_verdict = certify_nilpotent(sys, w, M).issued;
  }

  if (!rep.schur) {
    std::ostringstream os;
    os << "A is not Schur: rho(A) = " << rep.rho_A;
    rep.reason = os.str();
  } else if (!rep.input_converges_to_ideal) {
    rep.reason = "input does not converge to the ideal";
  } else {
    rep.issued = true;
    rep.reason = "conditional certificate issued";
  }
  return rep;
}

double basin_probe(const ClassASystem& sys, const ExoSignal& w, const std::vector<Vector>& X0s, long horizon,
                   double decay_tol, double max_scale, int iterations) {
  auto decays = [&](double a) {
    const ExoSignal scaled = ExoSignal::function([w, a](long k) { return Vector(a * w.at(k)); }, a * w.beta(), w.s(),
                                                 w.r(), w.d(), "scaled");
    std::vector<char> ok(X0s.size(), 0);
    parallel_for(X0s.size(), [&](std::size_t i) {
      const Trajectory tr = simulate(sys, X0s[i], scaled, horizon, 1e12);
      ok[i] = !tr.diverged && tr.norms.back() < decay_tol;
    });
    return std::all_of(ok.begin(), ok.end(), [](char v) { return v != 0; });
  };
  if (!decays(0.0)) return 0.0;
  if (decays(max_scale)) return max_scale;
  double lo = 0.0, hi = max_scale;
  for (int it = 0; it < iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    (decays(mid) ? lo : hi) = mid;
  }
  return lo;
}

// --------------------------------------------------------------- deadbeat

DeadbeatCertificate deadbeat_horizon(const ClassASystem& sys) {
  if (!sys.chain.terminated) throw HypothesisError("the invariance ideal is not nilpotent");
  DeadbeatCertificate c;
  c.p = sys.nilindex();
  c.n = sys.n;
  c.d = sys.d();
  c.rho_A = spectral_radius(sys.A);
  const int N = sys.state_size();
  Matrix power = Matrix::Identity(N, N);
  for (int k = 0; k < N; ++k) power = power * sys.A;
  const double scale = std::pow(std::max(1.0, spectral_norm(sys.A)), N);
  c.nilpotent_power_check = spectral_norm(power) <= 1e-10 * scale;
  if (!(c.rho_A < 1e-10 || c.nilpotent_power_check))
    throw HypothesisError("A is not nilpotent: rho(A) = " + std::to_string(c.rho_A));
  for (int j = 1; j <= c.p; ++j) c.ideal_dims.push_back(sys.chain[static_cast<std::size_t>(j) - 1].dim());
  int dims = 0;
  for (int i = 1; i <= c.p + 1; ++i) {
    if (i <= c.p) dims += c.ideal_dims[static_cast<std::size_t>(i) - 1];
    c.level_horizons.push_back(c.n * (i * c.d - dims));
  }
  c.horizon = c.level_horizons.back();
  return c;
}

bool DeadbeatRunReport::passed(double tol) const {
  if (max_after_horizon > tol) return false;
  return std::all_of(max_after_level.begin(), max_after_level.end(), [tol](double v) { return v <= tol; });
}

ExoSignal random_ideal_signal(const ClassASystem& sys, double beta, std::uint64_t seed) {
  if (sys.r == 0 || sys.ideal.dim() == 0 || beta == 0.0) {
    ExoSignal z = ExoSignal::zero(sys.r, sys.d());
    z.set_ideal_valued(true);
    return z;
  }
  const Matrix B = sys.ideal.basis();
  const int r = sys.r, d = sys.d();
  auto gen = [B, r, d, beta, seed](long k) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(k));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Vector W(static_cast<Eigen::Index>(r) * d);
    for (int j = 0; j < r; ++j) {
      Vector v = B * random_vector(B.cols(), rng);
      const double nv = v.norm();
      if (nv > 0.0) v *= beta / r * unit(rng) / nv;
      W.segment(static_cast<Eigen::Index>(j) * d, d) = v;
    }
    return W;
  };
  ExoSignal s = ExoSignal::function(gen, beta, 1.0, r, d, "random ideal-valued input");
  s.set_ideal_valued(true);
  return s;
}

DeadbeatRunReport verify_deadbeat(const ClassASystem& sys, const DeadbeatCertificate& cert, int runs, double radius,
                                  double beta, std::uint64_t seed, int extra) {
  DeadbeatRunReport rep;
  rep.runs = runs;
  const std::size_t levels = cert.level_horizons.size();
  std::vector<double> after(static_cast<std::size_t>(runs), 0.0);
  std::vector<std::vector<double>> after_level(static_cast<std::size_t>(runs), std::vector<double>(levels, 0.0));
  std::vector<int> first_zero(static_cast<std::size_t>(runs), 0);
  parallel_for(static_cast<std::size_t>(runs), [&](std::size_t run) {
    std::mt19937_64 rng(seed + 7919 * run);
    const Vector X0 = random_in_ball(sys.state_size(), radius, rng);
    const ExoSignal w = random_ideal_signal(sys, beta, seed * 31 + run);
    const Trajectory tr = simulate(sys, X0, w, cert.horizon + extra);
    for (std::size_t k = 0; k < tr.norms.size(); ++k) {
      if (static_cast<int>(k) >= cert.horizon) after[run] = std::max(after[run], tr.norms[k]);
      for (std::size_t i = 0; i < levels && i < tr.qnorms[k].size(); ++i)
        if (static_cast<int>(k) >= cert.level_horizons[i])
          after_level[run][i] = std::max(after_level[run][i], tr.qnorms[k][i]);
    }
    int fz = static_cast<int>(tr.norms.size());
    for (std::size_t k = tr.norms.size(); k-- > 0;) {
      if (tr.norms[k] > 1e-9) break;
      fz = static_cast<int>(k);
    }
    first_zero[run] = fz;
  });
  rep.max_after_level.assign(levels, 0.0);
  for (int run = 0; run < runs; ++run) {
    const auto ur = static_cast<std::size_t>(run);
    rep.max_after_horizon = std::max(rep.max_after_horizon, after[ur]);
    for (std::size_t i = 0; i < levels; ++i) rep.max_after_level[i] = std::max(rep.max_after_level[i], after_level[ur][i]);
    rep.first_zero_max = std::max(rep.first_zero_max, first_zero[ur]);
  }
  return rep;
}

EnvelopeFit semiglobal_from_deadbeat(const ClassASystem& sys, const DeadbeatCertificate& cert, double beta, double M,
                                     double lambda, std::uint64_t seed, int fresh) {
  if (!(lambda >= 0.0 && lambda < 1.0)) throw InputError("lambda must lie in [0, 1)");
  if (!(M > 0.0)) throw InputError("M must be positive");
  constexpr int kDirections = 1024;
  constexpr int kMinExponent = -40;  // radii 2^{m/4}
  const int top = static_cast<int>(std::ceil(4.0 * std::log2(M) - 1e-12));
  const int N = sys.state_size();

  std::vector<Vector> dirs;
  {
    std::mt19937_64 rng(seed);
    for (int k = 0; k < kDirections; ++k) {
      Vector v = random_vector(N, rng);
      dirs.push_back(v / product_norm(v, sys.d(), sys.norm));
    }
  }
  auto ratio_max = [&](const Vector& X0, const ExoSignal& w) {
    const Trajectory tr = simulate(sys, X0, w, cert.horizon);
    const double x0 = tr.norms.front();
    double best = 0.0;
    for (int k = 0; k < cert.horizon && k < static_cast<int>(tr.norms.size()); ++k)
      best = std::max(best, tr.norms[static_cast<std::size_t>(k)] / (std::pow(lambda, k) * x0));
    return best;
  };

  EnvelopeFit fit;
  fit.lambda = lambda;
  const int radii = std::max(0, top - kMinExponent + 1);
  std::vector<double> best(static_cast<std::size_t>(radii) * kDirections, 0.0);
  parallel_for(best.size(), [&](std::size_t idx) {
    const int m = kMinExponent + static_cast<int>(idx / kDirections);
    const std::size_t dir = idx % kDirections;
    const ExoSignal w = random_ideal_signal(sys, beta, seed * 131 + dir);
    best[idx] = ratio_max(std::pow(2.0, m / 4.0) * dirs[dir], w);
  });
  fit.samples = static_cast<int>(best.size());
  fit.alpha = best.empty() ? 1.0 : *std::max_element(best.begin(), best.end());
  if (!(fit.alpha > 0.0)) fit.alpha = 1.0;
  fit.certified = std::isfinite(fit.alpha);
  fit.note = "alpha over radii 2^(m/4) <= " + std::to_string(std::pow(2.0, top / 4.0)) + " and " +
             std::to_string(kDirections) + " directions";

  fit.fresh_runs = fresh;
  std::vector<double> worst(static_cast<std::size_t>(fresh), 0.0);
  parallel_for(static_cast<std::size_t>(fresh), [&](std::size_t run) {
    std::mt19937_64 rng(seed ^ (0xA5A5A5A5ULL + 104729 * run));
    const Vector X0 = random_in_ball(N, M, rng);
    const ExoSignal w = random_ideal_signal(sys, beta, seed * 977 + 50000 + run);
    worst[run] = ratio_max(X0, w) / fit.alpha;
  });
  for (double v : worst) {
    fit.fresh_worst_ratio = std::max(fit.fresh_worst_ratio, v);
    if (v > 1.0 + 1e-9) ++fit.fresh_violations;
  }
  return fit;
}

// --------------------------------------------------------------- envelope

EnvelopeFit fit_envelope(const std::vector<std::vector<double>>& norms) {
  if (norms.empty()) throw InputError("fit_envelope: empty bundle");
  struct Point {
    double k, ratio;
  };
  std::vector<Point> pts;
  for (const auto& traj : norms) {
    if (traj.empty() || !(traj.front() > 0.0)) throw InputError("fit_envelope: every trajectory needs X[0] != 0");
    for (std::size_t k = 0; k < traj.size(); ++k) {
      const double ratio = traj[k] / traj.front();
      if (ratio >= 1e-13 && std::isfinite(ratio)) pts.push_back({static_cast<double>(k), ratio});
    }
  }
  EnvelopeFit fit;
  fit.samples = static_cast<int>(pts.size());
  double sk = 0, sy = 0, skk = 0, sky = 0;
  for (const auto& p : pts) {
    const double y = std::log(p.ratio);
    sk += p.k;
    sy += y;
    skk += p.k * p.k;
    sky += p.k * y;
  }
  const double m = static_cast<double>(pts.size());
  const double den = m * skk - sk * sk;
  if (den <= 0.0) {
    fit.lambda = 0.0;
    fit.alpha = 1.0;
    fit.certified = true;
    fit.note = "every sample after k = 0 is below 1e-13 relative";
    return fit;
  }
  fit.lambda = std::exp((m * sky - sk * sy) / den);
  for (const auto& p : pts) fit.alpha = std::max(fit.alpha, p.ratio / std::pow(fit.lambda, p.k));
  fit.certified = fit.lambda < 1.0;
  fit.note = fit.certified ? "samples below 1e-13 relative are excluded" : "trajectories do not decay: lambda >= 1";
  return fit;
}

EnvelopeFit fit_envelope(const std::vector<Trajectory>& bundle) {
  std::vector<std::vector<double>> norms;
  for (const auto& tr : bundle) norms.push_back(tr.norms);
  return fit_envelope(norms);
}

// ----------------------------------------------------------------- radius

RadiusEstimate radius_estimate(const ClassASystem& sys, const std::vector<double>& per_length) {
  RadiusEstimate out;
  if (!per_length.empty()) {
    std::vector<std::pair<int, double>> nz;
    for (std::size_t l = 1; l < per_length.size(); ++l)
      if (per_length[l] > 0.0) nz.emplace_back(static_cast<int>(l), per_length[l]);
    std::size_t from = nz.size() / 2;
    if (nz.size() < 4) {
      out.warnings.push_back("fewer than four word lengths; using the largest root over all of them");
      from = 0;
    }
    for (std::size_t i = from; i < nz.size(); ++i)
      out.limsup = std::max(out.limsup, std::pow(nz[i].second, 1.0 / nz[i].first));
  } else if (!sys.families.empty()) {
    out.warnings.push_back("e^ad families have coefficients 1/l!, whose l-th roots tend to zero");
  }
  out.rho1 = out.limsup > 0.0 ? std::min(1.0, 1.0 / (sys.mu * out.limsup)) : 1.0;
  const QuotientContext& q0 = sys.quotients.front();
  const double iota = q0.degenerate() ? 1.0 : spectral_norm(q0.iota);
  out.rho2 = 0.99 * out.rho1 / iota;
  out.radius = out.rho2 * out.rho2;
  return out;
}

}  // namespace liestab
