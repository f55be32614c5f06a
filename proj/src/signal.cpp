#include "liestab/signal.hpp"

#include "liestab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace liestab {

ExoSignal ExoSignal::zero(int r, int d) {
  ExoSignal w;
  w.kind_ = Kind::Zero;
  w.r_ = r;
  w.d_ = d;
  w.ideal_valued_ = true;
  w.description_ = "zero";
  return w;
}

ExoSignal ExoSignal::samples(std::vector<Vector> values, int r, int d) {
  if (values.empty()) throw InputError("sample signal needs at least one sample");
  for (const auto& v : values)
    if (v.size() != static_cast<Eigen::Index>(r) * d) throw InputError("signal sample has wrong size");
  ExoSignal w;
  w.kind_ = Kind::Samples;
  w.r_ = r;
  w.d_ = d;
  double beta = 0.0;
  for (const auto& v : values) beta = std::max(beta, product_norm(v, d));
  w.samples_ = std::move(values);
  w.beta_ = beta;
  w.s_ = 1.0;
  w.description_ = "samples";
  return w;
}

ExoSignal ExoSignal::geometric(Vector w0, double s, int r, int d, NormKind norm) {
  if (w0.size() != static_cast<Eigen::Index>(r) * d) throw InputError("geometric signal has wrong size");
  if (s <= 0.0) throw InputError("geometric rate must be positive");
  ExoSignal w;
  w.kind_ = Kind::Geometric;
  w.r_ = r;
  w.d_ = d;
  w.beta_ = product_norm(w0, d, norm);
  w.w0_ = std::move(w0);
  w.s_ = s;
  w.description_ = "geometric";
  return w;
}

ExoSignal ExoSignal::function(std::function<Vector(long)> gen, double beta, double s, int r, int d,
                              std::string description) {
  ExoSignal w;
  w.kind_ = Kind::Function;
  w.r_ = r;
  w.d_ = d;
  w.gen_ = std::move(gen);
  w.beta_ = beta;
  w.s_ = s;
  w.has_envelope_ = beta >= 0.0;
  w.description_ = description.empty() ? "function" : std::move(description);
  return w;
}

Vector ExoSignal::at(long k) const {
  switch (kind_) {
    case Kind::Zero:
      return Vector::Zero(static_cast<Eigen::Index>(r_) * d_);
    case Kind::Samples:
      return samples_[static_cast<std::size_t>(k % static_cast<long>(samples_.size()))];
    case Kind::Geometric:
      return std::pow(s_, static_cast<double>(k)) * w0_;
    case Kind::Function:
      return gen_(k);
  }
  return {};
}

void ExoSignal::set_envelope(double beta, double s) {
  beta_ = beta;
  s_ = s;
  has_envelope_ = true;
}

double envelope_ratio(const ExoSignal& w, long horizon, NormKind norm) {
  double worst = 0.0;
  for (long k = 0; k <= horizon; ++k) {
    const double nw = product_norm(w.at(k), w.d(), norm);
    const double bound = w.beta() * std::pow(w.s(), static_cast<double>(k));
    if (nw == 0.0) continue;
    worst = std::max(worst, bound > 0.0 ? nw / bound : INFINITY);
  }
  return worst;
}

double ideal_residual(const ExoSignal& w, const QuotientContext& h_ctx, long horizon) {
  double worst = 0.0;
  const int d = w.d();
  for (long k = 0; k <= horizon; ++k) {
    const Vector v = w.at(k);
    for (int j = 0; j < w.r(); ++j) {
      const Vector slot = v.segment(static_cast<Eigen::Index>(j) * d, d);
      worst = std::max(worst, quotient_norm(h_ctx, slot) / std::max(1.0, slot.norm()));
    }
  }
  return worst;
}

}  // namespace liestab
