#pragma once

#include "liestab/linalg.hpp"
#include "liestab/quotient.hpp"

#include <functional>
#include <string>
#include <vector>

namespace liestab {

/// Exogenous input W[k] in g^r, stacked slot-major.
class ExoSignal {
 public:
  enum class Kind { Zero, Samples, Geometric, Function };

  ExoSignal() = default;
  static ExoSignal zero(int r, int d);
  /// Explicit samples, repeated with wraparound past the end.
  static ExoSignal samples(std::vector<Vector> values, int r, int d);
  /// W[k] = s^k W0 with envelope beta = ||W0||, s.
  static ExoSignal geometric(Vector w0, double s, int r, int d, NormKind norm = NormKind::Sum);
  /// Arbitrary generator with a caller-supplied envelope ||W[k]|| <= beta s^k.
  static ExoSignal function(std::function<Vector(long)> gen, double beta, double s, int r, int d,
                            std::string description = {});

  Kind kind() const { return kind_; }
  int r() const { return r_; }
  int d() const { return d_; }
  Vector at(long k) const;
  /// Stored values for Samples signals, empty otherwise.
  const std::vector<Vector>& sample_values() const { return samples_; }

  double beta() const { return beta_; }
  double s() const { return s_; }
  bool has_envelope() const { return has_envelope_; }
  void set_envelope(double beta, double s);
  const std::string& description() const { return description_; }

  /// Declared to take values in h^r; verify with ideal_residual.
  bool ideal_valued() const { return ideal_valued_; }
  void set_ideal_valued(bool v) { ideal_valued_ = v; }

 private:
  Kind kind_ = Kind::Zero;
  int r_ = 0;
  int d_ = 0;
  std::vector<Vector> samples_;
  Vector w0_;
  std::function<Vector(long)> gen_;
  double beta_ = 0.0;
  double s_ = 1.0;
  bool has_envelope_ = true;
  bool ideal_valued_ = false;
  std::string description_;
};

/// Largest ratio ||W[k]|| / (beta s^k) over 0..horizon; <= 1 means the envelope holds.
double envelope_ratio(const ExoSignal& w, long horizon, NormKind norm = NormKind::Sum);

/// Max over k <= horizon and slots of the quotient norm of W_j[k] modulo h.
double ideal_residual(const ExoSignal& w, const QuotientContext& h_ctx, long horizon);

}  // namespace liestab
