#pragma once

#include <optional>

namespace dboltz {

/// Physical parameters of the interaction (x, y) -> (a x + b y, b x + a y)
/// with rate |x - y|^gamma, plus the drift coefficient c of the rescaled
/// equation  d_s g + c d_xi(xi g) = Q(g, g).
class ModelParams {
 public:
  /// Validates gamma >= 0, a in (0, 1) and c > 0. Without an explicit c the
  /// default is a*b for gamma == 0 (the only finite-energy choice there) and
  /// 1 otherwise.
  static ModelParams make(double gamma, double a, std::optional<double> drift_coeff = {});

  static double default_drift(double gamma, double a);

  double gamma() const noexcept { return gamma_; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double drift_coeff() const noexcept { return drift_coeff_; }

  /// Copy with a different drift coefficient. c == 0 is accepted here: it
  /// switches the solver to the unscaled equation d_t f = Q(f, f).
  ModelParams with_drift(double c) const;

  /// 1 - a^k - b^k, the dissipation factor of the k-th moment.
  double dissipation(double k) const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  ModelParams(double gamma, double a, double c) : gamma_(gamma), a_(a), b_(1.0 - a), drift_coeff_(c) {}

  double gamma_;
  double a_;
  double b_;
  double drift_coeff_;
};

}  // namespace dboltz
