#pragma once

#include <optional>

#include "agdrc/linalg.hpp"

namespace agdrc {

/// Regularity Condition constants RC(μ, λ, ε):
///   ⟨∇f(z), z − x*⟩ ≥ (μ/2)‖∇f(z)‖² + (λ/2)‖z − x*‖²  on ‖z − x*‖ ≤ ε.
/// An absent ε means the condition holds globally. Cauchy–Schwarz forces
/// μλ ≤ 1; the constructor rejects anything else.
class RCParams {
 public:
  RCParams(double mu, double lambda, std::optional<double> epsilon = std::nullopt);

  double mu() const { return mu_; }
  double lambda() const { return lambda_; }
  std::optional<double> epsilon() const { return epsilon_; }

  /// √(1 − μλ), clamped at zero.
  double sqrt_gap() const;

 private:
  double mu_;
  double lambda_;
  std::optional<double> epsilon_;
};

/// Step size and momentum pair of the two-momentum family
///   y_k     = (1+β₂) z_k − β₂ z_{k−1}
///   z_{k+1} = (1+β₁) z_k − β₁ z_{k−1} − α ∇f(y_k).
class AGDParams {
 public:
  AGDParams(double alpha, double beta1, double beta2);

  static AGDParams gd(double alpha) { return {alpha, 0.0, 0.0}; }
  static AGDParams heavy_ball(double alpha, double beta) { return {alpha, beta, 0.0}; }
  static AGDParams nesterov(double alpha, double beta) { return {alpha, beta, beta}; }

  double alpha() const { return alpha_; }
  double beta1() const { return beta1_; }
  double beta2() const { return beta2_; }

 private:
  double alpha_;
  double beta1_;
  double beta2_;
};

/// Two-state SISO realization G(A, B, C, D) acting per coordinate. The
/// second state is always the one-step delay of the first.
struct StateSpace {
  Mat2 a;
  Vec2 b{};
  Vec2 c{};
  double d = 0.0;
  std::optional<double> delta;
};

/// Symmetric quadratic constraint on (y − y*, u − u*).
struct QuadForm {
  Mat2 m;

  double eval(double y, double u) const { return quad(m, Vec2{y, u}); }
};

/// Sector [m, L] with 0 < m ≤ L.
class SectorBound {
 public:
  SectorBound(double m_lo, double l_hi);

  double m_lo() const { return m_lo_; }
  double l_hi() const { return l_hi_; }

 private:
  double m_lo_;
  double l_hi_;
};

StateSpace build_original_system(const AGDParams& p);

/// Realization of the same recursion with feedback u = −α∇f(y) − δy.
StateSpace build_shifted_system(const AGDParams& p, double delta);

QuadForm build_rc_quadform(const RCParams& rc);

/// Constraint satisfied by (y, −α∇f(y) − δy) whenever f satisfies RC.
QuadForm build_shifted_quadform(const RCParams& rc, const AGDParams& p, double delta);

RCParams sector_to_rc(const SectorBound& s);
SectorBound rc_to_sector(const RCParams& rc);

}  // namespace agdrc
