#include "agdrc/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace agdrc {

namespace {

// Slack on the μλ ≤ 1 check so sector round-trips at m = L survive rounding.
constexpr double kProductSlack = 1e-12;

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

RCParams::RCParams(double mu, double lambda, std::optional<double> epsilon)
    : mu_(mu), lambda_(lambda), epsilon_(epsilon) {
  if (!finite_positive(mu)) throw std::invalid_argument("RC: mu must be positive, got " + std::to_string(mu));
  if (!finite_positive(lambda))
    throw std::invalid_argument("RC: lambda must be positive, got " + std::to_string(lambda));
  if (mu * lambda > 1.0 + kProductSlack)
    throw std::invalid_argument("RC: mu*lambda must not exceed 1, got " + std::to_string(mu * lambda));
  if (epsilon && !finite_positive(*epsilon))
    throw std::invalid_argument("RC: epsilon must be positive when given");
}

double RCParams::sqrt_gap() const { return std::sqrt(std::max(0.0, 1.0 - mu_ * lambda_)); }

AGDParams::AGDParams(double alpha, double beta1, double beta2)
    : alpha_(alpha), beta1_(beta1), beta2_(beta2) {
  if (!finite_positive(alpha))
    throw std::invalid_argument("AGD: alpha must be positive, got " + std::to_string(alpha));
  if (!(beta1 >= 0.0 && beta1 < 1.0))
    throw std::invalid_argument("AGD: beta1 must lie in [0,1), got " + std::to_string(beta1));
  if (!(beta2 >= 0.0 && beta2 < 1.0))
    throw std::invalid_argument("AGD: beta2 must lie in [0,1), got " + std::to_string(beta2));
}

SectorBound::SectorBound(double m_lo, double l_hi) : m_lo_(m_lo), l_hi_(l_hi) {
  if (!finite_positive(m_lo) || !std::isfinite(l_hi) || m_lo > l_hi)
    throw std::invalid_argument("sector: need 0 < m <= L");
}

StateSpace build_original_system(const AGDParams& p) {
  StateSpace s;
  s.a(0, 0) = 1.0 + p.beta1();
  s.a(0, 1) = -p.beta1();
  s.a(1, 0) = 1.0;
  s.a(1, 1) = 0.0;
  s.b = {-p.alpha(), 0.0};
  s.c = {1.0 + p.beta2(), -p.beta2()};
  return s;
}

StateSpace build_shifted_system(const AGDParams& p, double delta) {
  if (!std::isfinite(delta)) throw std::invalid_argument("shift delta must be finite");
  const double b1 = p.beta1(), b2 = p.beta2();
  StateSpace s;
  s.a(0, 0) = 1.0 + b1 + delta + delta * b2;
  s.a(0, 1) = -(b1 + delta * b2);
  s.a(1, 0) = 1.0;
  s.a(1, 1) = 0.0;
  s.b = {1.0, 0.0};
  s.c = {1.0 + b2, -b2};
  s.delta = delta;
  return s;
}

QuadForm build_rc_quadform(const RCParams& rc) { return {sym2(-rc.lambda(), 1.0, -rc.mu())}; }

QuadForm build_shifted_quadform(const RCParams& rc, const AGDParams& p, double delta) {
  const double a = p.alpha(), mu = rc.mu(), lam = rc.lambda();
  double m11 = -(2.0 * a * delta + lam * a * a + mu * delta * delta);
  double m12 = -a - mu * delta;
  return {sym2(m11, m12, -mu)};
}

RCParams sector_to_rc(const SectorBound& s) {
  const double m = s.m_lo(), l = s.l_hi();
  return RCParams(2.0 / (m + l), 2.0 * m * l / (m + l));
}

SectorBound rc_to_sector(const RCParams& rc) {
  // m = (1 − g)/μ rewritten as λ/(1 + g) to avoid cancellation when μλ ≪ 1.
  double g = rc.sqrt_gap();
  double l_hi = (1.0 + g) / rc.mu();
  return SectorBound(std::min(rc.lambda() / (1.0 + g), l_hi), l_hi);
}

}  // namespace agdrc
