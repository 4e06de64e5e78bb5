#include "agdrc/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <boost/multiprecision/cpp_int.hpp>

namespace agdrc {

namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr double kInf = std::numeric_limits<double>::infinity();

template <typename T>
struct Coeffs {
  T a, b, c;
};

template <typename T>
Coeffs<T> fdi_coeffs(const T& mu, const T& lam, const T& alpha, const T& b1, const T& b2) {
  const T one(1), two(2), four(4);
  const T a2 = alpha * alpha;
  Coeffs<T> k;
  k.a = four * (alpha * b2 - mu * b1);
  k.b = two * (mu * (one + b1) * (one + b1) + lam * a2 * b2 * (one + b2) -
               alpha * (one + b1) * (one + two * b2));
  k.c = two * alpha * (one + b1 + two * b1 * b2) - two * mu * (one + b1 * b1) -
        lam * a2 * (b2 * b2 + (one + b2) * (one + b2));
  return k;
}

// Where the maximum of LHS over [−1, 1] sits.
enum class MaxAt { Linear, EndpointLow, EndpointHigh, Vertex };

const char* describe(MaxAt m) {
  switch (m) {
    case MaxAt::Linear: return "linear: max at endpoint";
    case MaxAt::EndpointLow: return "max at u=-1";
    case MaxAt::EndpointHigh: return "max at u=+1";
    case MaxAt::Vertex: return "max at interior vertex";
  }
  return "";
}

RegionVerdict finish(Route route, bool fdi_ok, bool bound_ok, double fdi_slack, double bound_slack,
                     std::string detail) {
  RegionVerdict v;
  v.route = route;
  v.stable = fdi_ok && bound_ok;
  v.margin = std::min(fdi_slack, bound_slack);
  // Keep the sign of the margin consistent with the (exact) decision.
  if (v.stable && !(v.margin > 0.0)) v.margin = std::numeric_limits<double>::denorm_min();
  if (!v.stable && v.margin > 0.0) v.margin = 0.0;
  if (!bound_ok) detail += "; alpha above KYP-conditions bound";
  v.detail = std::move(detail);
  return v;
}

void require_open_unit(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("theorem regions need 0 < beta < 1");
}

}  // namespace

std::string_view to_string(Route r) {
  switch (r) {
    case Route::TheoremHB: return "theorem-hb";
    case Route::TheoremNAG: return "theorem-nag";
    case Route::FdiExact: return "fdi-exact";
    case Route::FdiSampled: return "fdi-sampled";
  }
  return "";
}

Route route_from_string(std::string_view s) {
  if (s == "theorem-hb") return Route::TheoremHB;
  if (s == "theorem-nag") return Route::TheoremNAG;
  if (s == "fdi-exact") return Route::FdiExact;
  if (s == "fdi-sampled") return Route::FdiSampled;
  throw std::invalid_argument("unknown route '" + std::string(s) + "'");
}

std::vector<double> DeltaInterval::interior_points() const {
  if (!nonempty) return {};
  if (lo == hi) return {lo};
  std::vector<double> pts;
  for (double f : {0.1, 0.25, 0.5, 0.75, 0.9}) pts.push_back(lo + f * (hi - lo));
  return pts;
}

FdiQuadratic fdi_quadratic(const RCParams& rc, const AGDParams& p) {
  auto k = fdi_coeffs<double>(rc.mu(), rc.lambda(), p.alpha(), p.beta1(), p.beta2());
  return {k.a, k.b, k.c};
}

double fdi_transfer_value(const RCParams& rc, const AGDParams& p, double delta, double omega) {
  StateSpace sys = build_shifted_system(p, delta);
  QuadForm q = build_shifted_quadform(rc, p, delta);
  const std::complex<double> z = std::polar(1.0, omega);
  // (zI − A)⁻¹B for the companion A and B = e₁ is [z, 1]ᵀ / det(zI − A).
  const std::complex<double> det = (z - sys.a(0, 0)) * z - sys.a(0, 1);
  const std::complex<double> g = (sys.c[0] * z + sys.c[1]) / det;
  return q.m(0, 0) * std::norm(g) + 2.0 * q.m(0, 1) * g.real() + q.m(1, 1);
}

double kypc_alpha_bound(const RCParams& rc, double beta1, double beta2) {
  return 2.0 * (1.0 + beta1) * (1.0 + rc.sqrt_gap()) / (rc.lambda() * (1.0 + 2.0 * beta2));
}

DeltaInterval admissible_delta_interval(const RCParams& rc, const AGDParams& p) {
  constexpr double kShrink = 1e-12;
  const double al = p.alpha() * rc.lambda();
  const double g = rc.sqrt_gap();
  // Schur stability: −2(1+β₁)/(1+2β₂) < δ < 0 (open; the lower end is also
  // where an eigenvalue reaches −1).
  const double schur_lo = -2.0 * (1.0 + p.beta1()) / (1.0 + 2.0 * p.beta2());
  // PSD corner of M′: −αλ/(1−g) ≤ δ ≤ −αλ/(1+g). Written with (1−g) = μλ/(1+g)
  // to avoid cancellation.
  const double psd_lo = -p.alpha() * (1.0 + g) / rc.mu();
  const double psd_hi = -al / (1.0 + g);

  DeltaInterval d;
  if (g == 0.0) {
    // Both PSD bounds collapse to δ = −αλ.
    d.lo = d.hi = -al;
    d.nonempty = -al > schur_lo;
    return d;
  }
  d.lo = std::max(psd_lo, schur_lo * (1.0 - kShrink));
  d.hi = std::min(psd_hi, 0.0);
  d.nonempty = d.lo < d.hi;
  return d;
}

RegionVerdict fdi_exact(const RCParams& rc, const AGDParams& p) {
  const Rational mu(rc.mu()), lam(rc.lambda()), alpha(p.alpha()), b1(p.beta1()), b2(p.beta2());
  const auto k = fdi_coeffs<Rational>(mu, lam, alpha, b1, b2);

  Rational worst;
  MaxAt where;
  const Rational lo = k.a - k.b + k.c;
  const Rational hi = k.a + k.b + k.c;
  if (k.a == 0) {
    where = MaxAt::Linear;
    worst = std::max(lo, hi);
  } else if (k.a < 0 && abs(k.b) < -2 * k.a) {
    where = MaxAt::Vertex;
    worst = k.c - k.b * k.b / (4 * k.a);
  } else if (lo >= hi) {
    where = MaxAt::EndpointLow;
    worst = lo;
  } else {
    where = MaxAt::EndpointHigh;
    worst = hi;
  }
  const bool fdi_ok = worst < 0;

  // α < 2(1+β₁)(1+g)/(λ(1+2β₂))  ⇔  t < g with t = αλ(1+2β₂)/(2(1+β₁)) − 1.
  const Rational t = alpha * lam * (1 + 2 * b2) / (2 * (1 + b1)) - 1;
  const bool bound_ok = t < 0 || t * t < 1 - mu * lam;

  const double bound_slack = kypc_alpha_bound(rc, p.beta1(), p.beta2()) - p.alpha();
  return finish(Route::FdiExact, fdi_ok, bound_ok, -worst.convert_to<double>(), bound_slack,
                describe(where));
}

RegionVerdict fdi_sampled(const RCParams& rc, const AGDParams& p, int n_samples) {
  if (n_samples < 2) throw std::invalid_argument("fdi_sampled needs at least 2 samples");
  const FdiQuadratic q = fdi_quadratic(rc, p);
  double worst = -kInf;
  double worst_omega = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    // Index arithmetic keeps both endpoints exact.
    double omega = i == n_samples - 1 ? std::numbers::pi : std::numbers::pi * i / (n_samples - 1);
    double v = q(std::cos(omega));
    if (v > worst) {
      worst = v;
      worst_omega = omega;
    }
  }
  const double bound_slack = kypc_alpha_bound(rc, p.beta1(), p.beta2()) - p.alpha();
  return finish(Route::FdiSampled, worst < 0.0, bound_slack > 0.0, -worst, bound_slack,
                "worst omega=" + std::to_string(worst_omega));
}

double hb_h1(const RCParams& rc, double beta) {
  const double mu = rc.mu();
  return (mu * beta * beta + 6.0 * mu * beta + mu) / (beta + 1.0);
}

double hb_h2(const RCParams& rc, double beta) {
  const double mu = rc.mu(), lam = rc.lambda();
  const double b2 = beta * beta, b3 = b2 * beta, b4 = b3 * beta;
  const double p1 = 4.0 * mu * lam * beta - b2 - 1.0 - 2.0 * beta;
  const double p2 = 2.0 * mu * beta + 2.0 * mu * b2 - 2.0 * mu * b3 - 2.0 * mu;
  const double p3 = mu * mu * (4.0 * b3 + 4.0 * beta - 6.0 * b2 - b4 - 1.0);
  const double disc = std::max(0.0, p2 * p2 - 4.0 * p1 * p3);
  return (p2 - std::sqrt(disc)) / (2.0 * p1);
}

RegionVerdict hb_region(const RCParams& rc, double alpha, double beta) {
  require_open_unit(beta);
  if (!(alpha > 0.0)) throw std::invalid_argument("hb_region needs alpha > 0");
  const double h1 = hb_h1(rc, beta);
  const double h2 = hb_h2(rc, beta);
  const double upper = 2.0 * (beta + 1.0) * (1.0 - rc.sqrt_gap()) / rc.lambda();

  // {H₁ ≤ α ≤ upper} ∪ {0 < α ≤ min(H₁, H₂)}, margins in α units.
  const double large_step = std::min(alpha - h1, upper - alpha);
  const double small_step = std::min(h1, h2) - alpha;

  RegionVerdict v;
  v.route = Route::TheoremHB;
  if (large_step >= small_step) {
    v.margin = large_step;
    v.detail = "branch H1<=alpha<=2(1+b)(1-sqrt(1-mu*lam))/lam";
  } else {
    v.margin = small_step;
    v.detail = h1 <= h2 ? "branch alpha<=min(H1,H2) [H1]" : "branch alpha<=min(H1,H2) [H2]";
  }
  v.stable = v.margin > 0.0;
  return v;
}

double nag_s_plus_threshold(const RCParams& rc, double beta) {
  const double q3 = 1.0 - beta + 2.0 * beta * beta;
  const double c1 = 4.0 * rc.mu() * rc.lambda() * beta * (1.0 + beta) * (1.0 - beta) * (1.0 - beta);
  // (Q₃ − √(Q₃² − C₁)) / (2λβ(1+β)) in cancellation-free form.
  return 2.0 * rc.mu() * (1.0 - beta) * (1.0 - beta) / (q3 + std::sqrt(std::max(0.0, q3 * q3 - c1)));
}

double nag_s_minus_threshold(const RCParams& rc, double beta) {
  const double q1 = 1.0 + 7.0 * beta + 2.0 * beta * beta;
  const double w = 1.0 + 6.0 * beta + beta * beta;
  const double c2 = 4.0 * rc.mu() * rc.lambda() * beta * (1.0 + beta) * w;
  return 2.0 * rc.mu() * w / (q1 + std::sqrt(std::max(0.0, q1 * q1 - c2)));
}

namespace {

// Nesterov FDI quadratic h(u) with its axis of symmetry.
struct NagQuadratic {
  FdiQuadratic q;
  double axis;  // S; only meaningful for α ≠ μ
};

NagQuadratic nag_quadratic(const RCParams& rc, double alpha, double beta) {
  const double mu = rc.mu(), lam = rc.lambda();
  NagQuadratic n;
  n.q = fdi_quadratic(rc, AGDParams::nesterov(alpha, beta));
  n.axis = ((mu - alpha) * (1.0 + beta) * (1.0 + beta) + (lam * alpha * alpha - alpha) * (beta + beta * beta)) /
           (4.0 * mu * beta - 4.0 * alpha * beta);
  return n;
}

}  // namespace

double nag_n2_bound(const RCParams& rc, double beta) {
  require_open_unit(beta);
  const double lo = nag_s_plus_threshold(rc, beta);
  const double hi = std::min(nag_s_minus_threshold(rc, beta), rc.mu());
  if (!(lo < hi)) return kInf;
  auto vertex_value = [&](double a) {
    NagQuadratic n = nag_quadratic(rc, a, beta);
    return n.q(n.axis);
  };
  // Coarse sweep for the first sign change, then bisection inside it.
  constexpr int kSweep = 64;
  double prev = lo;
  for (int i = 1; i <= kSweep; ++i) {
    double a = lo + (hi - lo) * i / kSweep;
    if (i == kSweep) a = std::nextafter(hi, lo);
    if (vertex_value(a) > 0.0) {
      double left = prev, right = a;
      for (int it = 0; it < 200 && right - left > 1e-15 * right; ++it) {
        double mid = 0.5 * (left + right);
        (vertex_value(mid) > 0.0 ? right : left) = mid;
      }
      return left;
    }
    prev = a;
  }
  return kInf;
}

RegionVerdict nag_region(const RCParams& rc, double alpha, double beta) {
  require_open_unit(beta);
  if (!(alpha > 0.0)) throw std::invalid_argument("nag_region needs alpha > 0");
  const double mu = rc.mu(), lam = rc.lambda();
  const NagQuadratic n = nag_quadratic(rc, alpha, beta);
  const double h_minus = n.q(-1.0);
  const double h_plus = -lam * alpha * alpha;  // h(1) identically

  double worst;
  std::string detail;
  if (alpha == mu) {
    // h is linear with non-positive slope; the maximum is h(−1).
    worst = h_minus;
    const double g = rc.sqrt_gap();
    const double cap = mu * lam < 1.0 ? (-1.0 + mu * lam + g) / (2.0 * (1.0 - mu * lam)) : kInf;
    detail = "case alpha=mu (beta cap " + std::to_string(cap) + ")";
  } else if (alpha > mu) {
    // Convex: endpoints decide and h(1) < 0.
    worst = std::max(h_minus, h_plus);
    detail = "case alpha>mu: h(-1)<=0 <=> alpha<=R1";
  } else if (alpha <= nag_s_plus_threshold(rc, beta)) {
    worst = h_plus;
    detail = "case alpha<mu, S>=1: max h(1)=-lam*alpha^2";
  } else if (alpha >= nag_s_minus_threshold(rc, beta)) {
    worst = h_minus;
    detail = "case alpha<mu, S<=-1: max h(-1)";
  } else {
    worst = n.q(n.axis);
    detail = "case alpha<mu, -1<S<1: g(S)<=0, N2=" + std::to_string(nag_n2_bound(rc, beta));
  }
  const double bound_slack = kypc_alpha_bound(rc, beta, beta) - alpha;
  return finish(Route::TheoremNAG, worst < 0.0, bound_slack > 0.0, -worst, bound_slack, std::move(detail));
}

AGDParams Family::at(double alpha, double beta) const {
  switch (kind) {
    case Kind::HB: return AGDParams::heavy_ball(alpha, beta);
    case Kind::NAG: return AGDParams::nesterov(alpha, beta);
    case Kind::General: return AGDParams(alpha, beta, beta2_scale * beta + beta2_offset);
  }
  throw std::logic_error("bad family");
}

std::string to_string(const Family& f) {
  switch (f.kind) {
    case Family::Kind::HB: return "hb";
    case Family::Kind::NAG: return "nag";
    case Family::Kind::General:
      return "general:" + std::to_string(f.beta2_scale) + "," + std::to_string(f.beta2_offset);
  }
  return "";
}

Family family_from_string(std::string_view s) {
  if (s == "hb") return Family::hb();
  if (s == "nag") return Family::nag();
  if (s == "gd") return Family::general(0.0, 0.0);
  constexpr std::string_view prefix = "general:";
  if (s.substr(0, prefix.size()) == prefix) {
    std::string rest(s.substr(prefix.size()));
    auto comma = rest.find(',');
    try {
      double scale = std::stod(rest.substr(0, comma));
      double offset = comma == std::string::npos ? 0.0 : std::stod(rest.substr(comma + 1));
      return Family::general(scale, offset);
    } catch (const std::logic_error&) {
      // fall through to the error below
    }
  }
  throw std::invalid_argument("unknown family '" + std::string(s) +
                              "' (expected hb, nag, gd or general:<scale>[,<offset>])");
}

RegionVerdict evaluate(Route route, const RCParams& rc, const Family& fam, double alpha, double beta,
                       int n_samples) {
  switch (route) {
    case Route::TheoremHB:
      if (fam.kind != Family::Kind::HB) throw std::invalid_argument("theorem-hb route needs the hb family");
      return hb_region(rc, alpha, beta);
    case Route::TheoremNAG:
      if (fam.kind != Family::Kind::NAG) throw std::invalid_argument("theorem-nag route needs the nag family");
      return nag_region(rc, alpha, beta);
    case Route::FdiExact: return fdi_exact(rc, fam.at(alpha, beta));
    case Route::FdiSampled: return fdi_sampled(rc, fam.at(alpha, beta), n_samples);
  }
  throw std::logic_error("bad route");
}

bool near_boundary(Route route, const RCParams& rc, const Family& fam, double alpha, double beta, double band,
                   int n_samples) {
  const bool here = evaluate(route, rc, fam, alpha, beta, n_samples).stable;
  const bool open_beta = route == Route::TheoremHB || route == Route::TheoremNAG;
  const double probes[4][2] = {{alpha - band, beta}, {alpha + band, beta}, {alpha, beta - band}, {alpha, beta + band}};
  for (const auto& pr : probes) {
    const double a = pr[0], b = pr[1];
    if (!(a > 0.0) || !(b < 1.0) || b < 0.0 || (open_beta && !(b > 0.0))) continue;
    if (fam.kind == Family::Kind::General) {
      double b2 = fam.beta2_scale * b + fam.beta2_offset;
      if (!(b2 >= 0.0 && b2 < 1.0)) continue;
    }
    if (evaluate(route, rc, fam, a, b, n_samples).stable != here) return true;
  }
  return false;
}

std::size_t ScanGrid::stable_count() const {
  return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](const auto& c) { return c.stable; }));
}

ScanGrid region_scan(const RCParams& rc, const Family& fam, const std::vector<double>& alphas,
                     const std::vector<double>& betas, Route route, const ScanOptions& opts) {
  if (alphas.empty() || betas.empty()) throw std::invalid_argument("region_scan: empty grid");
  // Validate every cell up front; workers must not throw.
  for (double b : betas) {
    for (double a : alphas) (void)fam.at(a, b);
    if ((route == Route::TheoremHB || route == Route::TheoremNAG) && !(b > 0.0 && b < 1.0))
      throw std::invalid_argument("theorem routes need 0 < beta < 1");
  }
  if (route == Route::TheoremHB && fam.kind != Family::Kind::HB)
    throw std::invalid_argument("theorem-hb route needs the hb family");
  if (route == Route::TheoremNAG && fam.kind != Family::Kind::NAG)
    throw std::invalid_argument("theorem-nag route needs the nag family");

  ScanGrid grid{alphas, betas, {}};
  const std::size_t n = alphas.size() * betas.size();
  grid.cells.resize(n);

  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t k = first; k < n; k += stride) {
      const double a = alphas[k % alphas.size()];
      const double b = betas[k / alphas.size()];
      RegionVerdict v = evaluate(route, rc, fam, a, b, opts.n_samples);
      if (opts.flag_boundary) v.boundary = near_boundary(route, rc, fam, a, b, opts.band, opts.n_samples);
      grid.cells[k] = std::move(v);
    }
  };

  const std::size_t threads = static_cast<std::size_t>(std::max(1, opts.threads));
  if (threads == 1) {
    work(0, 1);
  } else {
    // Each worker owns a disjoint residue class of cells.
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  }
  return grid;
}

}  // namespace agdrc
