#include "agdrc/lmi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

#include "nelder_mead.hpp"

namespace agdrc {

namespace {

using P3 = std::array<double, 3>;

Mat2 to_p(const P3& x) { return sym2(x[0], x[1], x[2]); }
P3 from_p(const Mat2& p) { return {p(0, 0), p(0, 1), p(1, 1)}; }

double frob(const Mat2& p) { return std::sqrt(p(0, 0) * p(0, 0) + 2.0 * p(0, 1) * p(0, 1) + p(1, 1) * p(1, 1)); }

// s · R(θ) diag(1, r) R(θ)ᵀ
Mat2 shaped(double s, double r, double theta) {
  const double c = std::cos(theta), sn = std::sin(theta);
  return sym2(s * (c * c + r * sn * sn), s * (1.0 - r) * c * sn, s * (sn * sn + r * c * c));
}

// Sign-preserving, scale-normalized feasibility objective: negative iff
// λmax(LHS) < 0 and λmin(P) > 0.
double feasibility_objective(const LmiProblem& prob, const Mat2& p) {
  const double lhs = sym_eigenvalues(assemble_lmi(prob, p))[2];
  const double pmin = sym_eigenvalues(p)[0];
  return std::max(lhs, -pmin) / (1.0 + frob(p));
}

bool clears(const LmiProblem& prob, const PWitness& w) { return is_feasible(w, prob.strict); }

std::optional<PWitness> refine_from(const LmiProblem& prob, const std::function<double(const P3&)>& objective,
                                    const std::vector<Mat2>& starts, const SearchOptions& opts,
                                    const std::function<bool(const PWitness&)>& accept) {
  for (const Mat2& start : starts) {
    P3 x = from_p(start);
    double scale = std::max(frob(start), 1e-12);
    for (int round = 0; round < opts.restarts; ++round) {
      P3 step{0.3 * scale, 0.3 * scale, 0.3 * scale};
      auto res = detail::nelder_mead<3>(objective, x, step, opts.max_iter, 1e-16, -1e-7);
      x = res.x;
      PWitness w = evaluate_witness(prob, to_p(x));
      if (accept(w)) return w;
      scale = std::max(frob(to_p(x)), 1e-12);
    }
  }
  return std::nullopt;
}

std::vector<Mat2> seed_grid(const std::function<double(const Mat2&)>& objective, std::size_t keep) {
  std::vector<std::pair<double, Mat2>> scored;
  for (int e = -4; e <= 4; ++e) {
    const double s = std::pow(10.0, e);
    for (double r : {1.0, 0.3, 0.1, 0.01, 1e-3}) {
      for (int k = 0; k < 12; ++k) {
        const double theta = std::numbers::pi * k / 12.0;
        Mat2 p = shaped(s, r, theta);
        scored.emplace_back(objective(p), p);
        if (r == 1.0) break;  // isotropic: θ irrelevant
      }
    }
  }
  std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Mat2> out;
  for (std::size_t i = 0; i < std::min(keep, scored.size()); ++i) out.push_back(scored[i].second);
  return out;
}

}  // namespace

Mat3 constraint_term(const LmiProblem& prob) {
  // F = [[c₀, c₁, d], [0, 0, 1]], term = Fᵀ M F.
  const double f[2][3] = {{prob.sys.c[0], prob.sys.c[1], prob.sys.d}, {0.0, 0.0, 1.0}};
  const Mat2& m = prob.quad.m;
  Mat3 t;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) s += f[k][i] * m(k, l) * f[l][j];
      t(i, j) = s;
    }
  return t;
}

Mat3 assemble_lmi(const LmiProblem& prob, const Mat2& p) {
  const Mat2& a = prob.sys.a;
  const Vec2& b = prob.sys.b;
  const Mat2 at_p_a = a.transposed() * p * a;
  const Vec2 pb = p * b;
  const Mat2 at = a.transposed();
  const Vec2 at_p_b = at * pb;
  const double rho2 = prob.rho * prob.rho;

  Mat3 lhs = constraint_term(prob);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) lhs(i, j) += at_p_a(i, j) - rho2 * p(i, j);
    lhs(i, 2) += at_p_b[i];
    lhs(2, i) += at_p_b[i];
  }
  lhs(2, 2) += dot(b, pb);
  // Exact symmetry of the 2×2 block (AᵀPA is computed asymmetrically).
  const double off = 0.5 * (lhs(0, 1) + lhs(1, 0));
  lhs(0, 1) = lhs(1, 0) = off;
  return lhs;
}

PWitness evaluate_witness(const LmiProblem& prob, const Mat2& p) {
  PWitness w;
  w.p = p;
  w.max_eig_lhs = sym_eigenvalues(assemble_lmi(prob, p))[2];
  const Vec2 ep = sym_eigenvalues(p);
  w.min_eig_p = ep[0];
  w.cond_p = ep[0] > 0.0 ? ep[1] / ep[0] : std::numeric_limits<double>::infinity();
  return w;
}

bool is_feasible(const PWitness& w, bool strict) {
  const bool lhs_ok = strict ? w.max_eig_lhs < -kLmiStrictTol : w.max_eig_lhs <= 0.0;
  return lhs_ok && w.min_eig_p > kPositivityTol;
}

std::string KypcReport::describe() const {
  std::ostringstream os;
  os << "(1) no eigenvalue on unit circle: " << (no_unit_circle_eig ? "yes" : "no")
     << "; (2) Schur stable (rho(A)=" << spectral_radius << "): " << (schur_stable ? "yes" : "no")
     << "; (3) M[0,0] >= 0: " << (corner_psd ? "yes" : "no");
  return os.str();
}

KypcReport check_kypc(const StateSpace& sys, const QuadForm& quad) {
  if (sys.a(1, 0) != 1.0 || sys.a(1, 1) != 0.0) throw std::invalid_argument("check_kypc expects the companion form");
  // Characteristic polynomial z² − t z + d.
  const double t = sys.a(0, 0);
  const double d = -sys.a(0, 1);
  KypcReport r;
  // Coefficients carry rounding from 1 + β etc., so compare with a relative tolerance.
  const double tol = 1e-12 * (1.0 + std::abs(t) + std::abs(d));
  const bool root_at_one = std::abs(1.0 - t + d) <= tol;
  const bool root_at_minus_one = std::abs(1.0 + t + d) <= tol;
  const bool pair_on_circle = std::abs(d - 1.0) <= tol && std::abs(t) <= 2.0;
  r.no_unit_circle_eig = !(root_at_one || root_at_minus_one || pair_on_circle);
  r.spectral_radius = spectral_radius(sys.a);
  r.schur_stable = r.spectral_radius < 1.0;
  r.corner_psd = quad.m(0, 0) >= 0.0;
  return r;
}

std::optional<PWitness> find_feasible_p(const LmiProblem& prob, const SearchOptions& opts) {
  if (!(prob.rho > 0.0 && prob.rho <= 1.0)) throw std::invalid_argument("rho must lie in (0, 1]");
  auto on_matrix = [&](const Mat2& p) { return feasibility_objective(prob, p); };
  auto on_vector = [&](const P3& x) { return feasibility_objective(prob, to_p(x)); };
  auto accept = [&](const PWitness& w) { return clears(prob, w); };

  const std::vector<Mat2> starts = seed_grid(on_matrix, 3);
  for (const Mat2& s : starts) {
    PWitness w = evaluate_witness(prob, s);
    if (accept(w)) return w;
  }
  return refine_from(prob, on_vector, starts, opts, accept);
}

LmiProblem shifted_problem(const RCParams& rc, const AGDParams& p, double delta, double rho) {
  return {build_shifted_system(p, delta), build_shifted_quadform(rc, p, delta), rho, true};
}

std::optional<RateCertificate> certify_rate(const RCParams& rc, const AGDParams& p, double tol) {
  if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("certify_rate: tol must lie in (0, 1)");
  const DeltaInterval shifts = admissible_delta_interval(rc, p);
  if (!shifts.nonempty) return std::nullopt;
  const std::vector<double> deltas = shifts.interior_points();

  auto attempt = [&](double rho) -> std::optional<RateCertificate> {
    for (double delta : deltas) {
      if (auto w = find_feasible_p(shifted_problem(rc, p, delta, rho))) return RateCertificate{rho, *w, tol, delta};
    }
    return std::nullopt;
  };

  std::optional<RateCertificate> best = attempt(1.0 - tol);
  if (!best) return std::nullopt;
  double lo = 0.0, hi = 1.0 - tol;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (auto c = attempt(mid)) {
      best = c;
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return best;
}

std::optional<PWitness> min_cond_p(const RCParams& rc, const AGDParams& p, double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("min_cond_p: rho must lie in (0, 1)");
  const DeltaInterval shifts = admissible_delta_interval(rc, p);
  if (!shifts.nonempty) return std::nullopt;
  const LmiProblem prob = shifted_problem(rc, p, shifts.midpoint(), rho);

  // Isotropic family P = e^t I: λmax(LHS) is convex in the scale.
  auto iso = [&](double t) { return sym_eigenvalues(assemble_lmi(prob, std::exp(t) * Mat2::identity()))[2]; };
  const auto [t_best, iso_val] = boost::math::tools::brent_find_minima(iso, -40.0, 40.0, 60);
  if (iso_val < -kLmiStrictTol) {
    PWitness w = evaluate_witness(prob, std::exp(t_best) * Mat2::identity());
    if (clears(prob, w)) return w;
  }

  std::optional<PWitness> best = find_feasible_p(prob);
  if (!best) return std::nullopt;

  // Bisection on the bound κ ≥ cond(P); each step minimizes the convex
  // objective max(λmax(LHS), (λmax(P) − κ λmin(P))) normalized by ‖P‖.
  double lo = 1.0, hi = best->cond_p;
  SearchOptions opts;
  for (int it = 0; it < 40 && hi / lo > 1.0 + 1e-4; ++it) {
    const double kappa = std::sqrt(lo * hi);
    auto objective = [&](const P3& x) {
      const Mat2 pm = to_p(x);
      const Vec2 ep = sym_eigenvalues(pm);
      const double lhs = sym_eigenvalues(assemble_lmi(prob, pm))[2];
      return std::max(lhs, ep[1] - kappa * ep[0]) / (1.0 + frob(pm));
    };
    auto accept = [&](const PWitness& w) { return clears(prob, w) && w.cond_p <= kappa * (1.0 + 1e-12); };
    // Start from the incumbent and from its isotropic average.
    const double tr = 0.5 * (best->p(0, 0) + best->p(1, 1));
    std::vector<Mat2> starts{best->p, 0.5 * (best->p + tr * Mat2::identity())};
    if (auto w = refine_from(prob, objective, starts, opts, accept)) {
      best = w;
      hi = std::min(kappa, w->cond_p);
    } else {
      lo = kappa;
    }
  }
  return best;
}

HarnessReport kyp_equivalence_harness(int n_trials, std::uint64_t seed) {
  if (n_trials < 1) throw std::invalid_argument("harness needs at least one trial");
  constexpr double kMarginFilter = 1e-2;
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  HarnessReport rep;
  const int max_attempts = 1000 * n_trials;
  for (int attempt = 0; rep.trials < n_trials && attempt < max_attempts; ++attempt) {
    const double mu = 0.1 * std::pow(20.0, unit(gen));  // log-uniform on [0.1, 2]
    const double product = 0.02 + 0.98 * unit(gen);
    const RCParams rc(mu, product / mu);
    const double beta1 = 0.95 * unit(gen);
    const double beta2 = 0.95 * unit(gen);
    const double alpha = std::max(1e-3, 1.1 * kypc_alpha_bound(rc, beta1, beta2) * unit(gen));
    const AGDParams p(alpha, beta1, beta2);

    const DeltaInterval shifts = admissible_delta_interval(rc, p);
    if (!shifts.nonempty) {
      ++rep.skipped_kypc;
      continue;
    }
    const double delta = shifts.lo + (0.05 + 0.9 * unit(gen)) * (shifts.hi - shifts.lo);
    const LmiProblem prob = shifted_problem(rc, p, delta, 1.0);
    if (!check_kypc(prob.sys, prob.quad).ok()) {
      ++rep.skipped_kypc;
      continue;
    }
    const RegionVerdict exact = fdi_exact(rc, p);
    if (!(std::abs(exact.margin) > kMarginFilter)) {
      ++rep.skipped_margin;
      continue;
    }

    ++rep.trials;
    if (exact.stable) ++rep.fdi_stable;
    const std::optional<PWitness> w = find_feasible_p(prob);
    if (w) {
      ++rep.witnesses_found;
      const PWitness again = evaluate_witness(prob, w->p);
      if (!is_feasible(again, true)) throw std::logic_error("harness: returned witness fails re-verification");
    }
    const bool sampled_stable = fdi_sampled(rc, p, 10000).stable;
    const bool consistent = (w.has_value() == exact.stable) && (!w || sampled_stable);
    if (!consistent) {
      std::ostringstream os;
      os.precision(17);
      os << "mu=" << mu << " lambda=" << rc.lambda() << " alpha=" << alpha << " beta1=" << beta1
         << " beta2=" << beta2 << " delta=" << delta << " fdi_exact=" << exact.stable
         << " margin=" << exact.margin << " witness=" << w.has_value() << " fdi_sampled=" << sampled_stable;
      rep.counterexamples.push_back(os.str());
    }
  }
  return rep;
}

}  // namespace agdrc
