// Acceptance checks. Prints one PASS/FAIL line per criterion followed by
// indented detail lines; exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "agdrc/analytic.hpp"
#include "agdrc/io.hpp"
#include "agdrc/lmi.hpp"
#include "agdrc/model.hpp"
#include "agdrc/simulate.hpp"

using namespace agdrc;

namespace {

struct Outcome {
  bool pass = false;
  std::vector<std::string> details;
};

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int failures = 0;

void criterion(int id, const char* title, double time_limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.details.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = time_limit_s <= 0.0 || secs < time_limit_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("[%s] %2d. %s (%.3f s", pass ? "PASS" : "FAIL", id, title, secs);
  if (time_limit_s > 0.0) std::printf(", limit %.0f s", time_limit_s);
  std::printf(")\n");
  for (const auto& d : o.details) std::printf("        %s\n", d.c_str());
  std::fflush(stdout);
}

// Largest β with a stable verdict, by bisection on [0, 0.999].
double sup_stable_beta(const std::function<bool(double)>& stable) {
  double lo = 0.0, hi = 0.999;
  for (int i = 0; i < 50; ++i) {
    const double mid = 0.5 * (lo + hi);
    (stable(mid) ? lo : hi) = mid;
  }
  return lo;
}

Outcome threshold(const Family& fam, double lo, double hi) {
  const RCParams rc(0.5, 0.5);
  const double b = sup_stable_beta([&](double beta) { return fdi_exact(rc, fam.at(0.1, beta)).stable; });
  return {b >= lo && b <= hi, {fmt("sup stable beta = %.6f, required [%.4f, %.4f]", b, lo, hi)}};
}

Outcome triangulation() {
  constexpr double kBand = 1e-3;
  const std::vector<std::pair<double, double>> pairs{{0.5, 0.5}, {0.2, 0.8}, {0.9, 0.9}, {1.0, 1.0}};
  const std::vector<double> alphas = linspace(0.05, 3.0, 60);
  const std::vector<double> betas = linspace(0.01, 0.99, 60);
  Outcome o{true, {}};
  for (const auto& [mu, lam] : pairs) {
    const RCParams rc(mu, lam);
    int compared = 0, excluded = 0, stable = 0, mismatches = 0;
    std::string first;
    for (double beta : betas) {
      for (double alpha : alphas) {
        if (near_boundary(Route::FdiExact, rc, Family::hb(), alpha, beta, kBand) ||
            near_boundary(Route::TheoremHB, rc, Family::hb(), alpha, beta, kBand)) {
          ++excluded;
          continue;
        }
        const AGDParams p = AGDParams::heavy_ball(alpha, beta);
        const bool t = hb_region(rc, alpha, beta).stable;
        const bool e = fdi_exact(rc, p).stable;
        const bool s = fdi_sampled(rc, p, 10000).stable;
        ++compared;
        stable += e;
        if (t != e || e != s) {
          ++mismatches;
          if (first.empty()) first = fmt("first mismatch alpha=%.4f beta=%.4f theorem=%d exact=%d sampled=%d", alpha,
                                         beta, t, e, s);
        }
      }
    }
    o.pass = o.pass && mismatches == 0 && compared > 0;
    o.details.push_back(fmt("(mu,lambda)=(%.1f,%.1f): %d cells compared, %d excluded as boundary, %d stable, %d mismatches",
                            mu, lam, compared, excluded, stable, mismatches));
    if (!first.empty()) o.details.push_back(first);
  }
  return o;
}

Outcome kyp_equivalence() {
  const HarnessReport r = kyp_equivalence_harness(200, 20240611);
  Outcome o;
  o.pass = r.trials == 200 && r.counterexamples.empty() && r.witnesses_found == r.fdi_stable;
  o.details.push_back(fmt("%d trials (%d skipped for KYP conditions, %d for margin); fdi_exact stable on %d; witnesses on %d",
                          r.trials, r.skipped_kypc, r.skipped_margin, r.fdi_stable, r.witnesses_found));
  o.details.push_back("every witness re-verified: P > 1e-10, max eig(LMI) <= -1e-10");
  for (const auto& c : r.counterexamples) o.details.push_back("counterexample: " + c);
  return o;
}

Outcome simulation() {
  const GradOracle f = benchmark_44();
  const Point z0{24.0};
  const Trace gd = run(f, Algo::GD, AGDParams::gd(0.1), z0, z0, 1000);
  const Trace hb = run(f, Algo::HB, AGDParams::heavy_ball(0.1, 0.59), z0, z0, 1000);
  const Trace nag = run(f, Algo::NAG, AGDParams::nesterov(0.1, 0.69), z0, z0, 1000);
  const bool converged =
      gd.status == RunStatus::Converged && hb.status == RunStatus::Converged && nag.status == RunStatus::Converged;
  Outcome o;
  o.pass = converged && hb.iterations() < gd.iterations() && nag.iterations() < gd.iterations();
  o.details.push_back(fmt("iterations to |z| <= 1e-6: GD %zu, HB %zu, NAG %zu", gd.iterations(), hb.iterations(),
                          nag.iterations()));
  return o;
}

Outcome decay_replay() {
  const RCParams rc(0.5, 0.5);
  const AGDParams p = AGDParams::heavy_ball(0.1, 0.59);
  const auto cert = certify_rate(rc, p, 1e-3);
  if (!cert) return {false, {"certify_rate returned no certificate"}};
  const GradOracle f = benchmark_44();
  const Trace t = run(f, Algo::HB, p, Point{24.0}, Point{24.0}, 1000);
  const DecayReport d = check_certified_decay(t, cert->witness, cert->rho, f.minimizer);
  // The RC was verified on [−50, 50]; the replay is only meaningful there.
  const NeighbourhoodReport n = check_stays_in_neighbourhood(t, f.minimizer, 50.0);
  Outcome o;
  o.pass = d.passed && n.passed && d.steps_checked == t.iterations();
  o.details.push_back(fmt("rho = %.6f, cond(P) = %.4f, %zu steps checked, worst V_{k+1}/V_k = %.6f <= rho^2 = %.6f",
                          cert->rho, cert->witness.cond_p, d.steps_checked, d.worst_contraction,
                          cert->rho * cert->rho));
  o.details.push_back(fmt("max |y_k| along the run = %.3f", n.max_distance));
  if (!d.passed)
    o.details.push_back(fmt("violation (%s) at k=%zu: %.17g > %.17g", d.violation_kind.c_str(), *d.first_violation,
                            d.lhs, d.rhs));
  return o;
}

Outcome rc_verification() {
  std::vector<Point> pts;
  for (double x : linspace(-50.0, 50.0, 10000)) pts.push_back({x});
  const RcReport r = verify_rc(benchmark_44(), RCParams(0.5, 0.5), pts);
  return {r.passed && r.min_slack >= 0.0 && r.n_points == 10000,
          {fmt("%zu points, min slack %.6g at x = %.4f", r.n_points, r.min_slack, r.worst_point.at(0))}};
}

Outcome gradient_check() {
  const GradOracle f = benchmark_44();
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double x = u(rng);
    const double h = 1e-5 * std::max(1.0, std::abs(x));
    const double fd = (f.eval_f(Point{x + h}) - f.eval_f(Point{x - h})) / (2.0 * h);
    const double g = f.eval_grad(Point{x})[0];
    worst = std::max(worst, std::abs(fd - g) / std::max(std::abs(g), 1e-12));
  }
  return {worst <= 1e-6, {fmt("100 points, worst relative difference %.3g", worst)}};
}

Outcome monotonicity() {
  const std::vector<double> alphas = parse_grid("0.03:3:0.03");
  std::vector<double> betas;
  for (int i = 1; i <= 100; ++i) betas.push_back(0.0099 * i);
  const std::vector<double> sweep{0.1, 0.5, 1.0, 1.5};
  ScanOptions opts;
  Outcome o{alphas.size() == 100 && betas.size() == 100, {}};
  for (const Family& fam : {Family::hb(), Family::nag()}) {
    for (bool vary_mu : {true, false}) {
      std::string line = to_string(fam) + (vary_mu ? ", lambda=0.5, mu=" : ", mu=0.5, lambda=");
      std::size_t prev = 0;
      for (double v : sweep) {
        const RCParams rc = vary_mu ? RCParams(v, 0.5) : RCParams(0.5, v);
        const std::size_t n = region_scan(rc, fam, alphas, betas, Route::FdiExact, opts).stable_count();
        o.pass = o.pass && n >= prev;
        prev = n;
        line += fmt("%g:%zu ", v, n);
      }
      o.details.push_back(line);
    }
  }
  return o;
}

Outcome sector_round_trip() {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double mu = 0.01 + 4.0 * u(rng);
    const double lam = (0.001 + 0.999 * u(rng)) / mu;
    const RCParams back = sector_to_rc(rc_to_sector(RCParams(mu, lam)));
    worst = std::max({worst, std::abs(back.mu() - mu) / mu, std::abs(back.lambda() - lam) / lam});
  }
  const RCParams fwd = sector_to_rc(SectorBound(1.0, 3.0));
  const bool fwd_ok = std::abs(fwd.mu() - 0.5) <= 1e-12 && std::abs(fwd.lambda() - 1.5) <= 1e-12;
  return {worst <= 1e-12 && fwd_ok,
          {fmt("1000 round trips, worst relative error %.3g", worst),
           fmt("(m, L) = (1, 3) -> (mu, lambda) = (%.17g, %.17g)", fwd.mu(), fwd.lambda())}};
}

}  // namespace

int main() {
  criterion(1, "heavy-ball momentum threshold at mu=lambda=0.5, alpha=0.1", 1.0,
            [] { return threshold(Family::hb(), 0.5932, 0.5952); });
  criterion(2, "Nesterov momentum threshold at mu=lambda=0.5, alpha=0.1", 1.0,
            [] { return threshold(Family::nag(), 0.6940, 0.6960); });
  criterion(3, "theorem / exact FDI / sampled FDI agree on 60x60 grids", 30.0, triangulation);
  criterion(4, "LMI feasibility matches the exact FDI on 200 random trials", 60.0, kyp_equivalence);
  criterion(5, "GD, HB, NAG from z0 = 24: all converge, HB and NAG faster", 0.0, simulation);
  criterion(6, "certified Lyapunov decay and envelope along the HB run", 0.0, decay_replay);
  criterion(7, "benchmark satisfies RC(0.5, 0.5) on [-50, 50]", 0.0, rc_verification);
  criterion(8, "benchmark gradient vs central differences", 0.0, gradient_check);
  criterion(9, "stable-cell counts nondecreasing in mu and in lambda", 0.0, monotonicity);
  criterion(10, "sector <-> RC conversion round trip", 0.0, sector_round_trip);
  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
