#include "agdrc/simulate.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace agdrc {

namespace {

double norm(std::span<const double> a) {
  double s = 0.0;
  for (double x : a) s += x * x;
  return std::sqrt(s);
}

struct Momenta {
  double b1;
  double b2;
};

Momenta momenta_for(Algo algo, const AGDParams& p) {
  switch (algo) {
    case Algo::GD: return {0.0, 0.0};
    case Algo::HB: return {p.beta1(), 0.0};
    case Algo::NAG: return {p.beta1(), p.beta1()};
    case Algo::General: return {p.beta1(), p.beta2()};
  }
  throw std::logic_error("bad algo");
}

// V = Σ_i [z_i, zprev_i] P [z_i, zprev_i]ᵀ with both shifted by x*.
double lyapunov(const Mat2& p, const Point& z, const Point& zprev, const Point& x_star) {
  double v = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) v += quad(p, Vec2{z[i] - x_star[i], zprev[i] - x_star[i]});
  return v;
}

double phi_norm(const Point& z, const Point& zprev, const Point& x_star) {
  double s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double a = z[i] - x_star[i], b = zprev[i] - x_star[i];
    s += a * a + b * b;
  }
  return std::sqrt(s);
}

}  // namespace

std::string_view to_string(Algo a) {
  switch (a) {
    case Algo::GD: return "gd";
    case Algo::HB: return "hb";
    case Algo::NAG: return "nag";
    case Algo::General: return "general";
  }
  return "";
}

std::string_view to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Converged: return "converged";
    case RunStatus::MaxIter: return "max-iter";
    case RunStatus::Diverged: return "diverged";
    case RunStatus::NonFiniteGradient: return "non-finite-gradient";
  }
  return "";
}

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

Trace run(const GradOracle& oracle, Algo algo, const AGDParams& p, const Point& z_init, const Point& z_prev,
          int max_iter, double stop_tol) {
  if (max_iter < 1) throw std::invalid_argument("run: max_iter must be >= 1");
  if (z_init.size() != oracle.dim || z_prev.size() != oracle.dim)
    throw std::invalid_argument("run: seed dimension does not match the oracle");
  const auto [b1, b2] = momenta_for(algo, p);
  const double alpha = p.alpha();
  const std::size_t n = oracle.dim;

  Trace t{{z_init}, {}, z_prev, p, algo, RunStatus::MaxIter, {}};
  Point z = z_init, zp = z_prev, y(n), next(n);
  for (int k = 0;; ++k) {
    if (distance(z, oracle.minimizer) <= stop_tol) {
      t.status = RunStatus::Converged;
      break;
    }
    if (k == max_iter) break;
    for (std::size_t i = 0; i < n; ++i) y[i] = (1.0 + b2) * z[i] - b2 * zp[i];
    const Point g = oracle.eval_grad(y);
    for (double gi : g) {
      if (!std::isfinite(gi)) {
        t.status = RunStatus::NonFiniteGradient;
        t.diagnostic = "non-finite gradient at iteration " + std::to_string(k);
        return t;
      }
    }
    for (std::size_t i = 0; i < n; ++i) next[i] = (1.0 + b1) * z[i] - b1 * zp[i] - alpha * g[i];
    t.aux.push_back(y);
    t.points.push_back(next);
    zp = z;
    z = next;
    if (norm(z) > kDivergenceGuard) {
      t.status = RunStatus::Diverged;
      t.diagnostic = "iterate norm exceeded 1e12 at iteration " + std::to_string(k + 1);
      break;
    }
  }
  return t;
}

GradOracle benchmark_44() {
  GradOracle o;
  o.dim = 1;
  o.eval_f = [](std::span<const double> x) {
    const double v = x[0], a = std::abs(v);
    if (a <= 6.0) return v * v;
    return v * v + 1.5 * a * (std::cos(a - 6.0) - 1.0);
  };
  o.eval_grad = [](std::span<const double> x) {
    const double v = x[0], a = std::abs(v);
    if (a <= 6.0) return Point{2.0 * v};
    const double s = v > 0.0 ? 1.0 : -1.0;
    return Point{2.0 * v + 1.5 * s * ((std::cos(a - 6.0) - 1.0) - a * std::sin(a - 6.0))};
  };
  o.minimizer = {0.0};
  o.rc_claim = RCParams(0.5, 0.5);
  return o;
}

RcReport verify_rc(const GradOracle& oracle, const RCParams& rc, const std::vector<Point>& sample_points) {
  RcReport r;
  r.min_slack = std::numeric_limits<double>::infinity();
  for (const Point& z : sample_points) {
    if (z.size() != oracle.dim) throw std::invalid_argument("verify_rc: point dimension mismatch");
    const double dist = distance(z, oracle.minimizer);
    if (rc.epsilon() && dist > *rc.epsilon())
      throw std::invalid_argument("verify_rc: sample point outside the RC neighbourhood");
    const Point g = oracle.eval_grad(z);
    double inner = 0.0, gg = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      inner += g[i] * (z[i] - oracle.minimizer[i]);
      gg += g[i] * g[i];
    }
    const double slack = inner - 0.5 * rc.mu() * gg - 0.5 * rc.lambda() * dist * dist;
    ++r.n_points;
    if (slack < r.min_slack) {
      r.min_slack = slack;
      r.worst_point = z;
    }
  }
  r.passed = r.n_points == 0 || r.min_slack >= 0.0;
  if (r.n_points == 0) r.min_slack = 0.0;
  return r;
}

DecayReport check_certified_decay(const Trace& trace, const PWitness& witness, double rho, const Point& x_star) {
  constexpr double kRelTol = 1e-9;
  DecayReport r;
  if (trace.points.empty()) return r;
  const Mat2& p = witness.p;
  const double sqrt_cond = std::sqrt(condition_number(p));

  auto state = [&](std::size_t k) -> std::pair<const Point&, const Point&> {
    return {trace.points[k], k == 0 ? trace.z_prev : trace.points[k - 1]};
  };
  const auto [z0, zm1] = state(0);
  const double phi0 = phi_norm(z0, zm1, x_star);
  double v_prev = lyapunov(p, z0, zm1, x_star);
  double rho_k = 1.0;

  auto fail = [&](std::size_t k, const char* kind, double lhs, double rhs) {
    if (r.first_violation) return;
    r.passed = false;
    r.first_violation = k;
    r.violation_kind = kind;
    r.lhs = lhs;
    r.rhs = rhs;
  };

  for (std::size_t k = 0; k < trace.points.size(); ++k) {
    const auto [z, zp] = state(k);
    const double env = sqrt_cond * rho_k * phi0 * (1.0 + kRelTol);
    const double dist = phi_norm(z, zp, x_star);
    if (dist > env) fail(k, "envelope", dist, env);
    if (k > 0) {
      const double v = lyapunov(p, z, zp, x_star);
      const double bound = rho * rho * v_prev * (1.0 + kRelTol);
      if (v > bound) fail(k, "lyapunov", v, bound);
      if (v_prev > 0.0) r.worst_contraction = std::max(r.worst_contraction, v / v_prev);
      v_prev = v;
      ++r.steps_checked;
    }
    rho_k *= rho;
  }
  return r;
}

double safe_init_radius(double eps, double cond_p) {
  if (!(eps > 0.0)) throw std::invalid_argument("safe_init_radius: eps must be positive");
  if (!(cond_p >= 1.0)) throw std::invalid_argument("safe_init_radius: cond(P) must be >= 1");
  return eps / std::sqrt(10.0 * cond_p);
}

NeighbourhoodReport check_stays_in_neighbourhood(const Trace& trace, const Point& x_star, double eps) {
  NeighbourhoodReport r;
  for (std::size_t k = 0; k < trace.aux.size(); ++k) {
    const double d = distance(trace.aux[k], x_star);
    r.max_distance = std::max(r.max_distance, d);
    if (d > eps && !r.first_exit) {
      r.passed = false;
      r.first_exit = k;
    }
  }
  return r;
}

void write_trace_csv(std::ostream& os, const Trace& trace, const GradOracle& oracle) {
  os << "k,z,dist,f\n";
  std::ostringstream line;
  line << std::setprecision(17);
  for (std::size_t k = 0; k < trace.points.size(); ++k) {
    line.str("");
    const Point& z = trace.points[k];
    line << k << ',';
    for (std::size_t i = 0; i < z.size(); ++i) line << (i ? ";" : "") << z[i];
    line << ',' << distance(z, oracle.minimizer) << ',' << oracle.eval_f(z) << '\n';
    os << line.str();
  }
}

}  // namespace agdrc
