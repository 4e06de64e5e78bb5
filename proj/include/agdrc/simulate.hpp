#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "agdrc/lmi.hpp"
#include "agdrc/model.hpp"

namespace agdrc {

using Point = std::vector<double>;

/// Deterministic objective with analytic gradient and known minimizer.
struct GradOracle {
  std::size_t dim = 1;
  std::function<double(std::span<const double>)> eval_f;
  std::function<Point(std::span<const double>)> eval_grad;
  Point minimizer;
  std::optional<RCParams> rc_claim;
};

enum class Algo { GD, HB, NAG, General };

std::string_view to_string(Algo a);

enum class RunStatus { Converged, MaxIter, Diverged, NonFiniteGradient };

std::string_view to_string(RunStatus s);

/// points[k] = z_k for k = 0..K; aux[k] = y_k, the point whose gradient
/// produced z_{k+1}. z_prev is the history seed z_{−1}.
struct Trace {
  std::vector<Point> points;
  std::vector<Point> aux;
  Point z_prev;
  AGDParams params;
  Algo algo;
  RunStatus status = RunStatus::MaxIter;
  std::string diagnostic;

  /// Index of the last iterate (equals the iteration count on convergence).
  std::size_t iterations() const { return points.empty() ? 0 : points.size() - 1; }
};

inline constexpr double kDefaultStopTol = 1e-6;
inline constexpr double kDivergenceGuard = 1e12;

/// Runs the two-momentum recursion. GD ignores both momenta, HB uses β₁ with
/// β₂ = 0, NAG uses β₁ for both, General uses the pair as given.
Trace run(const GradOracle& oracle, Algo algo, const AGDParams& p, const Point& z_init, const Point& z_prev,
          int max_iter, double stop_tol = kDefaultStopTol);

/// f(x) = x² on [−6, 6], x² + 1.5|x|(cos(|x| − 6) − 1) elsewhere. RC(0.5, 0.5).
GradOracle benchmark_44();

struct RcReport {
  bool passed = true;
  double min_slack = 0.0;
  Point worst_point;
  std::size_t n_points = 0;
};

RcReport verify_rc(const GradOracle& oracle, const RCParams& rc, const std::vector<Point>& sample_points);

struct DecayReport {
  bool passed = true;
  std::size_t steps_checked = 0;
  std::optional<std::size_t> first_violation;
  std::string violation_kind;  // "lyapunov" or "envelope"
  double lhs = 0.0;
  double rhs = 0.0;
  double worst_contraction = 0.0;  // max over k of V_{k+1}/V_k
};

/// Replays V_k = (φ_k − φ*)ᵀ(P⊗I)(φ_k − φ*) along the trace and checks
/// V_{k+1} ≤ ρ² V_k (1 + 1e−9) and ‖φ_k − φ*‖ ≤ √cond(P) ρᵏ ‖φ₀ − φ*‖ (1 + 1e−9).
DecayReport check_certified_decay(const Trace& trace, const PWitness& witness, double rho, const Point& x_star);

/// ε / √(10 cond(P)).
double safe_init_radius(double eps, double cond_p);

struct NeighbourhoodReport {
  bool passed = true;
  double max_distance = 0.0;
  std::optional<std::size_t> first_exit;
};

/// Checks ‖y_k − x*‖ ≤ ε along the trace.
NeighbourhoodReport check_stays_in_neighbourhood(const Trace& trace, const Point& x_star, double eps);

/// CSV with columns k, z (semicolon-joined when n > 1), dist, f.
void write_trace_csv(std::ostream& os, const Trace& trace, const GradOracle& oracle);

double distance(std::span<const double> a, std::span<const double> b);

}  // namespace agdrc
