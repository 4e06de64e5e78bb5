#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "agdrc/model.hpp"

namespace agdrc {

enum class Route { TheoremHB, TheoremNAG, FdiExact, FdiSampled };

std::string_view to_string(Route r);
Route route_from_string(std::string_view s);

struct RegionVerdict {
  bool stable = false;
  Route route = Route::FdiExact;
  /// Signed slack of the governing inequality; stable ⇔ margin > 0.
  double margin = 0.0;
  /// Which branch / case of the analysis decided the verdict.
  std::string detail;
  /// Set by callers that probe the neighbourhood (see near_boundary).
  bool boundary = false;
};

/// Shifts δ for which the shifted realization satisfies the KYP conditions.
struct DeltaInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool nonempty = false;

  /// Five deterministic interior points (fractions .1 .25 .5 .75 .9).
  std::vector<double> interior_points() const;
  double midpoint() const { return 0.5 * (lo + hi); }
};

/// Frequency-domain inequality written as a quadratic in u = cos ω:
/// LHS(u) = a u² + b u + c. The shifted LMI is feasible iff LHS < 0 on
/// [−1, 1] and α is below kypc_alpha_bound.
struct FdiQuadratic {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double operator()(double u) const { return (a * u + b) * u + c; }
};

FdiQuadratic fdi_quadratic(const RCParams& rc, const AGDParams& p);

/// Raw value of [(e^{jω}I − A′)⁻¹B′; 1]* Cᵀ M′ C [(e^{jω}I − A′)⁻¹B′; 1] for
/// the δ-shifted realization, evaluated through the complex transfer function.
double fdi_transfer_value(const RCParams& rc, const AGDParams& p, double delta, double omega);

/// Supremum of α admitting a KYP-conditions-satisfying shifted realization:
/// 2(1+β₁)(1+√(1−μλ)) / (λ(1+2β₂)).
double kypc_alpha_bound(const RCParams& rc, double beta1, double beta2);

DeltaInterval admissible_delta_interval(const RCParams& rc, const AGDParams& p);

/// Closed-form decision of the FDI on all of u ∈ [−1, 1] (endpoints plus the
/// vertex when it is interior and a maximum), made in exact rational
/// arithmetic on the double inputs.
RegionVerdict fdi_exact(const RCParams& rc, const AGDParams& p);

/// Brute-force FDI check on a uniform ω-grid over [0, π].
RegionVerdict fdi_sampled(const RCParams& rc, const AGDParams& p, int n_samples = 10000);

/// Closed-form Heavy-ball region. margin is in units of α.
RegionVerdict hb_region(const RCParams& rc, double alpha, double beta);

/// Nesterov region via the case analysis on the axis of symmetry S.
RegionVerdict nag_region(const RCParams& rc, double alpha, double beta);

/// H₁, H₂ of the Heavy-ball region.
double hb_h1(const RCParams& rc, double beta);
double hb_h2(const RCParams& rc, double beta);

/// α-thresholds of the Nesterov case analysis: S ≥ 1 ⇔ α ≤ nag_s_plus_threshold,
/// S ≤ −1 ⇔ α ≥ nag_s_minus_threshold (for α < μ). The latter is N₁.
double nag_s_plus_threshold(const RCParams& rc, double beta);
double nag_s_minus_threshold(const RCParams& rc, double beta);

/// N₂(β): smallest α in the interior-vertex band where the vertex value of
/// the Nesterov FDI quadratic reaches zero, located by safeguarded bisection.
/// Returns +inf when no sign change exists in the band.
double nag_n2_bound(const RCParams& rc, double beta);

/// Maps a scalar β onto (β₁, β₂): HB → (β, 0), NAG → (β, β),
/// General → (β, scale·β + offset).
struct Family {
  enum class Kind { HB, NAG, General };
  Kind kind = Kind::HB;
  double beta2_scale = 0.0;
  double beta2_offset = 0.0;

  static Family hb() { return {Kind::HB, 0.0, 0.0}; }
  static Family nag() { return {Kind::NAG, 1.0, 0.0}; }
  static Family general(double scale, double offset) { return {Kind::General, scale, offset}; }

  AGDParams at(double alpha, double beta) const;
};

std::string to_string(const Family& f);
Family family_from_string(std::string_view s);

/// Single-point verdict for any route. Theorem routes require the matching family.
RegionVerdict evaluate(Route route, const RCParams& rc, const Family& fam, double alpha, double beta,
                       int n_samples = 10000);

/// True when the verdict of `route` changes at (α ± band, β) or (α, β ± band).
bool near_boundary(Route route, const RCParams& rc, const Family& fam, double alpha, double beta,
                   double band = 1e-3, int n_samples = 10000);

struct ScanGrid {
  std::vector<double> alphas;
  std::vector<double> betas;
  /// Row-major with rows indexed by β and columns by α.
  std::vector<RegionVerdict> cells;

  const RegionVerdict& at(std::size_t beta_index, std::size_t alpha_index) const {
    return cells[beta_index * alphas.size() + alpha_index];
  }
  std::size_t stable_count() const;
};

struct ScanOptions {
  int threads = 1;
  int n_samples = 10000;
  bool flag_boundary = false;
  double band = 1e-3;
};

ScanGrid region_scan(const RCParams& rc, const Family& fam, const std::vector<double>& alphas,
                     const std::vector<double>& betas, Route route, const ScanOptions& opts = {});

}  // namespace agdrc
