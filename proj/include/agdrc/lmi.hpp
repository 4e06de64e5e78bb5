#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "agdrc/analytic.hpp"
#include "agdrc/model.hpp"

namespace agdrc {

/// [[AᵀPA − ρ²P, AᵀPB], [BᵀPA, BᵀPB]] + [[C, D], [0, 1]]ᵀ M [[C, D], [0, 1]] ≼ 0
/// (≺ 0 when strict).
struct LmiProblem {
  StateSpace sys;
  QuadForm quad;
  double rho = 1.0;
  bool strict = true;
};

struct PWitness {
  Mat2 p;
  double max_eig_lhs = 0.0;
  double min_eig_p = 0.0;
  double cond_p = 0.0;
};

struct RateCertificate {
  double rho = 1.0;
  PWitness witness;
  double bisection_tol = 0.0;
  double delta = 0.0;  // shift of the realization the witness was found for
};

/// Eigenvalue thresholds a witness must clear.
inline constexpr double kLmiStrictTol = 1e-10;
inline constexpr double kPositivityTol = 1e-10;

Mat3 assemble_lmi(const LmiProblem& prob, const Mat2& p);

/// The P-independent part of assemble_lmi.
Mat3 constraint_term(const LmiProblem& prob);

/// Recomputes eigenvalue data of P and of the assembled LHS.
PWitness evaluate_witness(const LmiProblem& prob, const Mat2& p);
bool is_feasible(const PWitness& w, bool strict);

struct KypcReport {
  bool no_unit_circle_eig = false;  // det(e^{jω}I − A) ≠ 0 for all ω
  bool schur_stable = false;
  bool corner_psd = false;
  double spectral_radius = 0.0;

  bool ok() const { return no_unit_circle_eig && schur_stable && corner_psd; }
  std::string describe() const;
};

KypcReport check_kypc(const StateSpace& sys, const QuadForm& quad);

struct SearchOptions {
  int restarts = 4;
  int max_iter = 600;
};

/// Searches the symmetric 2×2 P for a verified witness. An empty result does
/// not prove infeasibility.
std::optional<PWitness> find_feasible_p(const LmiProblem& prob, const SearchOptions& opts = {});

/// LMI problem of the δ-shifted realization at rate ρ.
LmiProblem shifted_problem(const RCParams& rc, const AGDParams& p, double delta, double rho);

/// Smallest ρ (to within tol) for which a witness is found on one of the
/// admissible shifts.
std::optional<RateCertificate> certify_rate(const RCParams& rc, const AGDParams& p, double tol = 1e-3);

/// Best-effort minimum-condition-number witness for rate ρ.
std::optional<PWitness> min_cond_p(const RCParams& rc, const AGDParams& p, double rho);

struct HarnessReport {
  int trials = 0;
  int skipped_kypc = 0;
  int skipped_margin = 0;
  int fdi_stable = 0;
  int witnesses_found = 0;
  std::vector<std::string> counterexamples;
};

/// Spot-checks the LMI ⇔ FDI equivalence on random margin-filtered points.
/// Throws std::logic_error if a returned witness fails re-verification.
HarnessReport kyp_equivalence_harness(int n_trials, std::uint64_t seed);

}  // namespace agdrc
