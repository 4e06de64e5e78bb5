#include <doctest.h>

#include <stdexcept>

#include "agdrc/lmi.hpp"

using namespace agdrc;

TEST_CASE("LMI assembly matches the block formula") {
  const RCParams rc(0.5, 0.5);
  const AGDParams p = AGDParams::heavy_ball(0.1, 0.59);
  const LmiProblem prob{build_original_system(p), build_rc_quadform(rc), 0.9, true};
  const Mat2 P = sym2(2.0, -0.5, 1.0);
  const Mat3 lhs = assemble_lmi(prob, P);
  CHECK(is_symmetric(lhs));

  // Upper-left block: AᵀPA − ρ²P + λ-weighted output term.
  const Mat2 a = prob.sys.a;
  const Mat2 ul = a.transposed() * P * a - 0.81 * P;
  const Vec2 c = prob.sys.c;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(lhs(i, j) == doctest::Approx(ul(i, j) - 0.5 * c[i] * c[j]));
  // Corner: BᵀPB + M₂₂.
  const Vec2 b = prob.sys.b;
  CHECK(lhs(2, 2) == doctest::Approx(dot(b, P * b) - 0.5));
  // Off-diagonal: AᵀPB + Cᵀ M₁₂.
  const Vec2 apb = a.transposed() * (P * b);
  for (int i = 0; i < 2; ++i) CHECK(lhs(i, 2) == doctest::Approx(apb[i] + c[i]));
}

TEST_CASE("KYP conditions on the shifted realization") {
  const RCParams rc(0.5, 0.5);
  const AGDParams p = AGDParams::heavy_ball(0.1, 0.59);
  const auto d = admissible_delta_interval(rc, p);
  const auto good = shifted_problem(rc, p, d.midpoint(), 1.0);
  const auto rep = check_kypc(good.sys, good.quad);
  CHECK(rep.ok());
  CHECK(rep.spectral_radius < 1.0);

  // The unshifted realization has an eigenvalue at 1.
  const auto orig = check_kypc(build_original_system(p), build_rc_quadform(rc));
  CHECK_FALSE(orig.no_unit_circle_eig);
  CHECK_FALSE(orig.ok());
  CHECK_FALSE(orig.describe().empty());
}

TEST_CASE("witness found inside the region, none outside") {
  const RCParams rc(0.5, 0.5);
  for (double beta : {0.1, 0.3, 0.5, 0.59}) {
    const AGDParams p = AGDParams::heavy_ball(0.1, beta);
    const auto d = admissible_delta_interval(rc, p);
    const auto w = find_feasible_p(shifted_problem(rc, p, d.midpoint(), 1.0));
    REQUIRE(w.has_value());
    CHECK(w->min_eig_p > kPositivityTol);
    CHECK(w->max_eig_lhs <= -kLmiStrictTol);
    CHECK(is_feasible(*w, true));
    // Re-verification from scratch.
    const auto again = evaluate_witness(shifted_problem(rc, p, d.midpoint(), 1.0), w->p);
    CHECK(again.max_eig_lhs == doctest::Approx(w->max_eig_lhs));
  }
  for (double beta : {0.6, 0.7, 0.9}) {
    const AGDParams p = AGDParams::heavy_ball(0.1, beta);
    const auto d = admissible_delta_interval(rc, p);
    CHECK_FALSE(find_feasible_p(shifted_problem(rc, p, d.midpoint(), 1.0)).has_value());
  }
}

TEST_CASE("feasibility does not depend on the admissible shift") {
  const RCParams rc(0.2, 0.8);
  const AGDParams p = AGDParams::nesterov(0.15, 0.15);
  REQUIRE(fdi_exact(rc, p).stable);
  const auto d = admissible_delta_interval(rc, p);
  for (double delta : d.interior_points()) CHECK(find_feasible_p(shifted_problem(rc, p, delta, 1.0)).has_value());
}

TEST_CASE("rate certificate") {
  const RCParams rc(0.5, 0.5);
  const auto cert = certify_rate(rc, AGDParams::heavy_ball(0.1, 0.59), 1e-3);
  REQUIRE(cert.has_value());
  CHECK(cert->rho < 1.0);
  CHECK(cert->rho > 0.9);
  CHECK(is_feasible(cert->witness, false));

  // Smaller momentum, faster certified rate.
  const auto faster = certify_rate(rc, AGDParams::heavy_ball(0.3, 0.2), 1e-3);
  REQUIRE(faster.has_value());
  CHECK(faster->rho < cert->rho);

  CHECK_FALSE(certify_rate(rc, AGDParams::heavy_ball(0.1, 0.7), 1e-3).has_value());

  const auto best = min_cond_p(rc, AGDParams::heavy_ball(0.1, 0.59), cert->rho);
  REQUIRE(best.has_value());
  CHECK(best->cond_p >= 1.0);
  CHECK(best->cond_p <= cert->witness.cond_p * (1.0 + 1e-6));
}

TEST_CASE("equivalence harness, small run") {
  const auto rep = kyp_equivalence_harness(40, 123);
  CHECK(rep.trials == 40);
  CHECK(rep.counterexamples.empty());
  CHECK(rep.witnesses_found == rep.fdi_stable);
}
