#include <doctest.h>

#include <random>
#include <stdexcept>

#include "agdrc/model.hpp"

using namespace agdrc;

TEST_CASE("RC parameter validation") {
  CHECK_NOTHROW(RCParams(0.5, 0.5));
  CHECK_NOTHROW(RCParams(1.0, 1.0));
  CHECK_THROWS_AS(RCParams(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(RCParams(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(RCParams(0.5, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(RCParams(0.5, 0.5, -1.0), std::invalid_argument);
  CHECK(RCParams(1.0, 1.0).sqrt_gap() == 0.0);
  CHECK(RCParams(0.5, 0.5).sqrt_gap() == doctest::Approx(std::sqrt(0.75)));
}

TEST_CASE("AGD parameter validation and factories") {
  CHECK_THROWS_AS(AGDParams(0.0, 0.1, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(AGDParams(0.1, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(AGDParams(0.1, 0.0, -0.1), std::invalid_argument);
  const auto nag = AGDParams::nesterov(0.1, 0.69);
  CHECK(nag.beta1() == nag.beta2());
  CHECK(AGDParams::heavy_ball(0.1, 0.59).beta2() == 0.0);
}

TEST_CASE("original realization") {
  const auto s = build_original_system(AGDParams(0.1, 0.59, 0.3));
  CHECK(s.a(0, 0) == doctest::Approx(1.59));
  CHECK(s.a(0, 1) == doctest::Approx(-0.59));
  CHECK(s.a(1, 0) == 1.0);
  CHECK(s.a(1, 1) == 0.0);
  CHECK(s.b[0] == doctest::Approx(-0.1));
  CHECK(s.b[1] == 0.0);
  CHECK(s.c[0] == doctest::Approx(1.3));
  CHECK(s.c[1] == doctest::Approx(-0.3));
  CHECK_FALSE(s.delta.has_value());
}

TEST_CASE("shifted realization reproduces the original iterates") {
  // One step of the recursion on f(x) = x²/2 computed both ways.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const AGDParams p(0.05 + 0.5 * (u(rng) + 1.0), 0.45 * (u(rng) + 1.0), 0.45 * (u(rng) + 1.0));
    const double delta = -0.3 * (u(rng) + 1.0) - 1e-3;
    const double z = u(rng), zm = u(rng);
    const double y = (1.0 + p.beta2()) * z - p.beta2() * zm;
    const double grad = std::sin(3.0 * y) + 2.0 * y;

    const auto orig = build_original_system(p);
    const double next_orig = orig.a(0, 0) * z + orig.a(0, 1) * zm + orig.b[0] * grad;

    // Shifted input u′ = −α∇f(y) − δy enters through B′ = e₁.
    const auto sh = build_shifted_system(p, delta);
    const double y_sh = sh.c[0] * z + sh.c[1] * zm;
    CHECK(y_sh == doctest::Approx(y));
    const double u_sh = -p.alpha() * grad - delta * y;
    const double next_sh = sh.a(0, 0) * z + sh.a(0, 1) * zm + sh.b[0] * u_sh;
    CHECK(next_sh == doctest::Approx(next_orig).epsilon(1e-12));
  }
}

TEST_CASE("RC quadratic form") {
  const auto q = build_rc_quadform(RCParams(0.5, 0.25));
  CHECK(q.m(0, 0) == -0.25);
  CHECK(q.m(0, 1) == 1.0);
  CHECK(q.m(1, 0) == 1.0);
  CHECK(q.m(1, 1) == -0.5);
  // y − y* = e, u − u* = g: 2eg − λe² − μg²
  CHECK(q.eval(2.0, 3.0) == doctest::Approx(12.0 - 1.0 - 4.5));
}

TEST_CASE("shifted quadratic form entries") {
  const RCParams rc(0.5, 0.5);
  const AGDParams p(0.1, 0.59, 0.0);
  const double d = -0.2;
  const auto q = build_shifted_quadform(rc, p, d);
  CHECK(q.m(0, 0) == doctest::Approx(-(2 * 0.1 * d + 0.5 * 0.01 + 0.5 * d * d)));
  CHECK(q.m(0, 1) == doctest::Approx(-0.1 - 0.5 * d));
  CHECK(q.m(1, 1) == doctest::Approx(-0.5));
}

TEST_CASE("sector conversion") {
  const auto rc = sector_to_rc(SectorBound(1.0, 3.0));
  CHECK(rc.mu() == doctest::Approx(0.5));
  CHECK(rc.lambda() == doctest::Approx(1.5));
  const auto s = rc_to_sector(RCParams(0.5, 1.5));
  CHECK(s.m_lo() == doctest::Approx(1.0));
  CHECK(s.l_hi() == doctest::Approx(3.0));
  CHECK_THROWS_AS(SectorBound(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SectorBound(0.0, 1.0), std::invalid_argument);
}
