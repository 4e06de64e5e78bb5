#include <doctest.h>

#include <random>

#include <Eigen/Dense>

#include "agdrc/linalg.hpp"

using namespace agdrc;

namespace {

Eigen::Vector3d eigen_reference(const Mat3& m) {
  Eigen::Matrix3d e;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e(i, j) = m(i, j);
  return Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(e, Eigen::EigenvaluesOnly).eigenvalues();
}

Mat3 sym3(const std::array<double, 6>& u) {
  Mat3 m;
  m(0, 0) = u[0];
  m(1, 1) = u[1];
  m(2, 2) = u[2];
  m(0, 1) = m(1, 0) = u[3];
  m(0, 2) = m(2, 0) = u[4];
  m(1, 2) = m(2, 1) = u[5];
  return m;
}

}  // namespace

TEST_CASE("2x2 symmetric eigenvalues") {
  const auto ev = sym_eigenvalues(sym2(2.0, 1.0, 2.0));
  CHECK(ev[0] == doctest::Approx(1.0));
  CHECK(ev[1] == doctest::Approx(3.0));

  const auto diag = sym_eigenvalues(sym2(-4.0, 0.0, 5.0));
  CHECK(diag[0] == -4.0);
  CHECK(diag[1] == 5.0);
}

TEST_CASE("3x3 symmetric eigenvalues, fixed matrix") {
  // numpy.linalg.eigvalsh
  const auto ev = sym_eigenvalues(sym3({2.0, 3.0, -1.0, -1.0, 0.5, 0.25}));
  CHECK(ev[0] == doctest::Approx(-1.1242174104580454).epsilon(1e-13));
  CHECK(ev[1] == doctest::Approx(1.5056208493588452).epsilon(1e-13));
  CHECK(ev[2] == doctest::Approx(3.6185965610992006).epsilon(1e-13));
}

TEST_CASE("3x3 symmetric eigenvalues agree with Eigen") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> logscale(-6.0, 4.0);
  for (int trial = 0; trial < 2000; ++trial) {
    std::array<double, 6> e;
    const double s = std::pow(10.0, logscale(rng));
    for (double& x : e) x = s * u(rng);
    // Repeated and nearly repeated spectra are the hard cases.
    if (trial % 5 == 1) e[3] = e[4] = e[5] = 0.0, e[1] = e[0];
    if (trial % 5 == 2) e[3] = e[4] = e[5] = 0.0, e[1] = e[2] = e[0];
    if (trial % 5 == 3) e[4] = e[5] = s * 1e-9;
    const Mat3 m = sym3(e);
    const auto ev = sym_eigenvalues(m);
    const auto ref = eigen_reference(m);
    const double scale = std::max({std::abs(ref[0]), std::abs(ref[2]), 1e-300});
    for (int i = 0; i < 3; ++i) CHECK(std::abs(ev[i] - ref[i]) <= 1e-12 * scale);
  }
}

TEST_CASE("spectral radius and condition number") {
  Mat2 rot;
  rot(0, 0) = 0.0;
  rot(0, 1) = -0.5;
  rot(1, 0) = 0.5;
  rot(1, 1) = 0.0;
  CHECK(spectral_radius(rot) == doctest::Approx(0.5));

  Mat2 comp;  // companion of (z − 0.9)(z + 0.2)
  comp(0, 0) = 0.7;
  comp(0, 1) = 0.18;
  comp(1, 0) = 1.0;
  comp(1, 1) = 0.0;
  CHECK(spectral_radius(comp) == doctest::Approx(0.9));

  CHECK(condition_number(sym2(4.0, 0.0, 1.0)) == doctest::Approx(4.0));
  CHECK(std::isinf(condition_number(sym2(1.0, 0.0, -1.0))));
}
