#include "agdrc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace agdrc {

namespace {

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm2(const Vec3& a) { return a[0] * a[0] + a[1] * a[1] + a[2] * a[2]; }

Vec3 mat_vec(const Mat3& m, const Vec3& x) {
  Vec3 r{};
  for (std::size_t i = 0; i < 3; ++i) r[i] = m(i, 0) * x[0] + m(i, 1) * x[1] + m(i, 2) * x[2];
  return r;
}

double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// Unit vector in the (approximate) null space of m − e·I, from the best
// conditioned cross product of two of its rows.
Vec3 eigenvector_for(const Mat3& m, double e) {
  Vec3 r0{m(0, 0) - e, m(0, 1), m(0, 2)};
  Vec3 r1{m(1, 0), m(1, 1) - e, m(1, 2)};
  Vec3 r2{m(2, 0), m(2, 1), m(2, 2) - e};
  Vec3 c[3] = {cross(r0, r1), cross(r0, r2), cross(r1, r2)};
  std::size_t best = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (norm2(c[i]) > norm2(c[best])) best = i;
  double n = std::sqrt(norm2(c[best]));
  double scale = std::max({norm2(r0), norm2(r1), norm2(r2)});
  if (n <= 1e-10 * scale) {
    // m − eI has rank ≤ 1; any vector orthogonal to its dominant row works.
    const Vec3* rows[3] = {&r0, &r1, &r2};
    std::size_t k = 0;
    for (std::size_t i = 1; i < 3; ++i)
      if (norm2(*rows[i]) > norm2(*rows[k])) k = i;
    const Vec3& r = *rows[k];
    if (norm2(r) == 0.0) return {1.0, 0.0, 0.0};
    Vec3 axis = std::abs(r[0]) < 0.9 * std::sqrt(norm2(r)) ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
    Vec3 v = cross(r, axis);
    double vn = std::sqrt(norm2(v));
    return {v[0] / vn, v[1] / vn, v[2] / vn};
  }
  return {c[best][0] / n, c[best][1] / n, c[best][2] / n};
}

}  // namespace

Vec2 sym_eigenvalues(const Mat2& m) {
  double mean = 0.5 * (m(0, 0) + m(1, 1));
  double half_diff = 0.5 * (m(0, 0) - m(1, 1));
  double r = std::hypot(half_diff, m(0, 1));
  return {mean - r, mean + r};
}

Vec3 sym_eigenvalues(const Mat3& m) {
  double off = m(0, 1) * m(0, 1) + m(0, 2) * m(0, 2) + m(1, 2) * m(1, 2);
  if (off == 0.0) {
    Vec3 d{m(0, 0), m(1, 1), m(2, 2)};
    std::sort(d.begin(), d.end());
    return d;
  }

  // Trigonometric solution of the characteristic cubic.
  double q = (m(0, 0) + m(1, 1) + m(2, 2)) / 3.0;
  double d0 = m(0, 0) - q, d1 = m(1, 1) - q, d2 = m(2, 2) - q;
  double p = std::sqrt((d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * off) / 6.0);
  Mat3 b = (1.0 / p) * (m - q * Mat3::identity());
  double det_b = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1)) -
                 b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0)) +
                 b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
  double r = std::clamp(0.5 * det_b, -1.0, 1.0);
  double phi = std::acos(r) / 3.0;
  double top = q + 2.0 * p * std::cos(phi);

  // Deflate: refine the top eigenvalue by its Rayleigh quotient, then take
  // the other two exactly from the 2×2 compression onto the complement.
  Vec3 v = eigenvector_for(m, top);
  Vec3 seed = std::abs(v[0]) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
  Vec3 u1 = cross(v, seed);
  double n1 = std::sqrt(norm2(u1));
  u1 = {u1[0] / n1, u1[1] / n1, u1[2] / n1};
  Vec3 u2 = cross(v, u1);

  double rayleigh = dot3(v, mat_vec(m, v));
  Vec3 mu1 = mat_vec(m, u1);
  Vec3 mu2 = mat_vec(m, u2);
  Mat2 comp = sym2(dot3(u1, mu1), 0.5 * (dot3(u1, mu2) + dot3(u2, mu1)), dot3(u2, mu2));
  Vec2 rest = sym_eigenvalues(comp);

  Vec3 out{rest[0], rest[1], rayleigh};
  std::sort(out.begin(), out.end());
  return out;
}

double spectral_radius(const Mat2& m) {
  double tr = m(0, 0) + m(1, 1);
  double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  double disc = tr * tr - 4.0 * det;
  if (disc < 0.0) return std::sqrt(det);  // complex pair, |z|² = det
  double s = std::sqrt(disc);
  // Stable root pair: the larger-magnitude root first, the other via det.
  double big = 0.5 * (tr + std::copysign(s, tr));
  double small = big != 0.0 ? det / big : 0.0;
  return std::max(std::abs(big), std::abs(small));
}

double condition_number(const Mat2& p) {
  Vec2 e = sym_eigenvalues(p);
  if (!(e[0] > 0.0)) return std::numeric_limits<double>::infinity();
  return e[1] / e[0];
}

}  // namespace agdrc
