#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>

namespace agdrc::detail {

template <std::size_t N>
struct SimplexResult {
  std::array<double, N> x{};
  double value = 0.0;
  int iterations = 0;
};

/// Nelder–Mead simplex descent with the standard coefficients. Stops after
/// max_iter iterations, when the simplex values span less than f_tol, or as
/// soon as the best value drops below `good_enough`.
template <std::size_t N>
SimplexResult<N> nelder_mead(const std::function<double(const std::array<double, N>&)>& f,
                             const std::array<double, N>& start, const std::array<double, N>& step,
                             int max_iter, double f_tol, double good_enough) {
  using Point = std::array<double, N>;
  std::array<Point, N + 1> pts;
  std::array<double, N + 1> vals;
  pts[0] = start;
  for (std::size_t i = 0; i < N; ++i) {
    pts[i + 1] = start;
    pts[i + 1][i] += step[i];
  }
  for (std::size_t i = 0; i <= N; ++i) vals[i] = f(pts[i]);

  auto lerp = [](const Point& from, const Point& to, double t) {
    Point r;
    for (std::size_t i = 0; i < N; ++i) r[i] = from[i] + t * (to[i] - from[i]);
    return r;
  };

  int it = 0;
  for (; it < max_iter; ++it) {
    std::array<std::size_t, N + 1> order;
    for (std::size_t i = 0; i <= N; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order[0], worst = order[N], second = order[N - 1];
    if (vals[best] < good_enough || vals[worst] - vals[best] < f_tol) break;

    Point centroid{};
    for (std::size_t k = 0; k < N; ++k) {
      const Point& p = pts[order[k]];
      for (std::size_t i = 0; i < N; ++i) centroid[i] += p[i] / static_cast<double>(N);
    }

    const Point reflected = lerp(centroid, pts[worst], -1.0);
    const double fr = f(reflected);
    if (fr < vals[best]) {
      const Point expanded = lerp(centroid, pts[worst], -2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        pts[worst] = expanded;
        vals[worst] = fe;
      } else {
        pts[worst] = reflected;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = reflected;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const Point contracted = lerp(centroid, outside ? reflected : pts[worst], 0.5);
    const double fc = f(contracted);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = contracted;
      vals[worst] = fc;
      continue;
    }
    // Shrink toward the best vertex.
    for (std::size_t k = 1; k <= N; ++k) {
      const std::size_t j = order[k];
      pts[j] = lerp(pts[best], pts[j], 0.5);
      vals[j] = f(pts[j]);
    }
  }

  const auto best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  return {pts[best], vals[best], it};
}

}  // namespace agdrc::detail
