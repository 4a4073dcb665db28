#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>

namespace kissbound {

template <std::size_t N>
struct SimplexResult {
  std::array<double, N> point{};
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

// Derivative-free downhill simplex minimisation with the standard
// coefficients (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
// Infeasible points should evaluate to +infinity; they are never accepted
// over a finite vertex. Converged once both the spread of vertex values and
// the simplex diameter (max-norm) are at most `tolerance`.
template <std::size_t N, class F>
SimplexResult<N> simplex_minimize(F&& f, const std::array<double, N>& start,
                                  const std::array<double, N>& step, double tolerance,
                                  int max_evaluations) {
  using Point = std::array<double, N>;
  std::array<Point, N + 1> x{};
  std::array<double, N + 1> fx{};
  int evals = 0;
  auto eval = [&](const Point& p) {
    ++evals;
    return f(p);
  };

  x[0] = start;
  fx[0] = eval(start);
  for (std::size_t i = 0; i < N; ++i) {
    x[i + 1] = start;
    x[i + 1][i] += step[i];
    fx[i + 1] = eval(x[i + 1]);
  }

  std::array<std::size_t, N + 1> order{};
  bool converged = false;
  while (true) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fx[a] < fx[b]; });
    {
      std::array<Point, N + 1> xs;
      std::array<double, N + 1> fs;
      for (std::size_t i = 0; i <= N; ++i) {
        xs[i] = x[order[i]];
        fs[i] = fx[order[i]];
      }
      x = xs;
      fx = fs;
    }

    double spread = 0.0;
    double diameter = 0.0;
    for (std::size_t i = 1; i <= N; ++i) {
      spread = std::max(spread, std::abs(fx[i] - fx[0]));
      for (std::size_t k = 0; k < N; ++k) diameter = std::max(diameter, std::abs(x[i][k] - x[0][k]));
    }
    if (spread <= tolerance && diameter <= tolerance) {
      converged = true;
      break;
    }
    if (evals >= max_evaluations) break;

    Point centroid{};
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) centroid[k] += x[i][k] / static_cast<double>(N);

    auto along = [&](double t) {
      Point p;
      for (std::size_t k = 0; k < N; ++k) p[k] = centroid[k] + t * (x[N][k] - centroid[k]);
      return p;
    };

    const Point reflected = along(-1.0);
    const double fr = eval(reflected);
    if (fr < fx[0]) {
      const Point expanded = along(-2.0);
      const double fe = eval(expanded);
      if (fe < fr) {
        x[N] = expanded;
        fx[N] = fe;
      } else {
        x[N] = reflected;
        fx[N] = fr;
      }
      continue;
    }
    if (fr < fx[N - 1]) {
      x[N] = reflected;
      fx[N] = fr;
      continue;
    }

    bool accepted = false;
    if (fr < fx[N]) {
      const Point outside = along(-0.5);
      const double fo = eval(outside);
      if (fo <= fr) {
        x[N] = outside;
        fx[N] = fo;
        accepted = true;
      }
    } else {
      const Point inside = along(0.5);
      const double fi = eval(inside);
      if (fi < fx[N]) {
        x[N] = inside;
        fx[N] = fi;
        accepted = true;
      }
    }
    if (accepted) continue;

    for (std::size_t i = 1; i <= N; ++i) {
      for (std::size_t k = 0; k < N; ++k) x[i][k] = x[0][k] + 0.5 * (x[i][k] - x[0][k]);
      fx[i] = eval(x[i]);
    }
  }

  return {x[0], fx[0], evals, converged};
}

}  // namespace kissbound
