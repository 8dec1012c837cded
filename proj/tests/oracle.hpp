#pragma once

// Brute-force reference implementations for tests. Written directly from the
// closed-form expressions with std::log2, sharing no code with the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

namespace oracle {

inline double half_log(double x) { return 0.5 * std::log2(1.0 + x); }

// Four-term minimum; `penalised` selects the r1 + r2 - (1/2)log2(1/(1-rho^2))
// source term instead of r1 + r2.
inline double objective(double r1, double r2, double p1, double p2, double rho, bool penalised) {
  const double b1 = r1 + half_log((1 - rho * rho) * p2);
  const double b2 = r2 + half_log((1 - rho * rho) * p1);
  const double b3 = half_log(p1 + p2 + 2 * rho * std::sqrt(p1 * p2));
  double b4 = r1 + r2;
  if (penalised) b4 = (rho >= 1.0) ? -std::numeric_limits<double>::infinity() : r1 + r2 + 0.5 * std::log2(1 - rho * rho);
  return std::min({b1, b2, b3, b4});
}

inline double grid_max(double r1, double r2, double p1, double p2, double lo, double hi, bool penalised,
                       std::size_t points) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < points; ++k) {
    const double rho = (k + 1 == points) ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(points - 1);
    best = std::max(best, objective(r1, r2, p1, p2, rho, penalised));
  }
  return best;
}

inline double rho_star(double p1, double p2) {
  const double x = std::sqrt(p1 * p2);
  return std::sqrt(1 + 1 / (4 * p1 * p2)) - 1 / (2 * x);
}

inline double rho_circ(double r1, double r2) { return std::sqrt(1 - std::pow(2.0, -2 * std::min(r1, r2))); }

inline double upper(double r1, double r2, double p1, double p2, std::size_t points) {
  if (p1 * p2 == 0) return grid_max(r1, r2, p1, p2, 0, 1, false, points);
  const double s = rho_star(p1, p2);
  return std::max(grid_max(r1, r2, p1, p2, 0, s, true, points), grid_max(r1, r2, p1, p2, s, 1, false, points));
}

inline double lower(double r1, double r2, double p1, double p2, std::size_t points) {
  return grid_max(r1, r2, p1, p2, 0, rho_circ(r1, r2), true, points);
}

inline double cutset(double r1, double r2, double p1, double p2, std::size_t points) {
  return grid_max(r1, r2, p1, p2, 0, 1, false, points);
}

// Plain bisection for the root of f on [lo, hi], f(lo) and f(hi) of opposite sign.
template <class F>
double bisect(F f, double lo, double hi, int iterations = 200) {
  const bool lo_negative = f(lo) < 0;
  for (int k = 0; k < iterations; ++k) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) < 0) == lo_negative) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
