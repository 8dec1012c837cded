#pragma once

// One-dimensional solvers for objectives built from monotone terms on a
// correlation interval.
//
// maximize_min handles  max_{rho in [lo, hi]}  min{ inc(rho), D(rho) }  where
// inc is nondecreasing and D is the pointwise minimum of nonincreasing terms.
// h = inc - D is then nondecreasing, so the maximum sits at lo (h(lo) >= 0),
// at hi (h(hi) <= 0), or at the sign change of h. A fixed 1024-point grid
// checks the monotonicity assumptions and brackets that sign change before
// bisection. Bisection stops once the bracket is narrower than tol.rho and
// the certified enclosure [max(inc(a), D(b)), min(inc(b), D(a))] of the
// optimum is narrower than tol.value.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "diamond/core.hpp"

namespace diamond {

/// Absolute tolerances on correlations and on rates (bits).
struct Tolerances {
  double rho = 1e-9;
  double value = 1e-9;

  void validate() const {
    auto ok = [](double t) { return std::isfinite(t) && t > 0.0 && t < 1e-2; };
    if (!ok(rho) || !ok(value)) {
      throw DomainError("tolerances must lie in (0, 1e-2)");
    }
  }

  static Tolerances uniform(double tol) {
    Tolerances t{tol, tol};
    t.validate();
    return t;
  }
};

/// Closed correlation interval [lo, hi] inside [0, 1].
class Interval {
 public:
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(lo >= 0.0 && hi <= 1.0 && lo <= hi)) {
      throw DomainError("interval must satisfy 0 <= lo <= hi <= 1, got [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
    }
  }

  [[nodiscard]] double lo() const noexcept { return lo_; }
  [[nodiscard]] double hi() const noexcept { return hi_; }
  [[nodiscard]] double width() const noexcept { return hi_ - lo_; }

 private:
  double lo_;
  double hi_;
};

using Term = std::function<Rate(Rho)>;

struct MaxMinResult {
  Rho argmax;
  Rate value;
  /// Certified upper end of the enclosure of the true optimum.
  Rate upper;
  int iterations = 0;
};

inline constexpr std::size_t kBracketGridPoints = 1024;

namespace detail {

inline Rate min_of(std::span<const Term> terms, Rho rho) {
  Rate m = terms.front()(rho);
  for (std::size_t k = 1; k < terms.size(); ++k) m = std::min(m, terms[k](rho));
  return m;
}

// Slack for rounding noise when checking monotonicity on the grid.
inline double monotone_slack(double v) {
  return std::isfinite(v) ? 1e-12 * (1.0 + std::abs(v)) : 0.0;
}

inline Rho grid_point(const Interval& iv, std::size_t k, std::size_t n) {
  if (k + 1 == n) return Rho(iv.hi());
  return Rho(iv.lo() + iv.width() * static_cast<double>(k) / static_cast<double>(n - 1));
}

// inc - D as a plain double; D = -inf gives +inf.
inline double gap(Rate inc, Rate dec) { return inc.bits() - dec.bits(); }

}  // namespace detail

template <class Increasing>
MaxMinResult maximize_min(const Increasing& increasing, std::span<const Term> decreasing, const Interval& interval,
                          const Tolerances& tol = {}) {
  tol.validate();
  if (decreasing.empty()) throw ArgumentError("maximize_min needs at least one nonincreasing term");

  if (interval.width() == 0.0) {
    const Rho at(interval.lo());
    const Rate v = std::min(static_cast<Rate>(increasing(at)), detail::min_of(decreasing, at));
    return {at, v, v, 0};
  }

  constexpr std::size_t n = kBracketGridPoints;
  std::vector<Rho> grid(n);
  std::vector<Rate> inc(n);
  std::vector<Rate> dec(n);
  std::vector<Rate> prev_term(decreasing.size());
  for (std::size_t k = 0; k < n; ++k) {
    grid[k] = detail::grid_point(interval, k, n);
    inc[k] = increasing(grid[k]);
    if (k > 0 && inc[k].bits() < inc[k - 1].bits() - detail::monotone_slack(inc[k - 1].bits())) {
      throw StructureError("increasing term decreases near rho = " + std::to_string(grid[k].value()));
    }
    Rate d = Rate::neg_inf();
    for (std::size_t t = 0; t < decreasing.size(); ++t) {
      const Rate v = decreasing[t](grid[k]);
      if (k > 0 && v.bits() > prev_term[t].bits() + detail::monotone_slack(prev_term[t].bits())) {
        throw StructureError("decreasing term " + std::to_string(t) + " increases near rho = " +
                             std::to_string(grid[k].value()));
      }
      prev_term[t] = v;
      d = (t == 0) ? v : std::min(d, v);
    }
    dec[k] = d;
  }

  if (detail::gap(inc.front(), dec.front()) >= 0.0) {
    return {grid.front(), dec.front(), dec.front(), 0};
  }
  if (detail::gap(inc.back(), dec.back()) <= 0.0) {
    return {grid.back(), inc.back(), inc.back(), 0};
  }

  std::size_t k = 1;
  while (detail::gap(inc[k], dec[k]) < 0.0) ++k;
  if (detail::gap(inc[k], dec[k]) == 0.0) return {grid[k], inc[k], inc[k], 0};

  // Invariant: h(a) < 0 <= h(b).
  double a = grid[k - 1].value();
  double b = grid[k].value();
  Rate inc_a = inc[k - 1], dec_a = dec[k - 1];
  Rate inc_b = inc[k], dec_b = dec[k];
  int iterations = 0;
  for (;;) {
    const Rate lower = std::max(inc_a, dec_b);
    const Rate upper = std::min(inc_b, dec_a);
    const double m = 0.5 * (a + b);
    const bool converged = (b - a) <= tol.rho && (upper.bits() - lower.bits()) <= tol.value;
    if (converged || m <= a || m >= b) {
      if (inc_a >= dec_b) return {Rho(a), inc_a, upper, iterations};
      return {Rho(b), dec_b, upper, iterations};
    }
    const Rho rm(m);
    const Rate inc_m = increasing(rm);
    const Rate dec_m = detail::min_of(decreasing, rm);
    ++iterations;
    if (detail::gap(inc_m, dec_m) >= 0.0) {
      b = m;
      inc_b = inc_m;
      dec_b = dec_m;
    } else {
      a = m;
      inc_a = inc_m;
      dec_a = dec_m;
    }
  }
}

/// Root of f - g on the interval, assuming exactly one sign change.
template <class F, class G>
Rho find_crossing(const F& f, const G& g, const Interval& interval, const Tolerances& tol = {}) {
  tol.validate();
  auto diff = [&](double r) { return static_cast<Rate>(f(Rho(r))).bits() - static_cast<Rate>(g(Rho(r))).bits(); };

  double a = interval.lo();
  double b = interval.hi();
  double da = diff(a);
  double db = diff(b);
  if (da == 0.0) return Rho(a);
  if (db == 0.0) return Rho(b);
  if ((da < 0.0) == (db < 0.0)) {
    throw NoCrossingError("f - g has the same sign at both ends of [" + std::to_string(a) + ", " +
                          std::to_string(b) + "]");
  }
  for (;;) {
    const double m = 0.5 * (a + b);
    const bool narrow = (b - a) <= tol.rho;
    const double best = std::abs(da) <= std::abs(db) ? a : b;
    const double best_residual = std::min(std::abs(da), std::abs(db));
    if ((narrow && best_residual <= tol.value) || m <= a || m >= b) return Rho(best);
    const double dm = diff(m);
    if (dm == 0.0) return Rho(m);
    if ((dm < 0.0) == (da < 0.0)) {
      a = m;
      da = dm;
    } else {
      b = m;
      db = dm;
    }
  }
}

}  // namespace diamond
