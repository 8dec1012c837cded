#pragma once

// Capacity bounds for the two-relay Gaussian multiple access diamond channel.
//
// All three bounds maximise, over the relay-input correlation rho, the
// minimum of four constraints:
//   B1  = r1 + C((1 - rho^2) p2)
//   B2  = r2 + C((1 - rho^2) p1)
//   B3  = C(p1 + p2 + 2 rho sqrt(p1 p2))
//   B4  = r1 + r2 - (1/2) log2(1 / (1 - rho^2))      or   B4' = r1 + r2
// with C(x) = (1/2) log2(1 + x). B1, B2, B4 are nonincreasing in rho and B3
// is nondecreasing, which is what maximize_min relies on.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "diamond/core.hpp"
#include "diamond/scalar_opt.hpp"

namespace diamond {

enum class Constraint { B1, B2, B3, B4, B4Prime };

enum class Branch { T1Segment, T2Segment, FullRange, LowerRange };

inline std::string_view to_string(Constraint c) {
  switch (c) {
    case Constraint::B1: return "B1";
    case Constraint::B2: return "B2";
    case Constraint::B3: return "B3";
    case Constraint::B4: return "B4";
    case Constraint::B4Prime: return "B4'";
  }
  return "?";
}

inline std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::T1Segment: return "T1-segment";
    case Branch::T2Segment: return "T2-segment";
    case Branch::FullRange: return "full-range";
    case Branch::LowerRange: return "lower-range";
  }
  return "?";
}

struct BoundResult {
  Rate value;
  Rho argmax_rho;
  /// Constraints within 10 * tol.value of the minimum at argmax_rho.
  std::vector<Constraint> binding;
  Branch branch = Branch::FullRange;
  /// Certified enclosure width of the optimum (bits).
  double certified_gap = 0.0;
};

// The individual constraints.

inline Rate link_term_1(const ChannelParams& c, Rho rho) {
  const double q = rho.value();
  return Rate(c.r1()) + gauss_rate((1.0 - q * q) * c.p2());
}

inline Rate link_term_2(const ChannelParams& c, Rho rho) {
  const double q = rho.value();
  return Rate(c.r2()) + gauss_rate((1.0 - q * q) * c.p1());
}

inline Rate mac_term(const ChannelParams& c, Rho rho) {
  return gauss_rate(c.p1() + c.p2() + 2.0 * rho.value() * std::sqrt(c.p1() * c.p2()));
}

inline Rate correlated_source_term(const ChannelParams& c, Rho rho) {
  return subtract_correlation_penalty(Rate(c.r1() + c.r2()), rho);
}

inline Rate source_term(const ChannelParams& c, Rho) { return Rate(c.r1() + c.r2()); }

/// Four-term minimum with the correlation-penalised source term (B4).
inline Rate objective_t1(const ChannelParams& c, Rho rho) {
  return std::min({link_term_1(c, rho), link_term_2(c, rho), mac_term(c, rho), correlated_source_term(c, rho)});
}

/// Four-term minimum with the plain source term (B4').
inline Rate objective_t2(const ChannelParams& c, Rho rho) {
  return std::min({link_term_1(c, rho), link_term_2(c, rho), mac_term(c, rho), source_term(c, rho)});
}

/// Correlation at which sqrt(p1 p2)(1/rho - rho) - 1 vanishes.
inline Rho rho_star(double p1, double p2) {
  detail::require_nonnegative_finite(p1, "p1");
  detail::require_nonnegative_finite(p2, "p2");
  const double x = std::sqrt(p1 * p2);
  if (x == 0.0) throw DegenerateChannelError("rho* is undefined when p1 * p2 = 0");
  // sqrt(1 + 1/(4x^2)) - 1/(2x), rewritten to avoid cancellation for large x.
  return Rho(std::min(1.0, 2.0 * x / (1.0 + std::sqrt(1.0 + 4.0 * x * x))));
}

/// sqrt(p1 p2)(1/rho - rho) - 1. Negative values (rho beyond rho*) are
/// rejected; rounding-level negatives are reported as 0.
inline double noise_variance_n(double p1, double p2, Rho rho) {
  detail::require_nonnegative_finite(p1, "p1");
  detail::require_nonnegative_finite(p2, "p2");
  const double x = std::sqrt(p1 * p2);
  if (x == 0.0) throw DegenerateChannelError("noise variance is undefined when p1 * p2 = 0");
  const double r = rho.value();
  if (r == 0.0) throw DomainError("noise variance is undefined at rho = 0");
  const double n = x * (1.0 / r - r) - 1.0;
  const double slack = 1e-12 * (1.0 + x * (1.0 / r + r));
  if (n < -slack) {
    throw DomainError("noise variance is negative (" + std::to_string(n) + ") at rho = " + std::to_string(r));
  }
  return std::max(n, 0.0);
}

/// Largest correlation the weaker link supports: sqrt(1 - 2^(-2 min(r1, r2))).
inline Rho rho_circ(double r1, double r2) {
  detail::require_nonnegative_finite(r1, "r1");
  detail::require_nonnegative_finite(r2, "r2");
  const double m = std::min(r1, r2);
  return Rho(std::min(1.0, std::sqrt(-std::expm1(-2.0 * m * std::numbers::ln2))));
}

namespace detail {

inline std::vector<Constraint> binding_set(const ChannelParams& c, Rho rho, bool penalised, const Tolerances& tol) {
  const std::array<std::pair<Constraint, Rate>, 4> terms{{
      {Constraint::B1, link_term_1(c, rho)},
      {Constraint::B2, link_term_2(c, rho)},
      {Constraint::B3, mac_term(c, rho)},
      {penalised ? Constraint::B4 : Constraint::B4Prime,
       penalised ? correlated_source_term(c, rho) : source_term(c, rho)},
  }};
  Rate m = terms[0].second;
  for (const auto& [id, v] : terms) m = std::min(m, v);
  std::vector<Constraint> out;
  for (const auto& [id, v] : terms) {
    if (v == m || (m.is_finite() && v.bits() - m.bits() <= 10.0 * tol.value)) out.push_back(id);
  }
  return out;
}

inline BoundResult solve_segment(const ChannelParams& c, const Interval& iv, bool penalised, Branch branch,
                                 const Tolerances& tol) {
  const std::array<Term, 3> dec{
      [&c](Rho r) { return link_term_1(c, r); },
      [&c](Rho r) { return link_term_2(c, r); },
      penalised ? Term([&c](Rho r) { return correlated_source_term(c, r); })
                : Term([&c](Rho r) { return source_term(c, r); }),
  };
  const auto res = maximize_min([&c](Rho r) { return mac_term(c, r); }, dec, iv, tol);
  return {res.value, res.argmax, binding_set(c, res.argmax, penalised, tol), branch,
          res.upper.bits() - res.value.bits()};
}

}  // namespace detail

/// max(T1, T2): T1 maximises the B4 objective over [0, rho*], T2 the B4'
/// objective over [rho*, 1]. With p1 * p2 = 0 the split is undefined and the
/// B4' objective is maximised over all of [0, 1].
inline BoundResult upper_bound(const ChannelParams& c, const Tolerances& tol = {}) {
  if (c.p1() * c.p2() == 0.0) {
    return detail::solve_segment(c, Interval(0.0, 1.0), false, Branch::FullRange, tol);
  }
  const double split = rho_star(c.p1(), c.p2()).value();
  auto t1 = detail::solve_segment(c, Interval(0.0, split), true, Branch::T1Segment, tol);
  auto t2 = detail::solve_segment(c, Interval(split, 1.0), false, Branch::T2Segment, tol);
  return t1.value >= t2.value ? t1 : t2;
}

/// Correlated-coding achievable rate: the B4 objective over [0, rho_circ].
inline BoundResult lower_bound(const ChannelParams& c, const Tolerances& tol = {}) {
  const double top = rho_circ(c.r1(), c.r2()).value();
  return detail::solve_segment(c, Interval(0.0, top), true, Branch::LowerRange, tol);
}

/// Cut-set bound: the B4' objective over [0, 1].
inline BoundResult cut_set_bound(const ChannelParams& c, const Tolerances& tol = {}) {
  return detail::solve_segment(c, Interval(0.0, 1.0), false, Branch::FullRange, tol);
}

}  // namespace diamond
