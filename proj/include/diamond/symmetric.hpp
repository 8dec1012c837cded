#pragma once

// Symmetric channel analysis (r1 = r2 = r0, p1 = p2 = p).
//
//   f1(rho) = r0 + C((1 - rho^2) p)
//   f2(rho) = C(2 (1 + rho) p)
//   f3(rho) = 2 r0 - (1/2) log2(1 / (1 - rho^2))
//
// rho_bar1 solves f1 = f2 and rho_bar2 solves f3 = f2. The bounds meet iff
// rho_circ >= rho_bar2, rho* >= rho_bar1 and f1(rho*) <= f3(rho_bar2); the
// capacity is then f3(rho_bar2).

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "diamond/bounds.hpp"
#include "diamond/core.hpp"
#include "diamond/scalar_opt.hpp"

namespace diamond {

enum class Regime { SourceLimited, MacLimited, Nontrivial };

inline std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::SourceLimited: return "SourceLimited";
    case Regime::MacLimited: return "MacLimited";
    case Regime::Nontrivial: return "Nontrivial";
  }
  return "?";
}

inline Rate f1(const SymmetricParams& s, Rho rho) {
  const double q = rho.value();
  return Rate(s.r0()) + gauss_rate((1.0 - q * q) * s.p());
}

inline Rate f2(const SymmetricParams& s, Rho rho) { return gauss_rate(2.0 * (1.0 + rho.value()) * s.p()); }

inline Rate f3(const SymmetricParams& s, Rho rho) { return subtract_correlation_penalty(Rate(2.0 * s.r0()), rho); }

/// SourceLimited wins ties with MacLimited.
inline Regime classify(const SymmetricParams& s) {
  if (gauss_rate(2.0 * s.p()).bits() >= 2.0 * s.r0()) return Regime::SourceLimited;
  if (s.r0() >= gauss_rate(4.0 * s.p()).bits()) return Regime::MacLimited;
  return Regime::Nontrivial;
}

/// Capacity in the two bottleneck regimes; nullopt when Nontrivial.
inline std::optional<Rate> bottleneck_capacity(const SymmetricParams& s) {
  switch (classify(s)) {
    case Regime::SourceLimited: return Rate(2.0 * s.r0());
    case Regime::MacLimited: return gauss_rate(4.0 * s.p());
    case Regime::Nontrivial: return std::nullopt;
  }
  return std::nullopt;
}

namespace detail {

// Positive root of a x^2 + b x + c with a > 0, b >= 0, c < 0, in the
// cancellation-free form 2(-c) / (b + sqrt(b^2 - 4ac)).
inline double positive_quadratic_root(double a, double b, double c) {
  return -2.0 * c / (b + std::sqrt(b * b - 4.0 * a * c));
}

template <class F, class G>
Rho refine_root(double root, const F& f, const G& g, const Tolerances& tol) {
  const Rho r(std::clamp(root, 0.0, 1.0));
  const double residual = std::abs(f(r).bits() - g(r).bits());
  if (residual <= tol.value) return r;
  return find_crossing(f, g, Interval(0.0, std::nextafter(1.0, 0.0)), tol);
}

inline void require_nontrivial(const SymmetricParams& s, const char* what) {
  if (classify(s) != Regime::Nontrivial) {
    throw RegimeError(std::string(what) + " exists only in the Nontrivial regime");
  }
}

}  // namespace detail

/// Positive root of f1 = f2.
inline Rho rho_bar1(const SymmetricParams& s, const Tolerances& tol = {}) {
  detail::require_nontrivial(s, "rho_bar1");
  const double q = std::exp2(2.0 * s.r0());
  const double p = s.p();
  const double root = detail::positive_quadratic_root(q * p, 2.0 * p, 1.0 + 2.0 * p - q * (1.0 + p));
  return detail::refine_root(
      root, [&s](Rho r) { return f1(s, r); }, [&s](Rho r) { return f2(s, r); }, tol);
}

/// Positive root of f3 = f2.
inline Rho rho_bar2(const SymmetricParams& s, const Tolerances& tol = {}) {
  detail::require_nontrivial(s, "rho_bar2");
  const double q = std::exp2(4.0 * s.r0());
  const double p = s.p();
  const double root = detail::positive_quadratic_root(q, 2.0 * p, 1.0 + 2.0 * p - q);
  return detail::refine_root(
      root, [&s](Rho r) { return f3(s, r); }, [&s](Rho r) { return f2(s, r); }, tol);
}

/// Power at which rho_bar1 = rho_bar2 = rho* for link rate r0.
inline double matched_power(double r0) {
  detail::require_nonnegative_finite(r0, "r0");
  const double q = std::exp2(2.0 * r0);
  const double qm1 = std::expm1(2.0 * r0 * std::numbers::ln2);
  return q * qm1 / (q + qm1);
}

/// Abscissa sqrt(1 - 1/(2^(2 r0) - p)) beyond which f1 >= f3; nullopt when
/// 2^(2 r0) - p <= 1 (f1 >= f3 everywhere).
inline std::optional<Rho> f1_f3_crossing(const SymmetricParams& s) {
  const double k = std::exp2(2.0 * s.r0()) - s.p();
  if (k <= 1.0) return std::nullopt;
  return Rho(std::sqrt(1.0 - 1.0 / k));
}

/// 2 (f1 - r0) - (f2 + f3 - 2 r0). Nonnegative; +inf at rho = 1, which is
/// why this returns a plain double rather than a Rate.
inline double mutual_inequality_gap(const SymmetricParams& s, Rho rho) {
  const double two_r0 = 2.0 * s.r0();
  return 2.0 * (f1(s, rho).bits() - s.r0()) - (f2(s, rho).bits() + f3(s, rho).bits() - two_r0);
}

struct BoundBracket {
  Rate lower;
  Rate upper;
};

struct ConditionReport {
  explicit ConditionReport(const SymmetricParams& s) : params(s) {}

  SymmetricParams params;
  Regime regime = Regime::Nontrivial;
  std::optional<Rho> rho_star;  // absent when p = 0
  Rho rho_circ;
  std::optional<Rho> rho_bar1;  // present only in the Nontrivial regime
  std::optional<Rho> rho_bar2;
  std::optional<Rate> f1_at_rho_star;
  std::optional<Rate> f3_at_rho_bar2;
  // Meeting conditions; nullopt when not applicable (bottleneck regimes).
  std::optional<bool> cond1;
  std::optional<bool> cond2;
  std::optional<bool> cond3;
  std::optional<Rho> f1_f3_crossing;
  std::optional<Rate> capacity;
  BoundBracket bracket;
  /// |upper - lower| <= 10 * tol.value on the bounds module's results.
  bool bounds_agree = false;
};

inline ConditionReport capacity_check(const SymmetricParams& s, const Tolerances& tol = {}) {
  tol.validate();
  const ChannelParams c = s.to_channel();
  ConditionReport rep(s);
  rep.regime = classify(s);
  rep.rho_circ = rho_circ(s.r0(), s.r0());
  if (s.p() > 0.0) rep.rho_star = rho_star(s.p(), s.p());
  rep.f1_f3_crossing = f1_f3_crossing(s);

  const auto lo = lower_bound(c, tol);
  const auto up = upper_bound(c, tol);
  rep.bracket = {lo.value, up.value};
  rep.bounds_agree = std::abs(up.value.bits() - lo.value.bits()) <= 10.0 * tol.value;

  if (rep.regime != Regime::Nontrivial) {
    rep.capacity = bottleneck_capacity(s);
    return rep;
  }

  // Nontrivial implies p > 0, so rho_star is set.
  rep.rho_bar1 = rho_bar1(s, tol);
  rep.rho_bar2 = rho_bar2(s, tol);
  rep.f1_at_rho_star = f1(s, *rep.rho_star);
  rep.f3_at_rho_bar2 = f3(s, *rep.rho_bar2);
  // At matched power the conditions hold with equality, so each comparison
  // allows the corresponding tolerance.
  rep.cond1 = rep.rho_circ.value() >= rep.rho_bar2->value() - tol.rho;
  rep.cond2 = rep.rho_star->value() >= rep.rho_bar1->value() - tol.rho;
  rep.cond3 = rep.f1_at_rho_star->bits() <= rep.f3_at_rho_bar2->bits() + tol.value;
  if (*rep.cond1 && *rep.cond2 && *rep.cond3) rep.capacity = rep.f3_at_rho_bar2;
  return rep;
}

}  // namespace diamond
