#pragma once

// Domain types shared by every part of the library. Powers are SNRs relative
// to the unit-variance receiver noise; rates are in bits per channel use.

#include <cmath>
#include <compare>
#include <limits>
#include <numbers>
#include <string>

#include "diamond/error.hpp"

namespace diamond {

namespace detail {

inline void require_nonnegative_finite(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0) {
    throw DomainError(std::string(what) + " must be finite and >= 0, got " + std::to_string(v));
  }
}

}  // namespace detail

/// Rate in bits per channel use. May be -infinity (a degenerate objective
/// term) but never +infinity or NaN.
class Rate {
 public:
  constexpr Rate() noexcept = default;

  explicit Rate(double bits) : bits_(bits) {
    if (std::isnan(bits) || bits == std::numeric_limits<double>::infinity()) {
      throw DomainError("rate must be finite or -inf, got " + std::to_string(bits));
    }
  }

  static constexpr Rate neg_inf() noexcept {
    Rate r;
    r.bits_ = -std::numeric_limits<double>::infinity();
    return r;
  }

  [[nodiscard]] constexpr double bits() const noexcept { return bits_; }
  [[nodiscard]] bool is_finite() const noexcept { return std::isfinite(bits_); }

  friend Rate operator+(Rate a, Rate b) noexcept {
    Rate r;
    r.bits_ = a.bits_ + b.bits_;
    return r;
  }
  // Throws when b is -inf and the difference would be +inf.
  friend Rate operator-(Rate a, Rate b) { return Rate(a.bits_ - b.bits_); }

  friend constexpr bool operator==(Rate a, Rate b) noexcept { return a.bits_ == b.bits_; }
  friend constexpr std::weak_ordering operator<=>(Rate a, Rate b) noexcept {
    if (a.bits_ < b.bits_) return std::weak_ordering::less;
    if (a.bits_ > b.bits_) return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
  }

 private:
  double bits_ = 0.0;
};

/// Correlation coefficient between the two relay inputs, restricted to [0, 1].
class Rho {
 public:
  constexpr Rho() noexcept = default;

  explicit Rho(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw DomainError("correlation must lie in [0, 1], got " + std::to_string(value));
    }
  }

  static constexpr Rho zero() noexcept { return Rho{}; }
  static constexpr Rho one() noexcept {
    Rho r;
    r.value_ = 1.0;
    return r;
  }

  [[nodiscard]] constexpr double value() const noexcept { return value_; }

  friend constexpr bool operator==(Rho a, Rho b) noexcept = default;
  friend constexpr auto operator<=>(Rho a, Rho b) noexcept { return a.value_ <=> b.value_; }

 private:
  double value_ = 0.0;
};

/// Asymmetric channel instance: link rates r1, r2 into the relays and relay
/// powers p1, p2 on the Gaussian MAC.
class ChannelParams {
 public:
  ChannelParams(double r1, double r2, double p1, double p2) : r1_(r1), r2_(r2), p1_(p1), p2_(p2) {
    detail::require_nonnegative_finite(r1, "r1");
    detail::require_nonnegative_finite(r2, "r2");
    detail::require_nonnegative_finite(p1, "p1");
    detail::require_nonnegative_finite(p2, "p2");
  }

  [[nodiscard]] double r1() const noexcept { return r1_; }
  [[nodiscard]] double r2() const noexcept { return r2_; }
  [[nodiscard]] double p1() const noexcept { return p1_; }
  [[nodiscard]] double p2() const noexcept { return p2_; }

  friend bool operator==(const ChannelParams&, const ChannelParams&) = default;

 private:
  double r1_;
  double r2_;
  double p1_;
  double p2_;
};

/// Symmetric instance: both links carry r0, both relays transmit at power p.
class SymmetricParams {
 public:
  SymmetricParams(double r0, double p) : r0_(r0), p_(p) {
    detail::require_nonnegative_finite(r0, "r0");
    detail::require_nonnegative_finite(p, "p");
  }

  [[nodiscard]] double r0() const noexcept { return r0_; }
  [[nodiscard]] double p() const noexcept { return p_; }

  [[nodiscard]] ChannelParams to_channel() const { return ChannelParams(r0_, r0_, p_, p_); }

  friend bool operator==(const SymmetricParams&, const SymmetricParams&) = default;

 private:
  double r0_;
  double p_;
};

/// (1/2) log2(1 + snr).
inline Rate gauss_rate(double snr) {
  detail::require_nonnegative_finite(snr, "snr");
  return Rate(0.5 * std::log1p(snr) / std::numbers::ln2);
}

/// (1/2) log2(1 / (1 - rho^2)). Diverges at rho = 1, which is reported as a
/// DomainError; use subtract_correlation_penalty for terms that must take
/// the value -inf there.
inline Rate correlation_penalty(Rho rho) {
  const double r = rho.value();
  if (r == 1.0) {
    throw DomainError("correlation penalty diverges at rho = 1");
  }
  // -0.0 at rho = 0; normalise so the result compares and prints as 0.
  return Rate(0.0 - 0.5 * std::log1p(-r * r) / std::numbers::ln2);
}

/// total - correlation_penalty(rho), with the value -inf at rho = 1.
inline Rate subtract_correlation_penalty(Rate total, Rho rho) {
  if (rho.value() == 1.0) return Rate::neg_inf();
  return total - correlation_penalty(rho);
}

}  // namespace diamond
