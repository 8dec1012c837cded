#pragma once

// Report layer behind the command-line tool: parameter sweeps, the CSV
// writer, JSON/text renderings and the reference-example check.

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "diamond/bounds.hpp"
#include "diamond/mc_sim.hpp"
#include "diamond/parallel.hpp"
#include "diamond/symmetric.hpp"

namespace diamond {

using nlohmann::json;

inline std::string fixed(double v, int digits = 6) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline json rate_json(Rate r) { return r.is_finite() ? json(r.bits()) : json(nullptr); }

template <class T>
json optional_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_same_v<T, Rate>) {
    return rate_json(*v);
  } else if constexpr (std::is_same_v<T, Rho>) {
    return v->value();
  } else {
    return *v;
  }
}

// ---------------------------------------------------------------- bounds ---

inline json to_json(const BoundResult& b) {
  json binding = json::array();
  for (auto c : b.binding) binding.push_back(std::string(to_string(c)));
  return {{"value", rate_json(b.value)},
          {"argmax_rho", b.argmax_rho.value()},
          {"binding", binding},
          {"branch", std::string(to_string(b.branch))},
          {"certified_gap", b.certified_gap}};
}

struct BoundsReport {
  ChannelParams params;
  BoundResult lower;
  BoundResult upper;
  BoundResult cutset;
};

inline BoundsReport compute_bounds(const ChannelParams& c, const Tolerances& tol) {
  return {c, lower_bound(c, tol), upper_bound(c, tol), cut_set_bound(c, tol)};
}

inline json to_json(const BoundsReport& r) {
  return {{"params", {{"r1", r.params.r1()}, {"r2", r.params.r2()}, {"p1", r.params.p1()}, {"p2", r.params.p2()}}},
          {"lower", to_json(r.lower)},
          {"upper", to_json(r.upper)},
          {"cutset", to_json(r.cutset)}};
}

inline void write_text(std::ostream& os, const BoundsReport& r) {
  auto line = [&os](const char* name, const BoundResult& b) {
    os << name << " = " << fixed(b.value.bits()) << "  rho = " << fixed(b.argmax_rho.value())
       << "  branch = " << to_string(b.branch) << "  binding = {";
    for (std::size_t k = 0; k < b.binding.size(); ++k) os << (k ? "," : "") << to_string(b.binding[k]);
    os << "}\n";
  };
  os << "r1 = " << fixed(r.params.r1()) << "  r2 = " << fixed(r.params.r2()) << "  p1 = " << fixed(r.params.p1())
     << "  p2 = " << fixed(r.params.p2()) << '\n';
  line("lower ", r.lower);
  line("upper ", r.upper);
  line("cutset", r.cutset);
}

// ------------------------------------------------------------- capacity ---

inline json to_json(const ConditionReport& r) {
  return {{"r0", r.params.r0()},
          {"p", r.params.p()},
          {"regime", std::string(to_string(r.regime))},
          {"rho_circ", r.rho_circ.value()},
          {"rho_star", optional_json(r.rho_star)},
          {"rho_bar1", optional_json(r.rho_bar1)},
          {"rho_bar2", optional_json(r.rho_bar2)},
          {"f1_at_rho_star", optional_json(r.f1_at_rho_star)},
          {"f3_at_rho_bar2", optional_json(r.f3_at_rho_bar2)},
          {"cond1", optional_json(r.cond1)},
          {"cond2", optional_json(r.cond2)},
          {"cond3", optional_json(r.cond3)},
          {"f1_f3_crossing", optional_json(r.f1_f3_crossing)},
          {"capacity", optional_json(r.capacity)},
          {"lower", rate_json(r.bracket.lower)},
          {"upper", rate_json(r.bracket.upper)},
          {"bounds_agree", r.bounds_agree}};
}

inline void write_text(std::ostream& os, const ConditionReport& r) {
  auto opt = [](const auto& v) -> std::string {
    if (!v) return "n/a";
    if constexpr (std::is_same_v<std::decay_t<decltype(*v)>, bool>) {
      return *v ? "true" : "false";
    } else if constexpr (std::is_same_v<std::decay_t<decltype(*v)>, Rho>) {
      return fixed(v->value());
    } else {
      return fixed(v->bits());
    }
  };
  os << "r0 = " << fixed(r.params.r0()) << "  p = " << fixed(r.params.p()) << '\n'
     << "regime         = " << to_string(r.regime) << '\n'
     << "rho_circ       = " << fixed(r.rho_circ.value()) << '\n'
     << "rho_star       = " << opt(r.rho_star) << '\n'
     << "rho_bar1       = " << opt(r.rho_bar1) << '\n'
     << "rho_bar2       = " << opt(r.rho_bar2) << '\n'
     << "f1(rho_star)   = " << opt(r.f1_at_rho_star) << '\n'
     << "f3(rho_bar2)   = " << opt(r.f3_at_rho_bar2) << '\n'
     << "cond1 (rho_circ >= rho_bar2)      = " << opt(r.cond1) << '\n'
     << "cond2 (rho_star >= rho_bar1)      = " << opt(r.cond2) << '\n'
     << "cond3 (f1(rho_star) <= f3(rho_bar2)) = " << opt(r.cond3) << '\n'
     << "lower          = " << fixed(r.bracket.lower.bits()) << '\n'
     << "upper          = " << fixed(r.bracket.upper.bits()) << '\n'
     << "capacity       = " << opt(r.capacity) << '\n';
}

// ---------------------------------------------------------------- sweeps ---

struct SweepSpec {
  double p = 3.0;
  double r0_min = 0.0;
  double r0_max = 1.0;
  int steps = 101;
  Tolerances tol{};

  void validate() const {
    detail::require_nonnegative_finite(p, "p");
    detail::require_nonnegative_finite(r0_min, "r0_min");
    detail::require_nonnegative_finite(r0_max, "r0_max");
    if (!(r0_min < r0_max)) throw ArgumentError("sweep needs r0_min < r0_max");
    if (steps < 2) throw ArgumentError("sweep needs at least 2 steps");
    tol.validate();
  }
};

/// The Nontrivial interval [(1/4) log2(1 + 2p), (1/2) log2(1 + 4p)] widened
/// by 10% of its width on each side (clamped at 0).
inline SweepSpec default_sweep(double p, int steps = 101) {
  const double lo = 0.5 * gauss_rate(2.0 * p).bits();
  const double hi = gauss_rate(4.0 * p).bits();
  const double pad = 0.1 * (hi - lo);
  SweepSpec s;
  s.p = p;
  s.r0_min = std::max(0.0, lo - pad);
  s.r0_max = hi + pad;
  s.steps = steps;
  return s;
}

struct SweepRow {
  double r0 = 0.0;
  double p = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double cutset = 0.0;
  bool capacity_known = false;
  std::optional<double> capacity;
  double rho_lower = 0.0;
  double rho_upper = 0.0;
};

inline SweepRow sweep_row(double r0, double p, const Tolerances& tol) {
  const SymmetricParams s(r0, p);
  const ChannelParams c = s.to_channel();
  const auto lo = lower_bound(c, tol);
  const auto up = upper_bound(c, tol);
  const auto cs = cut_set_bound(c, tol);
  const auto rep = capacity_check(s, tol);
  SweepRow row{r0, p, lo.value.bits(), up.value.bits(), cs.value.bits(), rep.capacity.has_value(), std::nullopt,
               lo.argmax_rho.value(), up.argmax_rho.value()};
  if (rep.capacity) row.capacity = rep.capacity->bits();
  return row;
}

/// Rows with r0 linearly spaced over [r0_min, r0_max], endpoints included.
/// Rows are computed in parallel and returned in index order.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads = 0) {
  spec.validate();
  const auto steps = static_cast<std::size_t>(spec.steps);
  std::vector<SweepRow> rows(steps);
  parallel_chunks(steps, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      const double r0 = (k + 1 == steps) ? spec.r0_max
                                         : spec.r0_min + (spec.r0_max - spec.r0_min) * static_cast<double>(k) /
                                                             static_cast<double>(steps - 1);
      rows[k] = sweep_row(r0, spec.p, spec.tol);
    }
  });
  return rows;
}

inline constexpr const char* kSweepHeader = "r0,p,lower,upper,cutset,capacity_known,capacity,rho_lower,rho_upper";

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << kSweepHeader << '\n';
  for (const auto& r : rows) {
    os << fixed(r.r0) << ',' << fixed(r.p) << ',' << fixed(r.lower) << ',' << fixed(r.upper) << ','
       << fixed(r.cutset) << ',' << (r.capacity_known ? "true" : "false") << ','
       << (r.capacity ? fixed(*r.capacity) : std::string()) << ',' << fixed(r.rho_lower) << ','
       << fixed(r.rho_upper) << '\n';
  }
}

inline json to_json(const SweepRow& r) {
  return {{"r0", r.r0},         {"p", r.p},
          {"lower", r.lower},   {"upper", r.upper},
          {"cutset", r.cutset}, {"capacity_known", r.capacity_known},
          {"capacity", r.capacity ? json(*r.capacity) : json(nullptr)},
          {"rho_lower", r.rho_lower}, {"rho_upper", r.rho_upper}};
}

// ------------------------------------------------------------ simulation ---

inline json to_json(const SimConfig& c) {
  return {{"n", c.n},         {"r1", c.r1},         {"r2", c.r2},
          {"p1", c.p1},       {"p2", c.p2},         {"rho", c.rho},
          {"delta", c.delta}, {"trials", c.trials}, {"seed", c.seed},
          {"decoder", std::string(to_string(c.decoder))}};
}

inline json to_json(const SimResult& r) {
  return {{"trials", r.trials},
          {"errors", r.errors},
          {"error_rate", r.error_rate},
          {"wilson_95_ci", {r.ci_low, r.ci_high}},
          {"effective_rate", r.effective_rate},
          {"mean_pair_correlation", r.mean_pair_correlation},
          {"pair_count", r.pair_count}};
}

inline void write_text(std::ostream& os, const SimConfig& c, const SimResult& r, Rate predicted) {
  os << "n = " << c.n << "  r1 = " << fixed(c.r1) << "  r2 = " << fixed(c.r2) << "  p1 = " << fixed(c.p1)
     << "  p2 = " << fixed(c.p2) << "  rho = " << fixed(c.rho) << "  delta = " << fixed(c.delta) << '\n'
     << "decoder = " << to_string(c.decoder) << "  seed = " << c.seed << '\n'
     << "pairs                 = " << r.pair_count << '\n'
     << "effective_rate        = " << fixed(r.effective_rate) << '\n'
     << "predicted_rate        = " << fixed(predicted.bits()) << '\n'
     << "mean_pair_correlation = " << fixed(r.mean_pair_correlation) << '\n'
     << "errors / trials       = " << r.errors << " / " << r.trials << '\n'
     << "error_rate            = " << fixed(r.error_rate) << "  (95% Wilson CI " << fixed(r.ci_low) << ", "
     << fixed(r.ci_high) << ")\n";
}

// --------------------------------------------------------------- example ---

struct ReferenceCheck {
  std::string name;
  double computed = 0.0;
  double reference = 0.0;
  [[nodiscard]] double delta() const { return std::abs(computed - reference); }
};

inline constexpr double kExampleR0 = 1.2;
inline constexpr double kExampleP = 3.0;
inline constexpr double kExampleMaxDelta = 1e-3;

/// The symmetric worked example r0 = 1.2, p = 3 against its published
/// four-decimal values.
inline std::vector<ReferenceCheck> example_checks(const Tolerances& tol) {
  const SymmetricParams s(kExampleR0, kExampleP);
  const auto rep = capacity_check(s, tol);
  const double capacity = rep.capacity ? rep.capacity->bits() : std::nan("");
  return {
      {"rho_circ", rep.rho_circ.value(), 0.9003},
      {"rho_star", rep.rho_star->value(), 0.8471},
      {"rho_bar1", rep.rho_bar1->value(), 0.7734},
      {"rho_bar2", rep.rho_bar2->value(), 0.7643},
      {"f1(rho_star)", rep.f1_at_rho_star->bits(), 1.6426},
      {"f3(rho_bar2)", rep.f3_at_rho_bar2->bits(), 1.7671},
      {"capacity", capacity, 1.7671},
  };
}

inline bool example_passes(const std::vector<ReferenceCheck>& checks) {
  for (const auto& c : checks) {
    if (!(c.delta() <= kExampleMaxDelta)) return false;
  }
  return true;
}

}  // namespace diamond
