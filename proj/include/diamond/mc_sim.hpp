#pragma once

// Monte-Carlo simulator for the correlated random-coding scheme.
//
// Each relay gets an independent Gaussian codebook. Codeword pairs whose
// empirical correlation is within delta of the design correlation form the
// message set, indexed lexicographically in (i, j). A trial picks a message
// uniformly, sends y = x1(i) + x2(j) + u over the unit-noise MAC and decodes.
//
// All randomness comes from counter-derived substreams of the master seed:
// one per codebook and one per trial index, so results do not depend on the
// number of worker threads.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "diamond/bounds.hpp"
#include "diamond/core.hpp"
#include "diamond/error.hpp"
#include "diamond/parallel.hpp"

namespace diamond {

enum class Decoder { MinimumDistance, JointTypicality };

inline std::string_view to_string(Decoder d) {
  return d == Decoder::MinimumDistance ? "minimum-distance" : "joint-typicality";
}

/// Cap on M1 * M2, the number of candidate pairs examined.
inline constexpr std::uint64_t kPairBudget = std::uint64_t{1} << 26;

inline constexpr int kMaxRedraws = 1000;

struct SimConfig {
  int n = 24;
  double r1 = 0.0;
  double r2 = 0.0;
  double p1 = 1.0;
  double p2 = 1.0;
  double rho = 0.0;
  double delta = 0.1;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 1;
  Decoder decoder = Decoder::MinimumDistance;
  /// Test hook: multiplies the channel noise. 1 in normal use.
  double noise_scale = 1.0;

  [[nodiscard]] std::uint64_t codebook_size_1() const { return codebook_size(r1); }
  [[nodiscard]] std::uint64_t codebook_size_2() const { return codebook_size(r2); }

  void validate() const {
    if (n <= 0) throw ArgumentError("blocklength n must be positive");
    if (trials == 0) throw ArgumentError("trials must be positive");
    detail::require_nonnegative_finite(r1, "r1");
    detail::require_nonnegative_finite(r2, "r2");
    detail::require_nonnegative_finite(p1, "p1");
    detail::require_nonnegative_finite(p2, "p2");
    detail::require_nonnegative_finite(noise_scale, "noise_scale");
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
    const Rho target(rho);
    const Rho limit = rho_circ(r1, r2);
    if (target.value() > limit.value() + 1e-12) {
      throw AdmissibilityError("rho = " + std::to_string(rho) + " exceeds rho_circ(r1, r2) = " +
                               std::to_string(limit.value()));
    }
    // n * r bounded first so exp2 cannot overflow the integer conversion.
    if (n * r1 > 26.5 || n * r2 > 26.5 || codebook_size_1() * codebook_size_2() > kPairBudget) {
      throw BudgetError("round(2^(n r1)) * round(2^(n r2)) exceeds the pair budget 2^26; reduce n, r1 or r2");
    }
  }

 private:
  [[nodiscard]] std::uint64_t codebook_size(double r) const {
    return static_cast<std::uint64_t>(std::llround(std::exp2(static_cast<double>(n) * r)));
  }
};

/// Row-major dense matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

  [[nodiscard]] std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  [[nodiscard]] std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct Codebooks {
  Matrix book1;
  Matrix book2;
  double p1 = 0.0;
  double p2 = 0.0;
};

struct IndexedPair {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  /// Raw inner product <x1(i), x2(j)>.
  double dot = 0.0;
};

struct PairIndex {
  std::vector<IndexedPair> pairs;
  int n = 0;
  /// Normalisation sqrt(p1 p2) of the empirical correlation.
  double scale = 0.0;

  [[nodiscard]] std::size_t size() const noexcept { return pairs.size(); }
  [[nodiscard]] double effective_rate() const { return std::log2(static_cast<double>(pairs.size())) / n; }
  [[nodiscard]] double correlation(const IndexedPair& p) const { return scale > 0.0 ? p.dot / (n * scale) : 0.0; }

  [[nodiscard]] double mean_correlation() const {
    double sum = 0.0;
    for (const auto& p : pairs) sum += correlation(p);
    return pairs.empty() ? 0.0 : sum / static_cast<double>(pairs.size());
  }
};

struct SimResult {
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  double error_rate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double effective_rate = 0.0;
  double mean_pair_correlation = 0.0;
  std::uint64_t pair_count = 0;

  friend bool operator==(const SimResult&, const SimResult&) = default;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

enum Stream : std::uint64_t { kBook1Stream = 1, kBook2Stream = 2, kTrialStream = 3 };

inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(stream * 0x100000001b3ULL + index)));
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

inline Matrix draw_codebook(std::uint64_t rows, int n, double power, double delta, std::uint64_t seed,
                            std::uint64_t stream) {
  Matrix book(rows, static_cast<std::size_t>(n));
  auto rng = substream(seed, stream, 0);
  std::normal_distribution<double> gauss(0.0, std::sqrt((1.0 - delta) * power));
  for (std::size_t i = 0; i < rows; ++i) {
    auto x = book.row(i);
    int draws = 0;
    for (;;) {
      for (auto& v : x) v = gauss(rng);
      if (dot(x, x) <= power * n) break;
      if (++draws > kMaxRedraws) {
        throw PowerInfeasibleError("more than 1000 consecutive redraws for codeword " + std::to_string(i) +
                                   "; delta is too small for n = " + std::to_string(n));
      }
    }
  }
  return book;
}

}  // namespace detail

/// Independent i.i.d. N(0, (1 - delta) p_k) codebooks; rows breaking the
/// average power constraint are redrawn.
inline Codebooks generate_codebooks(const SimConfig& cfg) {
  cfg.validate();
  return {detail::draw_codebook(cfg.codebook_size_1(), cfg.n, cfg.p1, cfg.delta, cfg.seed, detail::kBook1Stream),
          detail::draw_codebook(cfg.codebook_size_2(), cfg.n, cfg.p2, cfg.delta, cfg.seed, detail::kBook2Stream),
          cfg.p1, cfg.p2};
}

/// All (i, j) with |<x1(i), x2(j)> / (n sqrt(p1 p2)) - rho| <= delta, in
/// lexicographic order. With p1 p2 = 0 the correlation is taken as 0.
inline PairIndex enumerate_typical_pairs(const Codebooks& books, Rho rho, double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("delta must be positive");
  const int n = static_cast<int>(books.book1.cols());
  PairIndex index{.pairs = {}, .n = n, .scale = std::sqrt(books.p1 * books.p2)};
  for (std::size_t i = 0; i < books.book1.rows(); ++i) {
    const auto x1 = books.book1.row(i);
    for (std::size_t j = 0; j < books.book2.rows(); ++j) {
      const IndexedPair cand{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                             detail::dot(x1, books.book2.row(j))};
      if (std::abs(index.correlation(cand) - rho.value()) <= delta) index.pairs.push_back(cand);
    }
  }
  if (index.pairs.empty()) {
    throw EmptyPairSetError("no codeword pair is within delta = " + std::to_string(delta) +
                            " of the target correlation; increase delta or n");
  }
  return index;
}

/// r1 + r2 - (1/2) log2(1 / (1 - rho^2)), the asymptotic exponent of the
/// typical-pair count.
inline Rate predicted_pair_exponent(double r1, double r2, Rho rho) {
  const Rho limit = rho_circ(r1, r2);
  if (rho.value() > limit.value() + 1e-12) {
    throw AdmissibilityError("rho exceeds rho_circ(r1, r2) = " + std::to_string(limit.value()));
  }
  return subtract_correlation_penalty(Rate(r1 + r2), rho);
}

/// Wilson score interval at 95% confidence.
inline std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t trials) {
  if (trials == 0) throw ArgumentError("Wilson interval needs at least one trial");
  constexpr double z = 1.959963984540054;
  const double t = static_cast<double>(trials);
  const double phat = static_cast<double>(errors) / t;
  const double denom = 1.0 + z * z / t;
  const double center = (phat + z * z / (2.0 * t)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / t + z * z / (4.0 * t * t)) / denom;
  return {std::max(0.0, std::min(phat, center - half)), std::min(1.0, std::max(phat, center + half))};
}

namespace detail {

struct TrialContext {
  const SimConfig& cfg;
  const Codebooks& books;
  const PairIndex& index;
  std::vector<double> norm1;  // squared row norms
  std::vector<double> norm2;
};

// Returns true when the trial is decoded incorrectly.
inline bool run_one_trial(const TrialContext& ctx, std::uint64_t trial, std::vector<double>& y,
                          std::vector<double>& iy1, std::vector<double>& iy2) {
  const auto& cfg = ctx.cfg;
  const auto& pairs = ctx.index.pairs;
  const int n = cfg.n;
  auto rng = substream(cfg.seed, kTrialStream, trial);
  std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
  std::normal_distribution<double> noise(0.0, 1.0);

  const std::size_t w = pick(rng);
  const auto& sent = pairs[w];
  if (ctx.norm1[sent.i] > cfg.p1 * n * (1.0 + 1e-12) || ctx.norm2[sent.j] > cfg.p2 * n * (1.0 + 1e-12)) {
    throw SimulationError("transmitted codeword violates the average power constraint");
  }
  const auto x1 = ctx.books.book1.row(sent.i);
  const auto x2 = ctx.books.book2.row(sent.j);
  for (int k = 0; k < n; ++k) y[k] = x1[k] + x2[k] + cfg.noise_scale * noise(rng);

  for (std::size_t i = 0; i < iy1.size(); ++i) iy1[i] = dot(y, ctx.books.book1.row(i));
  for (std::size_t j = 0; j < iy2.size(); ++j) iy2[j] = dot(y, ctx.books.book2.row(j));

  if (cfg.decoder == Decoder::MinimumDistance) {
    // ||y - x1 - x2||^2 - ||y||^2; ties go to the lowest message index.
    std::size_t best = 0;
    double best_metric = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto& p = pairs[k];
      const double metric = ctx.norm1[p.i] + ctx.norm2[p.j] + 2.0 * p.dot - 2.0 * (iy1[p.i] + iy2[p.j]);
      if (metric < best_metric) {
        best_metric = metric;
        best = k;
      }
    }
    return best != w;
  }

  // Joint typicality: the residual u = y - x1 - x2 must look like the channel
  // noise, i.e. power within delta of its variance and normalised correlation
  // with each relay codeword within delta of 0.
  const double yy = dot(y, y);
  const double noise_power = cfg.noise_scale * cfg.noise_scale;
  const double s1 = cfg.p1 > 0.0 ? 1.0 / (n * std::sqrt(cfg.p1)) : 0.0;
  const double s2 = cfg.p2 > 0.0 ? 1.0 / (n * std::sqrt(cfg.p2)) : 0.0;
  std::size_t matches = 0;
  bool sent_matches = false;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& p = pairs[k];
    const double residual_power =
        (yy - 2.0 * (iy1[p.i] + iy2[p.j]) + ctx.norm1[p.i] + ctx.norm2[p.j] + 2.0 * p.dot) / n;
    if (std::abs(residual_power - noise_power) > cfg.delta) continue;
    const double c1 = (iy1[p.i] - ctx.norm1[p.i] - p.dot) * s1;
    const double c2 = (iy2[p.j] - ctx.norm2[p.j] - p.dot) * s2;
    if (std::abs(c1) > cfg.delta || std::abs(c2) > cfg.delta) continue;
    ++matches;
    if (k == w) sent_matches = true;
    if (matches > 1) return true;
  }
  return !(matches == 1 && sent_matches);
}

}  // namespace detail

/// Runs cfg.trials independent transmissions. `threads` = 0 uses every
/// hardware thread; the result is identical for any value.
inline SimResult run_trials(const SimConfig& cfg, unsigned threads = 0) {
  cfg.validate();
  const Codebooks books = generate_codebooks(cfg);
  const PairIndex index = enumerate_typical_pairs(books, Rho(cfg.rho), cfg.delta);

  detail::TrialContext ctx{cfg, books, index, {}, {}};
  ctx.norm1.resize(books.book1.rows());
  ctx.norm2.resize(books.book2.rows());
  for (std::size_t i = 0; i < ctx.norm1.size(); ++i) ctx.norm1[i] = detail::dot(books.book1.row(i), books.book1.row(i));
  for (std::size_t j = 0; j < ctx.norm2.size(); ++j) ctx.norm2[j] = detail::dot(books.book2.row(j), books.book2.row(j));

  const unsigned workers = resolve_threads(threads);
  std::vector<std::uint64_t> chunk_errors(workers, 0);
  parallel_chunks(cfg.trials, workers, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    std::vector<double> y(static_cast<std::size_t>(cfg.n));
    std::vector<double> iy1(books.book1.rows());
    std::vector<double> iy2(books.book2.rows());
    std::uint64_t errs = 0;
    for (std::size_t t = begin; t < end; ++t) errs += detail::run_one_trial(ctx, t, y, iy1, iy2) ? 1 : 0;
    chunk_errors[chunk] = errs;
  });

  SimResult res;
  res.trials = cfg.trials;
  for (auto e : chunk_errors) res.errors += e;
  res.error_rate = static_cast<double>(res.errors) / static_cast<double>(res.trials);
  std::tie(res.ci_low, res.ci_high) = wilson_interval(res.errors, res.trials);
  res.effective_rate = index.effective_rate();
  res.mean_pair_correlation = index.mean_correlation();
  res.pair_count = index.size();
  return res;
}

}  // namespace diamond
