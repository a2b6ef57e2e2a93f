#pragma once

#include <cstddef>
#include <future>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lorentz/common.hpp"
#include "lorentz/grid.hpp"

namespace lorentz {

/// Grid staircase: column i covers [i*hx, (i+1)*hx) x [0, heights[i]*hy).
/// Weakly decreasing heights make the indicator decreasing in each variable.
class Staircase {
 public:
  Staircase(double hx, double hy, std::vector<long> heights)
      : hx_(hx), hy_(hy), heights_(std::move(heights)) {
    if (!(hx_ > 0.0) || !(hy_ > 0.0)) throw std::invalid_argument("Staircase: cell sizes must be positive");
    if (heights_.empty()) throw std::invalid_argument("Staircase: needs at least one column");
    for (std::size_t i = 0; i < heights_.size(); ++i) {
      if (heights_[i] < 0) throw std::invalid_argument("Staircase: negative height");
      if (i > 0 && heights_[i] > heights_[i - 1])
        throw std::invalid_argument("Staircase: heights must be weakly decreasing");
    }
  }

  double hx() const { return hx_; }
  double hy() const { return hy_; }
  std::size_t columns() const { return heights_.size(); }
  const std::vector<long>& heights() const { return heights_; }
  long height(std::size_t i) const { return heights_[i]; }
  long max_height() const { return heights_.front(); }

  bool empty() const { return heights_.front() == 0; }

  double measure() const {
    long total = std::accumulate(heights_.begin(), heights_.end(), 0L);
    return hx_ * hy_ * static_cast<double>(total);
  }

  bool contains_cell(std::size_t i, long j) const {
    return i < heights_.size() && j >= 0 && j < heights_[i];
  }

  /// Exact integral of the indicator over [0, s] x [0, t].
  double corner_integral(double s, double t) const {
    if (s < 0.0 || t < 0.0) throw std::domain_error("Staircase::corner_integral: negative bound");
    double total = 0.0;
    for (std::size_t i = 0; i < heights_.size(); ++i) {
      double x0 = static_cast<double>(i) * hx_;
      if (x0 >= s) break;
      double dx = std::min(hx_, s - x0);
      total += dx * std::min(t, static_cast<double>(heights_[i]) * hy_);
    }
    return total;
  }

  /// Subset comparison; requires identical geometry.
  bool subset_of(const Staircase& other) const {
    check_same_grid(other);
    for (std::size_t i = 0; i < heights_.size(); ++i)
      if (heights_[i] > other.heights_[i]) return false;
    return true;
  }

  bool operator==(const Staircase& other) const {
    return approx_eq(hx_, other.hx_) && approx_eq(hy_, other.hy_) && heights_ == other.heights_;
  }

  /// Indicator as a grid function, value c on the staircase, on an m x rows grid.
  GridFunction2D indicator(double c = 1.0, long rows = -1) const {
    long top = rows >= 1 ? rows : std::max(1L, max_height());
    std::vector<double> flat(heights_.size() * static_cast<std::size_t>(top), 0.0);
    for (std::size_t i = 0; i < heights_.size(); ++i)
      for (long j = 0; j < std::min(heights_[i], top); ++j)
        flat[i * static_cast<std::size_t>(top) + static_cast<std::size_t>(j)] = c;
    return GridFunction2D(hx_, hy_, heights_.size(), static_cast<std::size_t>(top), std::move(flat));
  }

  void check_same_grid(const Staircase& other) const {
    if (columns() != other.columns() || !approx_eq(hx_, other.hx_) || !approx_eq(hy_, other.hy_))
      throw std::invalid_argument("Staircase: mismatched grids");
  }

 private:
  double hx_, hy_;
  std::vector<long> heights_;
};

/// Visits every weakly decreasing profile (h_1 >= ... >= h_m, 0 <= h_i <= n)
/// exactly once, the all-zero profile included. Count is binomial(m+n, m).
/// The callback receives a reused buffer; copy if the profile must outlive it.
template <typename F>
void for_each_staircase(std::size_t m, long n, F&& fn) {
  if (m == 0 || n < 0) throw std::invalid_argument("for_each_staircase: bad dimensions");
  std::vector<long> h(m, 0);
  for (;;) {
    fn(const_cast<const std::vector<long>&>(h));
    std::size_t i = m;
    while (i > 0) {
      --i;
      long bound = (i == 0) ? n : h[i - 1];
      if (h[i] < bound) {
        ++h[i];
        for (std::size_t k = i + 1; k < m; ++k) h[k] = 0;
        break;
      }
      if (i == 0) return;
    }
  }
}

/// Same enumeration restricted to profiles with h_1 == first.
template <typename F>
void for_each_staircase_with_first(std::size_t m, long first, F&& fn) {
  std::vector<long> h(m, 0);
  h[0] = first;
  for (;;) {
    fn(const_cast<const std::vector<long>&>(h));
    std::size_t i = m;
    bool advanced = false;
    while (i > 1) {
      --i;
      long bound = h[i - 1];
      if (h[i] < bound) {
        ++h[i];
        for (std::size_t k = i + 1; k < m; ++k) h[k] = 0;
        advanced = true;
        break;
      }
    }
    if (!advanced) return;
  }
}

inline unsigned long long staircase_count(std::size_t m, long n) {
  return binomial(static_cast<unsigned>(m + static_cast<std::size_t>(n)), static_cast<unsigned>(m));
}

inline Staircase random_staircase(Rng& rng, double hx, double hy, std::size_t m, long n) {
  std::vector<long> h(m);
  long bound = n;
  for (std::size_t i = 0; i < m; ++i) {
    h[i] = rng.range(0, bound);
    bound = h[i];
  }
  return Staircase(hx, hy, std::move(h));
}

/// Random staircase contained in `upper` (same grid).
inline Staircase random_substaircase(Rng& rng, const Staircase& upper) {
  std::vector<long> h(upper.columns());
  long prev = upper.columns() ? upper.height(0) : 0;
  for (std::size_t i = 0; i < upper.columns(); ++i) {
    long bound = std::min(prev, upper.height(i));
    h[i] = rng.range(0, bound);
    prev = h[i];
  }
  return Staircase(upper.hx(), upper.hy(), std::move(h));
}

/// Result of a supremum search over staircases in a fixed box/resolution.
struct SupSearchResult {
  double best = -kInf;
  std::optional<Staircase> argmax;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  bool exhaustive = true;
};

struct SearchOptions {
  unsigned long long exhaustive_limit = 3'000'000;  // max profiles for full enumeration
  std::uint64_t seed = 1;
  std::size_t anneal_iterations = 20'000;
  std::size_t anneal_restarts = 8;
  unsigned threads = 1;
};

namespace detail {

/// Ratio is signalled as skipped via nullopt; +inf is a valid supremum value.
template <typename RatioFn>
SupSearchResult staircase_sup_exhaustive(double hx, double hy, std::size_t m, long n,
                                         RatioFn&& ratio, unsigned threads) {
  auto run_first = [&](long first) {
    SupSearchResult local;
    std::vector<long> best_heights;
    for_each_staircase_with_first(m, first, [&](const std::vector<long>& h) {
      std::optional<double> r = ratio(h);
      if (!r) {
        ++local.skipped;
        return;
      }
      ++local.evaluated;
      if (*r > local.best) {
        local.best = *r;
        best_heights = h;
      }
    });
    if (!best_heights.empty()) local.argmax = Staircase(hx, hy, best_heights);
    return local;
  };

  std::vector<SupSearchResult> parts;
  if (threads <= 1) {
    for (long first = 0; first <= n; ++first) parts.push_back(run_first(first));
  } else {
    std::vector<std::future<SupSearchResult>> futs;
    for (long first = 0; first <= n; ++first)
      futs.push_back(std::async(std::launch::async, run_first, first));
    for (auto& f : futs) parts.push_back(f.get());
  }

  SupSearchResult out;
  for (auto& p : parts) {  // merged in fixed first-height order: deterministic
    out.evaluated += p.evaluated;
    out.skipped += p.skipped;
    if (p.evaluated > 0 && p.best > out.best) {
      out.best = p.best;
      out.argmax = p.argmax;
    }
  }
  return out;
}

template <typename RatioFn>
SupSearchResult staircase_sup_anneal(double hx, double hy, std::size_t m, long n, RatioFn&& ratio,
                                     const SearchOptions& opt) {
  SupSearchResult out;
  out.exhaustive = false;
  Rng rng(opt.seed);
  for (std::size_t restart = 0; restart < opt.anneal_restarts; ++restart) {
    std::vector<long> cur = random_staircase(rng, hx, hy, m, n).heights();
    auto cur_val = ratio(cur);
    for (std::size_t it = 0; it < opt.anneal_iterations; ++it) {
      double temp = 0.5 * std::exp(-3.0 * static_cast<double>(it) /
                                   static_cast<double>(opt.anneal_iterations));
      std::vector<long> cand = cur;
      std::size_t i = rng.index(m);
      long delta = rng.unit() < 0.5 ? 1 : -1;
      cand[i] += delta;
      long upper = (i == 0) ? n : cand[i - 1];
      long lower = (i + 1 < m) ? cand[i + 1] : 0;
      if (cand[i] < lower || cand[i] > upper) continue;
      auto cand_val = ratio(cand);
      ++out.evaluated;
      if (!cand_val) {
        ++out.skipped;
        continue;
      }
      if (*cand_val > out.best) {
        out.best = *cand_val;
        out.argmax = Staircase(hx, hy, cand);
      }
      bool accept = !cur_val || *cand_val >= *cur_val;
      if (!accept && temp > 0.0) {
        double denom = std::max(std::abs(*cur_val), 1e-30);
        accept = std::exp((*cand_val - *cur_val) / (denom * temp)) > rng.unit();
      }
      if (accept) {
        cur = std::move(cand);
        cur_val = cand_val;
      }
    }
  }
  return out;
}

}  // namespace detail

/// Supremum of ratio(heights) over every nonempty staircase in an m x n cell
/// grid: exhaustive when the profile count fits the option limit, simulated
/// annealing (reported as non-exhaustive lower bound) otherwise.
template <typename RatioFn>
SupSearchResult staircase_sup(double hx, double hy, std::size_t m, long n, RatioFn&& ratio,
                              const SearchOptions& opt = {}) {
  auto guarded = [&](const std::vector<long>& h) -> std::optional<double> {
    bool all_zero = true;
    for (long v : h)
      if (v != 0) { all_zero = false; break; }
    if (all_zero) return std::nullopt;
    return ratio(h);
  };
  if (staircase_count(m, n) <= opt.exhaustive_limit)
    return detail::staircase_sup_exhaustive(hx, hy, m, n, guarded, opt.threads);
  return detail::staircase_sup_anneal(hx, hy, m, n, guarded, opt);
}

}  // namespace lorentz
