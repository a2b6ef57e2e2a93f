#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lorentz/common.hpp"
#include "lorentz/grid.hpp"
#include "lorentz/norms.hpp"
#include "lorentz/staircase.hpp"
#include "lorentz/weight_classes.hpp"
#include "lorentz/weights.hpp"

namespace lorentz {

enum class EmbedDirection {
  Forward,  // one-variable space into the two-dimensional one
  Reverse,  // two-dimensional space into the one-variable one
};

inline const char* direction_name(EmbedDirection d) {
  return d == EmbedDirection::Forward ? "forward" : "reverse";
}

/// Best-constant report for an embedding at a fixed box and resolution.
struct EmbeddingReport {
  EmbedDirection direction = EmbedDirection::Forward;
  double p = 1.0, q = 1.0;
  std::optional<double> r;  // pq/(p-q) when p > q
  double constant = 0.0;
  std::optional<Staircase> maximizer;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;
  bool exhaustive = true;
  Box box;
  std::size_t cells_x = 0, cells_y = 0;
};

/// sup over staircases of w(D)^{1/q} / ( integral of u over [0,|D|] )^{1/p}.
/// Denominator-zero sets are skipped (and counted).
inline EmbeddingReport embed_const_forward(const Weight1D& u, const Weight2D& w, double p, double q,
                                           Box box, std::size_t mx, std::size_t my,
                                           const SearchOptions& opt = {}) {
  if (!(p > 0.0) || !(p <= q)) throw std::invalid_argument("embed_const_forward: requires 0 < p <= q");
  if (!(box.x > 0.0) || !(box.y > 0.0) || mx == 0 || my == 0)
    throw std::invalid_argument("embed_const_forward: box and cells must be positive");
  double hx = box.x / static_cast<double>(mx);
  double hy = box.y / static_cast<double>(my);
  auto ratio = [&](const std::vector<long>& h) -> std::optional<double> {
    Staircase D(hx, hy, h);
    double den = u.V(D.measure());
    if (den <= 0.0) return std::nullopt;
    return std::pow(staircase_weight_mass(D, w), 1.0 / q) / std::pow(den, 1.0 / p);
  };
  SupSearchResult r = staircase_sup(hx, hy, mx, static_cast<long>(my), ratio, opt);
  EmbeddingReport rep;
  rep.direction = EmbedDirection::Forward;
  rep.p = p;
  rep.q = q;
  rep.constant = r.evaluated ? r.best : 0.0;
  rep.maximizer = r.argmax;
  rep.evaluated = r.evaluated;
  rep.skipped = r.skipped;
  rep.exhaustive = r.exhaustive;
  rep.box = box;
  rep.cells_x = mx;
  rep.cells_y = my;
  return rep;
}

/// Mirror supremum: ( integral of u over [0,|D|] )^{1/q} / w(D)^{1/p}.
inline EmbeddingReport embed_const_reverse(const Weight1D& u, const Weight2D& w, double p, double q,
                                           Box box, std::size_t mx, std::size_t my,
                                           const SearchOptions& opt = {}) {
  if (!(p > 0.0) || !(p <= q)) throw std::invalid_argument("embed_const_reverse: requires 0 < p <= q");
  if (!(box.x > 0.0) || !(box.y > 0.0) || mx == 0 || my == 0)
    throw std::invalid_argument("embed_const_reverse: box and cells must be positive");
  double hx = box.x / static_cast<double>(mx);
  double hy = box.y / static_cast<double>(my);
  auto ratio = [&](const std::vector<long>& h) -> std::optional<double> {
    Staircase D(hx, hy, h);
    double den = staircase_weight_mass(D, w);
    if (den <= 0.0) return std::nullopt;
    return std::pow(u.V(D.measure()), 1.0 / q) / std::pow(den, 1.0 / p);
  };
  SupSearchResult r = staircase_sup(hx, hy, mx, static_cast<long>(my), ratio, opt);
  EmbeddingReport rep;
  rep.direction = EmbedDirection::Reverse;
  rep.p = p;
  rep.q = q;
  rep.constant = r.evaluated ? r.best : 0.0;
  rep.maximizer = r.argmax;
  rep.evaluated = r.evaluated;
  rep.skipped = r.skipped;
  rep.exhaustive = r.exhaustive;
  rep.box = box;
  rep.cells_x = mx;
  rep.cells_y = my;
  return rep;
}

/// Random function decreasing in each variable: a positive combination of at
/// most `max_terms` nested staircase indicators on an m x n grid.
inline GridFunction2D random_decreasing_function(Rng& rng, double hx, double hy, std::size_t m,
                                                 long n, std::size_t max_terms = 5) {
  std::size_t terms = 1 + rng.index(max_terms);
  std::vector<double> flat(m * static_cast<std::size_t>(n), 0.0);
  Staircase outer = random_staircase(rng, hx, hy, m, n);
  Staircase current = outer;
  for (std::size_t k = 0; k < terms; ++k) {
    double coef = rng.uniform(0.1, 2.0);
    for (std::size_t i = 0; i < m; ++i)
      for (long j = 0; j < current.height(i); ++j)
        flat[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] += coef;
    current = random_substaircase(rng, current);
  }
  return GridFunction2D(hx, hy, m, static_cast<std::size_t>(n), std::move(flat));
}

struct InequalityCheck {
  bool pass = true;
  double max_ratio = 0.0;  // largest observed left/right quotient against C
  std::size_t trials = 0;
  double ratio_at_maximizer = 0.0;
};

/// Validates the embedding inequality at constant C on random decreasing
/// functions plus the reported maximizer indicator (tightness).
inline InequalityCheck embedding_inequality_check(const EmbeddingReport& rep, const Weight1D& u,
                                                  const Weight2D& w, std::size_t trials,
                                                  std::uint64_t seed, double slack = 1e-9) {
  InequalityCheck out;
  out.trials = trials;
  if (!rep.maximizer) return out;
  double hx = rep.maximizer->hx();
  double hy = rep.maximizer->hy();
  std::size_t m = rep.cells_x;
  long n = static_cast<long>(rep.cells_y);

  auto both_norms = [&](const GridFunction2D& f) {
    double two_dim, one_dim;
    if (rep.direction == EmbedDirection::Forward) {
      two_dim = lambda2_norm(f, w, rep.q);
      one_dim = lambda_norm(f, u, rep.p);
      return std::pair<double, double>(two_dim, one_dim);  // lhs, rhs-carrier
    }
    one_dim = lambda_norm(f, u, rep.q);
    two_dim = lambda2_norm(f, w, rep.p);
    return std::pair<double, double>(one_dim, two_dim);
  };

  auto check_one = [&](const GridFunction2D& f) {
    auto [lhs, rhs] = both_norms(f);
    if (rhs == 0.0) {
      if (lhs > 0.0) out.pass = false;
      return 0.0;
    }
    double ratio = lhs / rhs;
    out.max_ratio = std::max(out.max_ratio, ratio);
    if (!approx_le(ratio, rep.constant, slack, slack)) out.pass = false;
    return ratio;
  };

  long top = std::max(rep.maximizer->max_height(), 1L);
  out.ratio_at_maximizer = check_one(rep.maximizer->indicator(1.0, top));
  if (!approx_eq(out.ratio_at_maximizer, rep.constant, 1e-12, 1e-12)) out.pass = false;

  Rng rng(seed);
  for (std::size_t k = 0; k < trials; ++k) {
    GridFunction2D f = random_decreasing_function(rng, hx, hy, m, n);
    check_one(f);
  }
  // all-zero input: both sides vanish
  check_one(GridFunction2D(hx, hy, m, static_cast<std::size_t>(n),
                           std::vector<double>(m * static_cast<std::size_t>(n), 0.0)));
  return out;
}

/// Increasing chain of staircases; Delta_k = D_{k+1} \ D_k. User-supplied
/// families must end at the full truncated box; level-set families end at the
/// support of the generating function instead.
class CoveringFamily {
 public:
  explicit CoveringFamily(std::vector<Staircase> chain) : chain_(std::move(chain)) {
    if (chain_.size() < 2) throw std::invalid_argument("CoveringFamily: needs at least two sets");
    for (std::size_t k = 0; k + 1 < chain_.size(); ++k) {
      chain_[k].check_same_grid(chain_[k + 1]);
      if (!chain_[k].subset_of(chain_[k + 1]) || chain_[k].heights() == chain_[k + 1].heights())
        throw std::invalid_argument("CoveringFamily: chain must be strictly increasing");
    }
  }

  const std::vector<Staircase>& chain() const { return chain_; }
  std::size_t steps() const { return chain_.size() - 1; }

  bool covers_box(long n_rows) const {
    const Staircase& last = chain_.back();
    for (std::size_t i = 0; i < last.columns(); ++i)
      if (last.height(i) != n_rows) return false;
    return true;
  }

 private:
  std::vector<Staircase> chain_;
};

struct CoveringFunctionals {
  double integral = 0.0;  // the t-integral form
  double sum = 0.0;       // the pure sum form
  std::size_t skipped = 0;
  double quad_tol = 0.0;  // estimated relative quadrature tolerance of `integral`
};

namespace detail {

/// integral over [0,1] of ((A + B t)/(C + E t))^theta dt; A, B, C, E >= 0.
/// The A = C = 0 chain-start case reduces to the constant (B/E)^theta.
inline double ratio_power_integral(double A, double B, double C, double E, double theta,
                                   double* tol_out) {
  if (A == 0.0 && C == 0.0) {
    if (E == 0.0) return kInf;
    return std::pow(B / E, theta);
  }
  if (C == 0.0) {
    // integrable endpoint singularity when theta < 1: split off an analytic head
    if (theta >= 1.0) return kInf;
    double delta = 1e-8;
    double head = std::pow(A / E, theta) * std::pow(delta, 1.0 - theta) / (1.0 - theta);
    double tail = integrate([&](double t) { return std::pow((A + B * t) / (E * t), theta); }, delta,
                            1.0, 1e-10);
    if (tol_out) *tol_out = std::max(*tol_out, 1e-4);
    return head + tail;
  }
  double val = integrate([&](double t) { return std::pow((A + B * t) / (C + E * t), theta); }, 0.0,
                         1.0, 1e-12);
  if (tol_out) *tol_out = std::max(*tol_out, 1e-8);
  return val;
}

}  // namespace detail

/// Functionals controlling the p > q forward embedding over a covering family:
///   integral form: sum_k of the t-integral of ((w(D_k)+w(Delta_k)t)/(U_k+dU_k t))^{r/p} w(Delta_k)
///   sum form:      sum_k w(Delta_k)^{r/q} U(|D_{k+1}|)^{-r/p}
/// Terms with U(|D_{k+1}|) = 0 are skipped and counted.
inline CoveringFunctionals covering_functionals_forward(const CoveringFamily& fam,
                                                        const Weight1D& u, const Weight2D& w,
                                                        double p, double q) {
  if (!(q > 0.0) || !(q < p)) throw std::invalid_argument("covering_functionals: requires 0 < q < p");
  double r = Exponents(p, q).r();
  CoveringFunctionals out;
  const auto& chain = fam.chain();
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    double wk = staircase_weight_mass(chain[k], w);
    double wk1 = staircase_weight_mass(chain[k + 1], w);
    double wdelta = wk1 - wk;
    double Uk = u.V(chain[k].measure());
    double Uk1 = u.V(chain[k + 1].measure());
    if (Uk1 <= 0.0) {
      ++out.skipped;
      continue;
    }
    out.sum += std::pow(wdelta, r / q) * std::pow(Uk1, -r / p);
    if (wdelta > 0.0)
      out.integral +=
          detail::ratio_power_integral(wk, wdelta, Uk, Uk1 - Uk, r / p, &out.quad_tol) * wdelta;
  }
  return out;
}

/// Mirror functionals for the p > q reverse embedding (roles of the weight
/// masses and the primitive U swapped); terms with w(D_{k+1}) = 0 skipped.
inline CoveringFunctionals covering_functionals_reverse(const CoveringFamily& fam,
                                                        const Weight1D& u, const Weight2D& w,
                                                        double p, double q) {
  if (!(q > 0.0) || !(q < p)) throw std::invalid_argument("covering_functionals: requires 0 < q < p");
  double r = Exponents(p, q).r();
  CoveringFunctionals out;
  const auto& chain = fam.chain();
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    double wk = staircase_weight_mass(chain[k], w);
    double wk1 = staircase_weight_mass(chain[k + 1], w);
    double Uk = u.V(chain[k].measure());
    double Uk1 = u.V(chain[k + 1].measure());
    double dU = Uk1 - Uk;
    if (wk1 <= 0.0) {
      ++out.skipped;
      continue;
    }
    out.sum += std::pow(wk1, -r / p) * std::pow(dU, r / q);
    if (dU > 0.0)
      out.integral += detail::ratio_power_integral(Uk, dU, wk, wk1 - wk, r / p, &out.quad_tol) * dU;
  }
  return out;
}

/// Level sets of a function decreasing in each variable, as an increasing
/// staircase chain (one set per distinct positive value, largest value first,
/// so the chain grows toward the support).
inline std::vector<Staircase> level_sets(const GridFunction2D& f) {
  if (!is_weakly_decreasing_both(f))
    throw std::invalid_argument("level_sets: function must be decreasing in each variable");
  std::vector<double> levels = f.flat();
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  while (!levels.empty() && levels.back() == 0.0) levels.pop_back();
  std::vector<Staircase> out;
  for (double lvl : levels) {
    std::vector<long> h(f.m(), 0);
    for (std::size_t i = 0; i < f.m(); ++i) {
      long cnt = 0;
      for (std::size_t j = 0; j < f.n(); ++j)
        if (f.at(i, j) >= lvl) ++cnt;
      h[i] = cnt;
    }
    out.emplace_back(f.hx(), f.hy(), std::move(h));
  }
  return out;
}

/// The level-set chain wrapped as a covering family. The final member is the
/// support staircase of f, which covers the box only when f is positive
/// everywhere on it.
inline CoveringFamily level_family(const GridFunction2D& f) {
  std::vector<Staircase> chain = level_sets(f);
  if (chain.empty()) throw std::invalid_argument("level_family: function is identically zero");
  std::vector<long> zero(f.m(), 0);
  std::vector<Staircase> with_empty;
  with_empty.emplace_back(f.hx(), f.hy(), zero);
  for (auto& s : chain) with_empty.push_back(std::move(s));
  return CoveringFamily(std::move(with_empty));
}

/// Jump-chain value of the level-set Stieltjes integral
///   forward: integral of U(|D_{f,t}|)^{-r/p} d(-w(D_{f,t})^{r/q})
///   reverse: integral of w(D_{f,t})^{-r/p} d(-U(|D_{f,t}|)^{r/q})
/// with the integrand evaluated at the set entered at each jump (the larger
/// one), matching the term shape of the pure-sum covering functional.
inline double level_integral(const GridFunction2D& f, const Weight1D& u, const Weight2D& w,
                             double p, double q, EmbedDirection dir) {
  if (!(q > 0.0) || !(q < p)) throw std::invalid_argument("level_integral: requires 0 < q < p");
  double r = Exponents(p, q).r();
  std::vector<Staircase> chain = level_sets(f);
  double total = 0.0;
  double prev_w = 0.0, prev_u = 0.0;
  std::size_t skipped = 0;
  for (const auto& D : chain) {
    double wD = staircase_weight_mass(D, w);
    double uD = u.V(D.measure());
    if (dir == EmbedDirection::Forward) {
      if (uD <= 0.0) {
        ++skipped;
        continue;
      }
      total += std::pow(uD, -r / p) * (std::pow(wD, r / q) - std::pow(prev_w, r / q));
    } else {
      if (wD <= 0.0) {
        ++skipped;
        continue;
      }
      total += std::pow(wD, -r / p) * (std::pow(uD, r / q) - std::pow(prev_u, r / q));
    }
    prev_w = wD;
    prev_u = uD;
  }
  (void)skipped;
  return total;
}

}  // namespace lorentz
