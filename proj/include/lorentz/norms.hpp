#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "lorentz/common.hpp"
#include "lorentz/grid.hpp"
#include "lorentz/hardy.hpp"
#include "lorentz/rearrange.hpp"
#include "lorentz/weights.hpp"

namespace lorentz {

/// Weighted Lorentz functional ( integral of (f*)^p v )^{1/p}, exact: the
/// rearrangement is piecewise constant and the weight enters through V.
inline double lambda_norm(const GridFunction1D& f, const Weight1D& v, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("lambda_norm: p must be positive");
  GridFunction1D star = rearrange_1d(f);
  double h = star.cell_width();
  double sum = 0.0;
  for (std::size_t k = 0; k < star.cells(); ++k) {
    double val = star.value(k);
    if (val == 0.0) break;  // sorted: the rest vanish
    double dv = v.V(static_cast<double>(k + 1) * h) - v.V(static_cast<double>(k) * h);
    sum += std::pow(val, p) * dv;
  }
  return std::pow(sum, 1.0 / p);
}

/// Same functional with the global rearrangement of a 2D function.
inline double lambda_norm(const GridFunction2D& f, const Weight1D& v, double p) {
  return lambda_norm(flatten(f), v, p);
}

/// Two-dimensional Lorentz functional with the iterated rearrangement, exact.
inline double lambda2_norm(const GridFunction2D& f, const Weight2D& w, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("lambda2_norm: p must be positive");
  GridFunction2D r = rearrange_yx(f);
  double sum = 0.0;
  if (w.is_product()) {
    std::vector<double> du(r.m()), dv(r.n());
    for (std::size_t i = 0; i < r.m(); ++i)
      du[i] = w.u().V(static_cast<double>(i + 1) * r.hx()) - w.u().V(static_cast<double>(i) * r.hx());
    for (std::size_t j = 0; j < r.n(); ++j)
      dv[j] = w.v().V(static_cast<double>(j + 1) * r.hy()) - w.v().V(static_cast<double>(j) * r.hy());
    for (std::size_t i = 0; i < r.m(); ++i)
      for (std::size_t j = 0; j < r.n(); ++j) {
        double val = r.at(i, j);
        if (val > 0.0) sum += std::pow(val, p) * du[i] * dv[j];
      }
  } else {
    for (std::size_t i = 0; i < r.m(); ++i)
      for (std::size_t j = 0; j < r.n(); ++j) {
        double val = r.at(i, j);
        if (val > 0.0)
          sum += std::pow(val, p) *
                 w.rect_mass(static_cast<double>(i) * r.hx(), static_cast<double>(i + 1) * r.hx(),
                             static_cast<double>(j) * r.hy(), static_cast<double>(j + 1) * r.hy());
      }
  }
  return std::pow(sum, 1.0 / p);
}

enum class MixedOrder { YThenX, XThenY };

/// Mixed functional: inner Lorentz norm along one variable, then the outer
/// norm of the rearranged inner values. The weight u always follows the first
/// variable and v the second; the order flag picks which one is inner.
inline double mixed_norm(const GridFunction2D& f, const Weight1D& u, const Weight1D& v, double p,
                         double q, MixedOrder order) {
  if (!(p > 0.0) || !(q > 0.0)) throw std::invalid_argument("mixed_norm: exponents must be positive");
  if (order == MixedOrder::YThenX) {
    std::vector<double> g(f.m());
    std::vector<double> dv(f.n());
    for (std::size_t j = 0; j < f.n(); ++j)
      dv[j] = v.V(static_cast<double>(j + 1) * f.hy()) - v.V(static_cast<double>(j) * f.hy());
    std::vector<double> rowbuf;
    for (std::size_t i = 0; i < f.m(); ++i) {
      auto r = f.row(i);
      rowbuf.assign(r.begin(), r.end());
      std::stable_sort(rowbuf.begin(), rowbuf.end(), std::greater<>());
      double inner = 0.0;
      for (std::size_t j = 0; j < rowbuf.size(); ++j) {
        if (rowbuf[j] == 0.0) break;
        inner += std::pow(rowbuf[j], p) * dv[j];
      }
      g[i] = std::pow(inner, 1.0 / p);
    }
    return lambda_norm(GridFunction1D(f.hx(), std::move(g)), u, q);
  }
  // XThenY: inner rearrangement along the first variable against u, outer
  // along the second against v.
  std::vector<double> g(f.n());
  std::vector<double> du(f.m());
  for (std::size_t i = 0; i < f.m(); ++i)
    du[i] = u.V(static_cast<double>(i + 1) * f.hx()) - u.V(static_cast<double>(i) * f.hx());
  std::vector<double> colbuf(f.m());
  for (std::size_t j = 0; j < f.n(); ++j) {
    for (std::size_t i = 0; i < f.m(); ++i) colbuf[i] = f.at(i, j);
    std::stable_sort(colbuf.begin(), colbuf.end(), std::greater<>());
    double inner = 0.0;
    for (std::size_t i = 0; i < colbuf.size(); ++i) {
      if (colbuf[i] == 0.0) break;
      inner += std::pow(colbuf[i], p) * du[i];
    }
    g[j] = std::pow(inner, 1.0 / p);
  }
  return lambda_norm(GridFunction1D(f.hy(), std::move(g)), v, q);
}

/// Quadrature-backed norm value with its achieved refinement tolerance.
struct RefinedNorm {
  double value = 0.0;
  double rel_change = 0.0;  // |last - previous| / last at the stopping level
  int level = 0;            // dyadic refinements of the data grid
};

namespace detail {

/// Midpoint-in-value, exact-in-weight quadrature of (op)^p u v over the data
/// box, refined dyadically until successive values agree to 0.1%.
template <typename RowFactory>
RefinedNorm refine_norm(const GridFunction2D& f, const Weight1D& u, const Weight1D& v, double p,
                        RowFactory&& make_row, int max_level = 6) {
  RefinedNorm out;
  double prev = -1.0;
  for (int level = 0;; ++level) {
    std::size_t mx = f.m() << level, ny = f.n() << level;
    double dx = f.width() / static_cast<double>(mx);
    double dy = f.height() / static_cast<double>(ny);
    std::vector<double> du(mx), dv(ny);
    for (std::size_t i = 0; i < mx; ++i)
      du[i] = u.V(static_cast<double>(i + 1) * dx) - u.V(static_cast<double>(i) * dx);
    for (std::size_t j = 0; j < ny; ++j)
      dv[j] = v.V(static_cast<double>(j + 1) * dy) - v.V(static_cast<double>(j) * dy);
    double sum = 0.0;
    for (std::size_t j = 0; j < ny; ++j) {
      if (dv[j] == 0.0) continue;
      double t = (static_cast<double>(j) + 0.5) * dy;
      auto row = make_row(t);
      double rowsum = 0.0;
      for (std::size_t i = 0; i < mx; ++i) {
        if (du[i] == 0.0) continue;
        double s = (static_cast<double>(i) + 0.5) * dx;
        rowsum += std::pow(row(s), p) * du[i];
      }
      sum += rowsum * dv[j];
    }
    double value = std::pow(sum, 1.0 / p);
    out.value = value;
    out.level = level;
    if (prev >= 0.0) {
      double denom = std::max(value, 1e-300);
      out.rel_change = std::abs(value - prev) / denom;
      if (out.rel_change < 1e-3 || level >= max_level) return out;
    }
    prev = value;
  }
}

}  // namespace detail

/// ( integral of (S21 f)^p u v over the data box )^{1/p}. Requires p >= 1
/// (the functional is a norm only there); quadrature per refine_norm.
inline RefinedNorm star_norm(const GridFunction2D& f, const Weight1D& u, const Weight1D& v,
                             double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("star_norm: requires p >= 1");
  S21Evaluator ev(f);
  return detail::refine_norm(f, u, v, p, [&](double t) {
    auto row = ev.row(t);
    return [row](double s) { return row.value_at(s); };
  });
}

/// ( integral of (f**)^p u v over the data box )^{1/p} with f** the corner
/// average of the iterated rearrangement.
inline RefinedNorm norm2_starstar(const GridFunction2D& f, const Weight1D& u, const Weight1D& v,
                                  double p) {
  if (!(p > 0.0)) throw std::invalid_argument("norm2_starstar: p must be positive");
  FStarStarEvaluator ev(f);
  return detail::refine_norm(f, u, v, p, [&](double t) {
    return [&ev, t](double s) { return ev.at(s, t); };
  });
}

/// Weak-type functional sup_lambda lambda * |{f > lambda}|^{1/p}, exact for a
/// grid function: the supremum is attained at a jump of the distribution.
inline double weak_lp_norm(const GridFunction2D& f, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("weak_lp_norm: p must be positive");
  std::vector<double> vals = f.flat();
  std::sort(vals.begin(), vals.end(), std::greater<>());
  double best = 0.0;
  for (std::size_t k = 0; k < vals.size(); ++k) {
    if (vals[k] == 0.0) break;
    if (k + 1 < vals.size() && vals[k + 1] == vals[k]) continue;  // jump not yet complete
    double meas = f.cell_area() * static_cast<double>(k + 1);     // measure of {f >= vals[k]}
    best = std::max(best, vals[k] * std::pow(meas, 1.0 / p));
  }
  return best;
}

struct WeakScanEntry {
  double lambda = 0.0;
  double measure = 0.0;
  double weighted = 0.0;  // lambda * measure^{1/p}
  bool exact = false;
};

struct WeakScan {
  std::vector<WeakScanEntry> entries;
  double sup = 0.0;
  bool all_exact = true;

  bool diverges(double bound) const { return sup > bound; }
};

/// Weak-type scan of an operator image over a lambda grid, using the exact
/// superlevel decomposition where available.
inline WeakScan weak_lp_scan(OpKind op, const GridFunction2D& f, double p,
                             const std::vector<double>& lambdas, Box box) {
  if (!(p > 0.0)) throw std::invalid_argument("weak_lp_scan: p must be positive");
  WeakScan out;
  for (double lam : lambdas) {
    SuperlevelResult r = superlevel_measure(op, f, lam, box);
    WeakScanEntry e;
    e.lambda = lam;
    e.measure = r.measure;
    e.weighted = lam * std::pow(r.measure, 1.0 / p);
    e.exact = r.exact;
    out.all_exact = out.all_exact && r.exact;
    out.sup = std::max(out.sup, e.weighted);
    out.entries.push_back(e);
  }
  return out;
}

}  // namespace lorentz
