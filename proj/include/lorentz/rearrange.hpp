#pragma once

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <vector>

#include "lorentz/common.hpp"
#include "lorentz/grid.hpp"

namespace lorentz {

/// Measure of the strict superlevel set { f > sigma }.
inline double distribution(const GridFunction1D& f, double sigma) {
  if (sigma < 0.0) throw std::domain_error("distribution: sigma must be nonnegative");
  std::size_t count = 0;
  for (double v : f.values())
    if (v > sigma) ++count;
  return f.cell_width() * static_cast<double>(count);
}

inline double distribution(const GridFunction2D& f, double sigma) {
  if (sigma < 0.0) throw std::domain_error("distribution: sigma must be nonnegative");
  std::size_t count = 0;
  for (double v : f.flat())
    if (v > sigma) ++count;
  return f.cell_area() * static_cast<double>(count);
}

/// Decreasing rearrangement of a 1D grid function (stable descending sort).
inline GridFunction1D rearrange_1d(const GridFunction1D& g) { return g.sorted_descending(); }

/// Rearrangement in the second variable: each x-section sorted descending.
inline GridFunction2D rearrange_y(const GridFunction2D& f) {
  auto rows = f.rows();
  for (auto& r : rows) std::stable_sort(r.begin(), r.end(), std::greater<>());
  return GridFunction2D(f.hx(), f.hy(), rows);
}

/// Rearrangement in the first variable: each y-section sorted descending.
inline GridFunction2D rearrange_x(const GridFunction2D& f) {
  std::vector<double> flat = f.flat();
  std::vector<double> col(f.m());
  for (std::size_t j = 0; j < f.n(); ++j) {
    for (std::size_t i = 0; i < f.m(); ++i) col[i] = f.at(i, j);
    std::stable_sort(col.begin(), col.end(), std::greater<>());
    for (std::size_t i = 0; i < f.m(); ++i) flat[i * f.n() + j] = col[i];
  }
  return GridFunction2D(f.hx(), f.hy(), f.m(), f.n(), std::move(flat));
}

/// Iterated rearrangement, second variable first: weakly decreasing in both
/// indices and equimeasurable with the input.
inline GridFunction2D rearrange_yx(const GridFunction2D& f) { return rearrange_x(rearrange_y(f)); }

/// The opposite iteration order; in general a different function.
inline GridFunction2D rearrange_xy(const GridFunction2D& f) { return rearrange_y(rearrange_x(f)); }

/// All cells of f as a 1D grid function with cell width hx*hy (unsorted).
inline GridFunction1D flatten(const GridFunction2D& f) {
  return GridFunction1D(f.cell_area(), f.flat());
}

/// Global decreasing rearrangement of a 2D function onto (0, oo).
inline GridFunction1D rearrange_flat(const GridFunction2D& f) {
  return rearrange_1d(flatten(f));
}

inline bool is_weakly_decreasing_both(const GridFunction2D& f) {
  for (std::size_t i = 0; i < f.m(); ++i)
    for (std::size_t j = 0; j < f.n(); ++j) {
      if (i + 1 < f.m() && f.at(i, j) < f.at(i + 1, j)) return false;
      if (j + 1 < f.n() && f.at(i, j) < f.at(i, j + 1)) return false;
    }
  return true;
}

/// True when the two functions have identical distribution functions. Cell
/// areas must agree (a domain error otherwise); shapes may differ, shorter
/// value lists are padded with zeros.
inline bool equimeasurable(const GridFunction2D& f, const GridFunction2D& g, double tol = 1e-12) {
  if (!approx_eq(f.cell_area(), g.cell_area()))
    throw std::domain_error("equimeasurable: cell areas differ");
  std::vector<double> a = f.flat(), b = g.flat();
  std::sort(a.begin(), a.end(), std::greater<>());
  std::sort(b.begin(), b.end(), std::greater<>());
  a.resize(std::max(a.size(), b.size()), 0.0);
  b.resize(std::max(a.size(), b.size()), 0.0);
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!approx_eq(a[k], b[k], tol, tol)) return false;
  return true;
}

}  // namespace lorentz
