#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lorentz/common.hpp"

namespace lorentz {

/// Nonnegative piecewise-constant function on a uniform 1D grid:
/// values[k] on [k*h, (k+1)*h), identically zero beyond the last cell.
class GridFunction1D {
 public:
  GridFunction1D(double cell_width, std::vector<double> values)
      : h_(cell_width), values_(std::move(values)) {
    if (!(h_ > 0.0) || !is_finite(h_))
      throw std::invalid_argument("GridFunction1D: cell width must be positive and finite");
    if (values_.empty()) throw std::invalid_argument("GridFunction1D: needs at least one cell");
    for (double v : values_)
      if (!(v >= 0.0) || !is_finite(v))
        throw std::invalid_argument("GridFunction1D: values must be nonnegative and finite");
    prefix_.resize(values_.size() + 1, 0.0);
    for (std::size_t k = 0; k < values_.size(); ++k) prefix_[k + 1] = prefix_[k] + values_[k];
  }

  double cell_width() const { return h_; }
  std::size_t cells() const { return values_.size(); }
  double width() const { return h_ * static_cast<double>(cells()); }
  const std::vector<double>& values() const { return values_; }
  double value(std::size_t k) const { return values_[k]; }

  /// Pointwise value; zero outside [0, width).
  double value_at(double x) const {
    if (x < 0.0 || x >= width()) return 0.0;
    auto k = static_cast<std::size_t>(x / h_);
    if (k >= cells()) k = cells() - 1;
    return values_[k];
  }

  /// Exact integral over [0, x]. Negative x is a domain error.
  double cumulative(double x) const {
    if (x < 0.0) throw std::domain_error("GridFunction1D::cumulative: negative bound");
    if (x >= width()) return mass();
    auto k = static_cast<std::size_t>(x / h_);
    if (k >= cells()) k = cells() - 1;
    return h_ * prefix_[k] + (x - static_cast<double>(k) * h_) * values_[k];
  }

  double mass() const { return h_ * prefix_.back(); }

  /// Stable descending sort of the cell values (ties keep original order).
  GridFunction1D sorted_descending() const {
    std::vector<double> v = values_;
    std::stable_sort(v.begin(), v.end(), std::greater<>());
    return GridFunction1D(h_, std::move(v));
  }

  GridFunction1D scaled(double c) const {
    if (!(c >= 0.0) || !is_finite(c))
      throw std::invalid_argument("GridFunction1D::scaled: factor must be nonnegative");
    std::vector<double> v = values_;
    for (double& x : v) x *= c;
    return GridFunction1D(h_, std::move(v));
  }

  friend GridFunction1D operator+(const GridFunction1D& a, const GridFunction1D& b) {
    if (!approx_eq(a.h_, b.h_) || a.cells() != b.cells())
      throw std::invalid_argument("GridFunction1D: mismatched grids in +");
    std::vector<double> v = a.values_;
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += b.values_[k];
    return GridFunction1D(a.h_, std::move(v));
  }

 private:
  double h_;
  std::vector<double> values_;
  std::vector<double> prefix_;  // running sums of values_, not yet scaled by h_
};

/// Nonnegative piecewise-constant function on a uniform rectangular grid.
/// values(i, j) lives on [i*hx, (i+1)*hx) x [j*hy, (j+1)*hy); the first index
/// follows the first variable (x/s), the second the second variable (y/t).
/// The function is identically zero outside [0, m*hx] x [0, n*hy].
class GridFunction2D {
 public:
  GridFunction2D(double hx, double hy, const std::vector<std::vector<double>>& rows)
      : hx_(hx), hy_(hy), m_(rows.size()), n_(rows.empty() ? 0 : rows.front().size()) {
    if (m_ == 0 || n_ == 0) throw std::invalid_argument("GridFunction2D: empty grid");
    values_.reserve(m_ * n_);
    for (const auto& r : rows) {
      if (r.size() != n_) throw std::invalid_argument("GridFunction2D: ragged rows");
      values_.insert(values_.end(), r.begin(), r.end());
    }
    init();
  }

  GridFunction2D(double hx, double hy, std::size_t m, std::size_t n, std::vector<double> flat)
      : hx_(hx), hy_(hy), m_(m), n_(n), values_(std::move(flat)) {
    if (m_ == 0 || n_ == 0 || values_.size() != m_ * n_)
      throw std::invalid_argument("GridFunction2D: bad dimensions");
    init();
  }

  double hx() const { return hx_; }
  double hy() const { return hy_; }
  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  double width() const { return hx_ * static_cast<double>(m_); }
  double height() const { return hy_ * static_cast<double>(n_); }
  double cell_area() const { return hx_ * hy_; }

  double at(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  const std::vector<double>& flat() const { return values_; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(values_.data() + i * n_, n_);
  }

  double value_at(double s, double t) const {
    if (s < 0.0 || t < 0.0 || s >= width() || t >= height()) return 0.0;
    auto i = std::min(static_cast<std::size_t>(s / hx_), m_ - 1);
    auto j = std::min(static_cast<std::size_t>(t / hy_), n_ - 1);
    return at(i, j);
  }

  double mass() const { return cell_area() * psum(m_, n_); }

  /// Exact integral over [0, s] x [0, t]: full cells by prefix sums, partial
  /// cells by the bilinear corner expansion (exact for piecewise constants).
  double cumulative(double s, double t) const {
    if (s < 0.0 || t < 0.0) throw std::domain_error("GridFunction2D::cumulative: negative bound");
    s = std::min(s, width());
    t = std::min(t, height());
    auto i = std::min(static_cast<std::size_t>(s / hx_), m_);
    auto j = std::min(static_cast<std::size_t>(t / hy_), n_);
    double a = s - static_cast<double>(i) * hx_;
    double b = t - static_cast<double>(j) * hy_;
    if (i >= m_) { i = m_; a = 0.0; }
    if (j >= n_) { j = n_; b = 0.0; }
    double full = hx_ * hy_ * psum(i, j);
    double col = (i < m_) ? a * hy_ * (psum(i + 1, j) - psum(i, j)) : 0.0;
    double rowp = (j < n_) ? b * hx_ * (psum(i, j + 1) - psum(i, j)) : 0.0;
    double corner = (i < m_ && j < n_) ? a * b * at(i, j) : 0.0;
    return full + col + rowp + corner;
  }

  /// Exact integral of row i over [0, t] in the second variable.
  double row_cumulative(std::size_t i, double t) const {
    if (t < 0.0) throw std::domain_error("GridFunction2D::row_cumulative: negative bound");
    t = std::min(t, height());
    auto j = std::min(static_cast<std::size_t>(t / hy_), n_);
    double part = (j < n_) ? (t - static_cast<double>(j) * hy_) * at(i, j) : 0.0;
    return hy_ * (psum(i + 1, j) - psum(i, j)) + part;
  }

  GridFunction2D scaled(double c) const {
    if (!(c >= 0.0) || !is_finite(c))
      throw std::invalid_argument("GridFunction2D::scaled: factor must be nonnegative");
    std::vector<double> v = values_;
    for (double& x : v) x *= c;
    return GridFunction2D(hx_, hy_, m_, n_, std::move(v));
  }

  bool same_geometry(const GridFunction2D& o) const {
    return m_ == o.m_ && n_ == o.n_ && approx_eq(hx_, o.hx_) && approx_eq(hy_, o.hy_);
  }

  friend GridFunction2D operator+(const GridFunction2D& a, const GridFunction2D& b) {
    if (!a.same_geometry(b)) throw std::invalid_argument("GridFunction2D: mismatched grids in +");
    std::vector<double> v = a.values_;
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += b.values_[k];
    return GridFunction2D(a.hx_, a.hy_, a.m_, a.n_, std::move(v));
  }

  std::vector<std::vector<double>> rows() const {
    std::vector<std::vector<double>> out(m_);
    for (std::size_t i = 0; i < m_; ++i)
      out[i].assign(values_.begin() + static_cast<long>(i * n_),
                    values_.begin() + static_cast<long>((i + 1) * n_));
    return out;
  }

 private:
  void init() {
    if (!(hx_ > 0.0) || !(hy_ > 0.0) || !is_finite(hx_) || !is_finite(hy_))
      throw std::invalid_argument("GridFunction2D: cell sizes must be positive and finite");
    for (double v : values_)
      if (!(v >= 0.0) || !is_finite(v))
        throw std::invalid_argument("GridFunction2D: values must be nonnegative and finite");
    prefix_.assign((m_ + 1) * (n_ + 1), 0.0);
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        pref(i + 1, j + 1) = at(i, j) + pref(i, j + 1) + pref(i + 1, j) - pref(i, j);
  }

  double& pref(std::size_t i, std::size_t j) { return prefix_[i * (n_ + 1) + j]; }
  double psum(std::size_t i, std::size_t j) const { return prefix_[i * (n_ + 1) + j]; }

  double hx_, hy_;
  std::size_t m_, n_;
  std::vector<double> values_;  // row-major, values_[i*n + j]
  std::vector<double> prefix_;  // (m+1) x (n+1) corner sums of cell values
};

/// Exponent pair with the derived index r = pq/(p-q), defined only for p > q.
struct Exponents {
  double p;
  double q;

  Exponents(double p_, double q_) : p(p_), q(q_) {
    if (!(p > 0.0) || !(q > 0.0) || !is_finite(p) || !is_finite(q))
      throw std::invalid_argument("Exponents: p and q must be positive and finite");
  }

  bool has_r() const { return p > q; }

  double r() const {
    if (!has_r()) throw std::domain_error("Exponents::r: requires p > q");
    return p * q / (p - q);
  }
};

inline double cumulative_integral(const GridFunction2D& f, double s, double t) {
  return f.cumulative(s, t);
}

}  // namespace lorentz
