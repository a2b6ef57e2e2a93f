#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>

#include "lorentz/common.hpp"
#include "lorentz/grid.hpp"

namespace lorentz {

/// One-dimensional weight from a closed family so that the primitives
///   V(r)      = integral of v over [0, r]
///   T(p, r)   = integral of v(x) x^{-p} over [r, oo)
///   tilde(s)  = T(1, s)
///   tilde_V(x)= integral of tilde over [0, x]  ( = V(x) + x*tilde(x) )
/// are evaluated in closed form (Power, Indicator) or as exact finite sums
/// with a vanishing tail (Step). Divergent integrals are reported as +inf.
class Weight1D {
 public:
  enum class Kind { Power, Indicator, Step };

  /// v(x) = c * x^alpha with alpha > -1 (local integrability at the origin).
  static Weight1D power(double c, double alpha) {
    if (!(c > 0.0) || !is_finite(c)) throw std::invalid_argument("Weight1D::power: c must be positive");
    if (!(alpha > -1.0) || !is_finite(alpha))
      throw std::invalid_argument("Weight1D::power: requires alpha > -1");
    Weight1D w(Kind::Power);
    w.c_ = c;
    w.alpha_ = alpha;
    return w;
  }

  static Weight1D constant(double c) { return power(c, 0.0); }

  /// v = c on [0, a], zero beyond.
  static Weight1D indicator(double a, double c = 1.0) {
    if (!(a > 0.0) || !is_finite(a)) throw std::invalid_argument("Weight1D::indicator: a must be positive");
    if (!(c > 0.0) || !is_finite(c)) throw std::invalid_argument("Weight1D::indicator: c must be positive");
    Weight1D w(Kind::Indicator);
    w.a_ = a;
    w.c_ = c;
    return w;
  }

  static Weight1D step(GridFunction1D g) {
    if (!(g.mass() > 0.0)) throw std::invalid_argument("Weight1D::step: weight must have positive mass");
    Weight1D w(Kind::Step);
    w.step_ = std::move(g);
    return w;
  }

  Kind kind() const { return kind_; }
  double power_scale() const { return c_; }
  double power_exponent() const { return alpha_; }
  double indicator_edge() const { return a_; }
  const GridFunction1D& step_grid() const { return *step_; }

  /// Pointwise value for x > 0; zero for x <= 0 and beyond a Step/Indicator support.
  double value(double x) const {
    if (x <= 0.0) return 0.0;
    switch (kind_) {
      case Kind::Power: return c_ * std::pow(x, alpha_);
      case Kind::Indicator: return x <= a_ ? c_ : 0.0;
      case Kind::Step: return step_->value_at(x);
    }
    return 0.0;
  }

  double V(double r) const {
    if (r < 0.0) throw std::domain_error("Weight1D::V: negative bound");
    switch (kind_) {
      case Kind::Power: return c_ * std::pow(r, alpha_ + 1.0) / (alpha_ + 1.0);
      case Kind::Indicator: return c_ * std::min(r, a_);
      case Kind::Step: return step_->cumulative(r);
    }
    return 0.0;
  }

  /// Tail integral of v(x) x^{-p} over [r, oo); +inf when divergent.
  double T(double p, double r) const {
    if (!(p > 0.0)) throw std::invalid_argument("Weight1D::T: p must be positive");
    if (r < 0.0) throw std::domain_error("Weight1D::T: negative bound");
    switch (kind_) {
      case Kind::Power: {
        double e = alpha_ - p;  // integrand exponent
        if (e >= -1.0) return kInf;
        if (r == 0.0) return kInf;  // x^{e} has e < -1, divergent at the origin
        return c_ * std::pow(r, e + 1.0) / (-(e + 1.0));
      }
      case Kind::Indicator: {
        if (r >= a_) return 0.0;
        return c_ * power_tail_piece(p, r, a_);
      }
      case Kind::Step: {
        const auto& g = *step_;
        double total = 0.0;
        for (std::size_t k = 0; k < g.cells(); ++k) {
          double lo = static_cast<double>(k) * g.cell_width();
          double hi = lo + g.cell_width();
          if (hi <= r || g.value(k) == 0.0) continue;
          double piece = power_tail_piece(p, std::max(r, lo), hi);
          if (std::isinf(piece)) return kInf;
          total += g.value(k) * piece;
        }
        return total;
      }
    }
    return 0.0;
  }

  double tilde(double s) const { return T(1.0, s); }

  /// Exact primitive of tilde; integration by parts gives V(x) + x*tilde(x).
  double tilde_V(double x) const {
    if (x < 0.0) throw std::domain_error("Weight1D::tilde_V: negative bound");
    if (x == 0.0) return 0.0;
    double td = tilde(x);
    if (std::isinf(td)) return kInf;
    return V(x) + x * td;
  }

  /// +inf for Power weights, the support edge otherwise.
  double support_end() const {
    switch (kind_) {
      case Kind::Power: return kInf;
      case Kind::Indicator: return a_;
      case Kind::Step: return step_->width();
    }
    return kInf;
  }

  bool is_decreasing() const {
    switch (kind_) {
      case Kind::Power: return alpha_ <= 0.0;
      case Kind::Indicator: return true;
      case Kind::Step: {
        const auto& v = step_->values();
        for (std::size_t k = 0; k + 1 < v.size(); ++k)
          if (v[k] < v[k + 1]) return false;
        return true;
      }
    }
    return false;
  }

 private:
  explicit Weight1D(Kind k) : kind_(k) {}

  // integral of x^{-p} over [lo, hi], 0 <= lo < hi < oo
  static double power_tail_piece(double p, double lo, double hi) {
    if (lo == 0.0 && p >= 1.0) return kInf;
    if (p == 1.0) return std::log(hi / lo);
    return (std::pow(hi, 1.0 - p) - std::pow(lo, 1.0 - p)) / (1.0 - p);
  }

  Kind kind_;
  double c_ = 1.0;
  double alpha_ = 0.0;
  double a_ = 1.0;
  std::optional<GridFunction1D> step_;
};

/// Weight on the quadrant: a product of two 1D weights or a 2D step grid.
/// Either way the mass of any axis-aligned rectangle (hence of any staircase
/// region) is exact.
class Weight2D {
 public:
  static Weight2D product(Weight1D u, Weight1D v) {
    Weight2D w;
    w.u_ = std::move(u);
    w.v_ = std::move(v);
    return w;
  }

  static Weight2D step(GridFunction2D g) {
    if (!(g.mass() > 0.0)) throw std::invalid_argument("Weight2D::step: weight must have positive mass");
    Weight2D w;
    w.grid_ = std::move(g);
    return w;
  }

  bool is_product() const { return u_.has_value(); }
  const Weight1D& u() const { return *u_; }
  const Weight1D& v() const { return *v_; }
  const GridFunction2D& step_grid() const { return *grid_; }

  double value(double s, double t) const {
    if (is_product()) return u_->value(s) * v_->value(t);
    return grid_->value_at(s, t);
  }

  /// Exact mass of [x1, x2] x [y1, y2].
  double rect_mass(double x1, double x2, double y1, double y2) const {
    if (x2 < x1 || y2 < y1) throw std::invalid_argument("Weight2D::rect_mass: empty rectangle");
    if (is_product()) return (u_->V(x2) - u_->V(x1)) * (v_->V(y2) - v_->V(y1));
    return grid_->cumulative(x2, y2) - grid_->cumulative(x1, y2) - grid_->cumulative(x2, y1) +
           grid_->cumulative(x1, y1);
  }

 private:
  Weight2D() = default;
  std::optional<Weight1D> u_, v_;
  std::optional<GridFunction2D> grid_;
};

}  // namespace lorentz
