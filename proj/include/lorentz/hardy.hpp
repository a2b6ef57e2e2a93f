#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "lorentz/common.hpp"
#include "lorentz/grid.hpp"
#include "lorentz/rearrange.hpp"

namespace lorentz {

/// Averaging operator in one variable: (1/t) * integral of g over [0, t].
inline double hardy_1d(const GridFunction1D& g, double t) {
  if (!(t > 0.0)) throw std::domain_error("hardy_1d: t must be positive");
  return g.cumulative(t) / t;
}

struct Point {
  double s = 0.0;
  double t = 0.0;
};

/// Pointwise samples of an operator, tagged with the operator and input name.
struct OperatorSample {
  std::string tag;
  std::vector<Point> points;
  std::vector<double> values;

  void write_csv(std::ostream& os) const {
    os << "s,t,value\n";
    for (std::size_t k = 0; k < points.size(); ++k)
      os << points[k].s << ',' << points[k].t << ',' << values[k] << '\n';
  }
};

enum class OpKind { S2, FStarStar, S21 };

inline const char* op_name(OpKind op) {
  switch (op) {
    case OpKind::S2: return "s2";
    case OpKind::FStarStar: return "fstarstar";
    case OpKind::S21: return "s21";
  }
  return "?";
}

/// Two-variable Hardy average (1/(st)) * integral of f over [0,s] x [0,t].
inline double s2_at(const GridFunction2D& f, double s, double t) {
  if (!(s > 0.0) || !(t > 0.0)) throw std::domain_error("s2: evaluation point must be strictly positive");
  return f.cumulative(s, t) / (s * t);
}

inline OperatorSample s2(const GridFunction2D& f, const std::vector<Point>& pts,
                         const std::string& input_name = "f") {
  OperatorSample out{std::string("s2(") + input_name + ")", pts, {}};
  out.values.reserve(pts.size());
  for (const auto& p : pts) out.values.push_back(s2_at(f, p.s, p.t));
  return out;
}

/// Corner average of the iterated rearrangement: S2 applied to f rearranged
/// in y then x.
class FStarStarEvaluator {
 public:
  explicit FStarStarEvaluator(const GridFunction2D& f) : r_(rearrange_yx(f)) {}
  double at(double s, double t) const { return s2_at(r_, s, t); }
  const GridFunction2D& rearranged() const { return r_; }

 private:
  GridFunction2D r_;
};

inline double fstarstar_at(const GridFunction2D& f, double s, double t) {
  return FStarStarEvaluator(f).at(s, t);
}

inline OperatorSample fstarstar(const GridFunction2D& f, const std::vector<Point>& pts,
                                const std::string& input_name = "f") {
  FStarStarEvaluator ev(f);
  OperatorSample out{std::string("fstarstar(") + input_name + ")", pts, {}};
  out.values.reserve(pts.size());
  for (const auto& p : pts) out.values.push_back(ev.at(p.s, p.t));
  return out;
}

/// Iterated average-then-rearrange operator:
///   h_t(x) = (1/t) * integral over [0,t] of the y-rearranged rows,
///   value(s, t) = (1/s) * integral over [0,s] of h_t sorted descending in x.
/// The descending order of h_t genuinely depends on t, so each t gets its own
/// sort; rows of evaluation points at fixed t share it.
class S21Evaluator {
 public:
  explicit S21Evaluator(const GridFunction2D& f) : fy_(rearrange_y(f)) {}

  /// Sorted column averages at a fixed t, evaluable at many s for O(1) each.
  struct Row {
    double hx = 0.0;
    std::vector<double> prefix;  // prefix sums of the sorted averages

    double value_at(double s) const {
      if (!(s > 0.0)) throw std::domain_error("s21: evaluation point must be strictly positive");
      std::size_t m = prefix.size() - 1;
      double w = hx * static_cast<double>(m);
      double cum;
      if (s >= w) {
        cum = hx * prefix[m];
      } else {
        auto i = std::min(static_cast<std::size_t>(s / hx), m - 1);
        cum = hx * prefix[i] + (s - static_cast<double>(i) * hx) * (prefix[i + 1] - prefix[i]);
      }
      return cum / s;
    }
  };

  Row row(double t) const {
    if (!(t > 0.0)) throw std::domain_error("s21: evaluation point must be strictly positive");
    std::vector<double> h(fy_.m());
    for (std::size_t i = 0; i < fy_.m(); ++i) h[i] = fy_.row_cumulative(i, t) / t;
    std::stable_sort(h.begin(), h.end(), std::greater<>());
    Row r;
    r.hx = fy_.hx();
    r.prefix.resize(h.size() + 1, 0.0);
    for (std::size_t i = 0; i < h.size(); ++i) r.prefix[i + 1] = r.prefix[i] + h[i];
    return r;
  }

  double at(double s, double t) const { return row(t).value_at(s); }

  const GridFunction2D& row_rearranged() const { return fy_; }

 private:
  GridFunction2D fy_;
};

inline double s21_at(const GridFunction2D& f, double s, double t) {
  return S21Evaluator(f).at(s, t);
}

inline OperatorSample s21(const GridFunction2D& f, const std::vector<Point>& pts,
                          const std::string& input_name = "f") {
  S21Evaluator ev(f);
  OperatorSample out{std::string("s21(") + input_name + ")", pts, {}};
  out.values.reserve(pts.size());
  for (const auto& p : pts) out.values.push_back(ev.at(p.s, p.t));
  return out;
}

inline double op_at(OpKind op, const GridFunction2D& f, double s, double t) {
  switch (op) {
    case OpKind::S2: return s2_at(f, s, t);
    case OpKind::FStarStar: return fstarstar_at(f, s, t);
    case OpKind::S21: return s21_at(f, s, t);
  }
  throw std::logic_error("op_at: unknown operator");
}

/// Box indicator c * chi_{[0,a] x [0,b]} detection: constant on a lower-left
/// cell rectangle, zero elsewhere.
struct BoxIndicator {
  double a = 0.0, b = 0.0, c = 0.0;
};

inline std::optional<BoxIndicator> detect_box_indicator(const GridFunction2D& f) {
  double c = 0.0;
  for (double v : f.flat()) c = std::max(c, v);
  if (c <= 0.0) return std::nullopt;
  std::size_t i0 = 0, j0 = 0;
  for (std::size_t i = 0; i < f.m(); ++i)
    for (std::size_t j = 0; j < f.n(); ++j)
      if (f.at(i, j) > 0.0) {
        i0 = std::max(i0, i + 1);
        j0 = std::max(j0, j + 1);
      }
  for (std::size_t i = 0; i < f.m(); ++i)
    for (std::size_t j = 0; j < f.n(); ++j) {
      double want = (i < i0 && j < j0) ? c : 0.0;
      if (f.at(i, j) != want) return std::nullopt;
    }
  return BoxIndicator{static_cast<double>(i0) * f.hx(), static_cast<double>(j0) * f.hy(), c};
}

struct SuperlevelResult {
  double measure = 0.0;
  bool exact = false;      // closed-form region decomposition
  bool truncated = false;  // box-truncated sampling: a lower bound
  double rel_tol = 0.0;    // achieved refinement tolerance when sampled
  int refinements = 0;
};

/// Measure of { (s,t) in box : (op f)(s,t) > lambda }. For box indicators the
/// unbounded-domain measure is computed by exact region decomposition (the
/// three operators coincide there); otherwise midpoint sampling over the box
/// is refined dyadically until two successive levels agree to 0.5%.
inline SuperlevelResult superlevel_measure(OpKind op, const GridFunction2D& f, double lambda,
                                           Box box) {
  if (!(lambda > 0.0)) throw std::domain_error("superlevel_measure: lambda must be positive");
  if (auto ind = detect_box_indicator(f)) {
    // S2 of c*chi_{[0,a]x[0,b]} is c*min(s,a)*min(t,b)/(st); the superlevel
    // region splits into the support box, two side strips with 1/s (1/t)
    // decay and the hyperbolic corner st < abc/lambda.
    SuperlevelResult out;
    out.exact = true;
    if (lambda >= ind->c) {
      out.measure = 0.0;
    } else {
      double mu = lambda / ind->c;
      out.measure = ind->a * ind->b * (1.0 + std::log(1.0 / mu)) / mu;
    }
    return out;
  }

  SuperlevelResult out;
  out.truncated = true;
  double prev = -1.0;
  std::size_t cells = 32;
  const std::size_t max_cells = 2048;
  S21Evaluator s21ev(f);
  FStarStarEvaluator fssev(f);
  for (;; cells *= 2) {
    double dx = box.x / static_cast<double>(cells);
    double dy = box.y / static_cast<double>(cells);
    std::size_t hits = 0;
    for (std::size_t jj = 0; jj < cells; ++jj) {
      double t = (static_cast<double>(jj) + 0.5) * dy;
      std::optional<S21Evaluator::Row> row;
      if (op == OpKind::S21) row = s21ev.row(t);
      for (std::size_t ii = 0; ii < cells; ++ii) {
        double s = (static_cast<double>(ii) + 0.5) * dx;
        double v = (op == OpKind::S2)   ? s2_at(f, s, t)
                   : (op == OpKind::S21) ? row->value_at(s)
                                         : fssev.at(s, t);
        if (v > lambda) ++hits;
      }
    }
    double meas = dx * dy * static_cast<double>(hits);
    ++out.refinements;
    if (prev >= 0.0) {
      double denom = std::max(meas, 1e-300);
      out.rel_tol = std::abs(meas - prev) / denom;
      if (out.rel_tol < 0.005 || cells >= max_cells) {
        out.measure = meas;
        return out;
      }
    }
    prev = meas;
  }
}

}  // namespace lorentz
