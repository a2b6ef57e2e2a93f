#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "lorentz/common.hpp"
#include "lorentz/grid.hpp"

namespace lorentz {

/// a_k rule for the staircase examples: 1/(1+k)^{1/p} unless a geometric
/// ratio is supplied.
struct CoefficientRule {
  bool geometric = false;
  double ratio = 0.5;  // only for geometric

  double operator()(std::size_t k, double p) const {
    if (geometric) return std::pow(ratio, static_cast<double>(k));
    return std::pow(1.0 / (1.0 + static_cast<double>(k)), 1.0 / p);
  }
};

/// Block-column staircase on an N x N unit grid: column k carries the value
/// a_k on height k+1. Its rows are already decreasing in the second variable.
inline GridFunction2D make_r25i(std::size_t N, double p, CoefficientRule rule = {}) {
  if (N == 0) throw std::invalid_argument("make_r25i: N must be positive");
  std::vector<double> flat(N * N, 0.0);
  for (std::size_t k = 0; k < N; ++k) {
    double a = rule(k, p);
    for (std::size_t j = 0; j <= k; ++j) flat[k * N + j] = a;
  }
  return GridFunction2D(1.0, 1.0, N, N, std::move(flat));
}

/// Diagonal-block function on an N x N unit grid: value a_k on the k-th
/// diagonal unit cell, default a_k = 2^{-k}.
inline GridFunction2D make_r25ii(std::size_t N, double p,
                                 CoefficientRule rule = {.geometric = true, .ratio = 0.5}) {
  if (N == 0) throw std::invalid_argument("make_r25ii: N must be positive");
  std::vector<double> flat(N * N, 0.0);
  for (std::size_t k = 0; k < N; ++k) flat[k * N + k] = rule(k, p);
  return GridFunction2D(1.0, 1.0, N, N, std::move(flat));
}

/// Indicator of the L-shaped region [0,3]x[0,1] plus [2,3]x[1,2] on a 3 x 2
/// unit grid (columns of heights 1, 1, 2).
inline GridFunction2D make_prop21_witness() {
  return GridFunction2D(1.0, 1.0, {{1.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}});
}

/// Indicator of the unit square as a single unit cell.
inline GridFunction2D make_unit_square() { return GridFunction2D(1.0, 1.0, {{1.0}}); }

/// The 2 x 2 grid separating the corner average of the iterated rearrangement
/// from the iterated average (values 4,1 / 3,2 on unit cells).
inline GridFunction2D make_separation_witness() {
  return GridFunction2D(1.0, 1.0, {{4.0, 1.0}, {3.0, 2.0}});
}

/// Coefficient rule token: "harmonic" or "geometric:<ratio>".
inline CoefficientRule parse_coefficient_rule(const std::string& token) {
  if (token == "harmonic") return CoefficientRule{};
  if (token.rfind("geometric:", 0) == 0)
    return CoefficientRule{.geometric = true, .ratio = std::stod(token.substr(10))};
  throw std::invalid_argument("unknown coefficient rule: " + token);
}

/// Builtin generator lookup by CLI token; the rule overrides each example's
/// default coefficients when given.
inline GridFunction2D builtin_grid(const std::string& name, std::size_t N, double p,
                                   const std::string& rule_token = {}) {
  if (name == "r25i")
    return rule_token.empty() ? make_r25i(N, p) : make_r25i(N, p, parse_coefficient_rule(rule_token));
  if (name == "r25ii")
    return rule_token.empty() ? make_r25ii(N, p)
                              : make_r25ii(N, p, parse_coefficient_rule(rule_token));
  if (name == "prop21-witness") return make_prop21_witness();
  if (name == "unit-square") return make_unit_square();
  if (name == "separation-witness") return make_separation_witness();
  throw std::invalid_argument("unknown builtin example: " + name);
}

/// Random grid with a sprinkling of zero cells, for property tests.
inline GridFunction2D random_grid(Rng& rng, std::size_t m, std::size_t n, double hx = 1.0,
                                  double hy = 1.0, double max_value = 10.0,
                                  double zero_prob = 0.2) {
  std::vector<double> flat(m * n);
  for (double& x : flat) x = rng.unit() < zero_prob ? 0.0 : rng.uniform(0.0, max_value);
  return GridFunction2D(hx, hy, m, n, std::move(flat));
}

}  // namespace lorentz
