#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "lorentz/generators.hpp"
#include "lorentz/norms.hpp"
#include "oracles.hpp"

using namespace lorentz;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const Weight1D kOne = Weight1D::constant(1.0);
const Weight1D kInd = Weight1D::indicator(1.0);
}  // namespace

TEST_CASE("one-variable Lorentz functional") {
  GridFunction1D chi2(1.0, {1.0, 1.0});
  CHECK_THAT(lambda_norm(chi2, kOne, 2.0), WithinRel(std::sqrt(2.0), 1e-14));
  CHECK_THROWS_AS(lambda_norm(chi2, kOne, 0.0), std::invalid_argument);

  GridFunction2D sq = make_unit_square();
  CHECK_THAT(lambda_norm(sq, kOne, 1.0), WithinRel(1.0, 1e-14));

  // brute-force sort+sum oracle on a random grid
  Rng rng(41);
  GridFunction1D g(0.5, {3.0, 1.0, 0.0, 7.0, 2.0});
  std::vector<double> vals = g.values();
  std::sort(vals.begin(), vals.end(), std::greater<>());
  double direct = 0.0;
  Weight1D v = Weight1D::power(1.0, -0.5);
  for (std::size_t k = 0; k < vals.size(); ++k)
    direct += std::pow(vals[k], 3.0) * (v.V(0.5 * (k + 1)) - v.V(0.5 * k));
  CHECK_THAT(lambda_norm(g, v, 3.0), WithinRel(std::pow(direct, 1.0 / 3.0), 1e-12));
  (void)rng;
}

TEST_CASE("two-dimensional functional on the block-column staircase") {
  Weight2D w = Weight2D::product(kInd, kOne);
  GridFunction2D f4 = make_r25i(4, 1.0);
  CHECK_THAT(lambda2_norm(f4, w, 1.0), WithinRel(25.0 / 12.0, 1e-14));
  GridFunction2D sq = make_unit_square();
  CHECK_THAT(lambda2_norm(sq, Weight2D::product(kOne, kOne), 2.0), WithinRel(1.0, 1e-14));
  CHECK_THROWS_AS(lambda2_norm(sq, w, -1.0), std::invalid_argument);
}

TEST_CASE("two-dimensional functional on the diagonal blocks") {
  Weight2D w = Weight2D::product(kInd, kOne);
  GridFunction2D f = make_r25ii(8, 1.0);
  CHECK_THAT(lambda2_norm(f, w, 1.0), WithinRel(1.0, 1e-14));  // only the first block counts
}

TEST_CASE("mixed functional: the block-column staircase stays at 1") {
  for (std::size_t N : {2, 4, 8, 16})
    for (double p : {1.0, 2.0}) {
      GridFunction2D f = make_r25i(N, p);
      CHECK_THAT(mixed_norm(f, kInd, kOne, p, p, MixedOrder::YThenX), WithinRel(1.0, 1e-13));
    }
}

TEST_CASE("mixed functional: order swap sums the diagonal series") {
  GridFunction2D f = make_r25ii(8, 1.0);
  CHECK_THAT(mixed_norm(f, kInd, kOne, 1.0, 1.0, MixedOrder::XThenY),
             WithinRel(2.0 - std::pow(2.0, -7.0), 1e-14));
}

TEST_CASE("mixed functional separates products") {
  // f(x,y) = g(x) h(y): the mixed norm splits into the two 1D norms
  std::vector<double> gs = {3.0, 1.0, 2.0, 0.0};
  std::vector<double> hs = {2.0, 5.0, 1.0};
  std::vector<std::vector<double>> rows;
  for (double gv : gs) {
    std::vector<double> row;
    for (double hv : hs) row.push_back(gv * hv);
    rows.push_back(row);
  }
  GridFunction2D f(0.5, 1.5, rows);
  Weight1D u = Weight1D::indicator(1.0), v = Weight1D::power(1.0, -0.5);
  double p = 2.0, q = 3.0;
  double mixed = mixed_norm(f, u, v, p, q, MixedOrder::YThenX);
  double split = lambda_norm(GridFunction1D(0.5, gs), u, q) *
                 lambda_norm(GridFunction1D(1.5, hs), v, p);
  CHECK_THAT(mixed, WithinRel(split, 1e-12));
}

TEST_CASE("star norm hand values and guards") {
  GridFunction2D sq = make_unit_square();
  CHECK_THAT(star_norm(sq, kInd, kInd, 1.0).value, WithinRel(1.0, 1e-12));
  CHECK_THAT(norm2_starstar(sq, kInd, kInd, 1.0).value, WithinRel(1.0, 1e-12));
  CHECK_THROWS_AS(star_norm(sq, kOne, kOne, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(norm2_starstar(sq, kOne, kOne, 0.0), std::invalid_argument);
}

TEST_CASE("norm chain: two-dim <= star <= corner-average norm") {
  Rng rng(42);
  Weight2D w1 = Weight2D::product(kOne, kOne);
  for (int k = 0; k < 8; ++k) {
    GridFunction2D f = random_grid(rng, 6, 6, 0.5, 0.5);
    double l2 = lambda2_norm(f, w1, 2.0);
    double st = star_norm(f, kOne, kOne, 2.0).value;
    double n2 = norm2_starstar(f, kOne, kOne, 2.0).value;
    CHECK(l2 <= st + 1e-9);
    CHECK(st <= n2 * 1.005 + 1e-9);  // both sides carry 0.1% quadrature
    CHECK(n2 <= 4.0 * l2 * 1.005 + 1e-9);  // per-variable averaging bound at p=2
  }
}

TEST_CASE("star norm triangle inequality on random pairs") {
  Rng rng(43);
  for (int k = 0; k < 8; ++k) {
    GridFunction2D f = random_grid(rng, 6, 6, 0.5, 0.5);
    GridFunction2D g = random_grid(rng, 6, 6, 0.5, 0.5);
    double sf = star_norm(f, kOne, kOne, 2.0).value;
    double sg = star_norm(g, kOne, kOne, 2.0).value;
    double ss = star_norm(f + g, kOne, kOne, 2.0).value;
    CHECK(ss <= (sf + sg) * 1.005 + 1e-9);
  }
}

TEST_CASE("homogeneity and rearrangement invariance") {
  Rng rng(44);
  GridFunction2D f = random_grid(rng, 6, 5, 0.5, 1.0);
  Weight2D w = Weight2D::product(kInd, kOne);
  double c = 2.75;
  CHECK_THAT(lambda2_norm(f.scaled(c), w, 2.0), WithinRel(c * lambda2_norm(f, w, 2.0), 1e-12));
  CHECK_THAT(lambda_norm(f.scaled(c), kOne, 1.5), WithinRel(c * lambda_norm(f, kOne, 1.5), 1e-12));
  CHECK_THAT(mixed_norm(f.scaled(c), kInd, kOne, 2.0, 1.0, MixedOrder::YThenX),
             WithinRel(c * mixed_norm(f, kInd, kOne, 2.0, 1.0, MixedOrder::YThenX), 1e-12));
  CHECK_THAT(weak_lp_norm(f.scaled(c), 2.0), WithinRel(c * weak_lp_norm(f, 2.0), 1e-12));
  // the two-dimensional functional only sees the rearrangement
  CHECK_THAT(lambda2_norm(rearrange_yx(f), w, 2.0), WithinRel(lambda2_norm(f, w, 2.0), 1e-13));
}

TEST_CASE("quadrature norms scale exactly") {
  Rng rng(47);
  GridFunction2D f = random_grid(rng, 5, 5, 0.5, 0.5);
  double c = 3.25;
  CHECK_THAT(star_norm(f.scaled(c), kOne, kOne, 2.0).value,
             WithinRel(c * star_norm(f, kOne, kOne, 2.0).value, 1e-12));
  CHECK_THAT(norm2_starstar(f.scaled(c), kOne, kOne, 2.0).value,
             WithinRel(c * norm2_starstar(f, kOne, kOne, 2.0).value, 1e-12));
}

TEST_CASE("member product weights keep the star norm a norm") {
  // indicator pair passes the factor conditions at p = 2; the triangle
  // inequality and the lower equivalence bound are checkable directly
  Rng rng(48);
  for (int k = 0; k < 6; ++k) {
    GridFunction2D f = random_grid(rng, 5, 5, 0.25, 0.25);
    GridFunction2D g = random_grid(rng, 5, 5, 0.25, 0.25);
    double sf = star_norm(f, kInd, kInd, 2.0).value;
    double sg = star_norm(g, kInd, kInd, 2.0).value;
    double ss = star_norm(f + g, kInd, kInd, 2.0).value;
    CHECK(ss <= (sf + sg) * 1.005 + 1e-9);
    CHECK(lambda2_norm(f, Weight2D::product(kInd, kInd), 2.0) <= sf + 1e-9);
  }
}

TEST_CASE("mixed functional is dominated by the two-dimensional one for decreasing u") {
  Rng rng(45);
  std::pair<Weight1D, Weight1D> pairs[] = {
      {kInd, kOne}, {Weight1D::power(1.0, -0.5), Weight1D::power(1.0, 0.0)}};
  for (int k = 0; k < 25; ++k) {
    GridFunction2D f = random_grid(rng, 8, 8, 0.5, 0.5);
    for (const auto& [u, v] : pairs)
      for (double p : {1.0, 2.0})
        CHECK(approx_le(mixed_norm(f, u, v, p, p, MixedOrder::YThenX),
                        lambda2_norm(f, Weight2D::product(u, v), p), 1e-9, 1e-9));
  }
}

TEST_CASE("weak-type functional") {
  GridFunction2D sq = make_unit_square();
  CHECK(weak_lp_norm(sq, 1.0) == 1.0);
  CHECK_THROWS_AS(weak_lp_norm(sq, 0.0), std::invalid_argument);

  // monotonicity under pointwise domination
  Rng rng(46);
  GridFunction2D f = random_grid(rng, 5, 5);
  GridFunction2D g = f + random_grid(rng, 5, 5);
  CHECK(weak_lp_norm(f, 1.5) <= weak_lp_norm(g, 1.5) + 1e-12);

  // exact jump supremum: two-level function by hand
  GridFunction2D two(1.0, 1.0, {{3.0, 1.0}});
  // candidates: 3 * 1^(1/p) and 1 * 2^(1/p)
  CHECK_THAT(weak_lp_norm(two, 1.0), WithinRel(3.0, 1e-14));
  CHECK_THAT(weak_lp_norm(two, 0.5), WithinRel(4.0, 1e-14));  // 1 * 2^2 = 4 wins
}

TEST_CASE("weak-type scan of the averaged unit square diverges") {
  GridFunction2D sq = make_unit_square();
  std::vector<double> lambdas = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  WeakScan scan = weak_lp_scan(OpKind::S2, sq, 1.0, lambdas, Box{10.0, 10.0});
  CHECK(scan.all_exact);
  double prev = 0.0;
  for (const auto& e : scan.entries) {
    CHECK_THAT(e.weighted, WithinRel(1.0 + std::log(1.0 / e.lambda), 1e-10));
    CHECK(e.weighted > std::log(1.0 / e.lambda) + e.lambda - 1.0);
    CHECK(e.weighted > prev);  // running supremum grows without bound
    prev = e.weighted;
  }
  CHECK(scan.diverges(10.0));
  CHECK_FALSE(scan.diverges(1e6));
}

TEST_CASE("divergent truncation sequences are monotone, never overflow") {
  // the block-column staircase: the p-th power grows like the harmonic sum
  Weight2D w = Weight2D::product(kInd, kOne);
  double prev = 0.0;
  for (std::size_t N : {2, 4, 8, 16, 32}) {
    double val = lambda2_norm(make_r25i(N, 1.0), w, 1.0);
    CHECK(std::isfinite(val));
    CHECK(val > prev);
    prev = val;
  }
}
