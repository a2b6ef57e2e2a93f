// Emits lambda vs lambda * |{S2 f > lambda}| for the averaged unit-square
// indicator: the weighted superlevel mass grows like 1 + log(1/lambda), so the
// weak-type functional is unbounded.
#include <cmath>
#include <cstdio>

#include "lorentz/generators.hpp"
#include "lorentz/norms.hpp"

int main() {
  using namespace lorentz;
  GridFunction2D sq = make_unit_square();
  std::vector<double> lambdas;
  for (int k = 1; k <= 6; ++k) lambdas.push_back(std::pow(10.0, -k));
  WeakScan scan = weak_lp_scan(OpKind::S2, sq, 1.0, lambdas, Box{10.0, 10.0});
  std::printf("lambda,weighted_mass,log_bound\n");
  for (const auto& e : scan.entries)
    std::printf("%.1e,%.6f,%.6f\n", e.lambda, e.weighted,
                std::log(1.0 / e.lambda) + e.lambda - 1.0);
  std::printf("# running sup = %.6f\n", scan.sup);
  return 0;
}
