// Exhaustive staircase suprema for a product weight at growing resolution,
// compared against the closed-form product constant.
#include <cstdio>

#include "lorentz/weight_classes.hpp"

int main() {
  using namespace lorentz;
  Weight1D u = Weight1D::indicator(1.0);
  Weight2D w = Weight2D::product(u, u);
  double formula = b2_product_formula(u, u).constant;
  std::printf("closed form: %s\n", is_finite(formula) ? "finite" : "divergent");
  std::printf("cells,sup\n");
  for (std::size_t cells : {4, 6, 8, 10, 12}) {
    WeightVerdict v = b21_staircase_sup(w, Box{4.0, 4.0}, cells, cells);
    std::printf("%zu,%.10f\n", cells, v.constant);
  }
  return 0;
}
