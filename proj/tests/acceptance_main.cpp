// Acceptance suite: runs every verification criterion at full scale and
// prints one pass/fail line per criterion. Exit code 0 only when all pass.

#include <cstdio>
#include <iostream>

#include "lorentz/verify.hpp"

int main() {
  lorentz::VerifyOptions opt;
  opt.scale = lorentz::VerifyOptions::Scale::Full;
  opt.seed = 42;
  auto results = lorentz::run_verification(opt);
  for (const auto& r : results) {
    std::printf("%s  %-34s tol=%-8g %6.2fs (budget %gs)\n", r.pass ? "PASS" : "FAIL",
                r.id.c_str(), r.tolerance, r.runtime_s, r.budget_s);
    if (!r.pass) {
      std::printf("      expected: %s\n", r.expected.c_str());
      std::printf("      observed: %s\n", r.observed.c_str());
    }
  }
  bool ok = lorentz::all_pass(results);
  std::printf("%s (%zu criteria)\n", ok ? "ALL PASS" : "FAILURES PRESENT", results.size());
  return ok ? 0 : 1;
}
