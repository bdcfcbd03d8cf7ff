// One line per acceptance criterion; nonzero exit if any is red.
#include <cstdio>

#include "cld/suite.hpp"

int main() {
  cld::SuiteConfig c;
  c.criteria_only = true;
  const cld::SuiteReport r = cld::run_suite(c);
  for (const auto& k : r.checks)
    std::printf("criterion %2d %s  measured %.3g (tol %.3g, %.1fs)  %s\n", k.criterion,
                k.pass ? "PASS" : "FAIL", k.measured, k.tolerance, k.seconds, k.detail.c_str());
  std::printf("%d passed, %d failed\n", r.passed, r.failed);
  return r.failed == 0 ? 0 : 1;
}
