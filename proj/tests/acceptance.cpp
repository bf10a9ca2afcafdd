// Runs every acceptance criterion and prints one line per criterion.
#include <cstdio>
#include <string>

#include "actmux/suites.hpp"

#ifndef ACTMUX_GOLDEN_DIR
#define ACTMUX_GOLDEN_DIR "tests/golden"
#endif

int main(int argc, char** argv) {
  actmux::SuiteOptions opt{ACTMUX_GOLDEN_DIR};
  std::vector<std::string> names;
  for (int k = 1; k < argc; ++k) names.push_back(argv[k]);
  if (names.empty()) names = actmux::suite_names();
  int failed = 0;
  for (const std::string& n : names) {
    actmux::SuiteResult r = actmux::run_suite(n, opt);
    std::printf("[%2d] %-14s %s  %.2fs/%.0fs  %s\n", r.id, r.name.c_str(), r.passed ? "PASS" : "FAIL", r.seconds,
                r.limit_seconds, r.detail.c_str());
    std::fflush(stdout);
    failed += !r.passed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(names.size()) - failed, names.size());
  return failed == 0 ? 0 : 1;
}
