// One pass/fail line per acceptance criterion; exit status 0 iff all pass.
#include <cstdio>

#include "bisteklov/verify/suite.hpp"

int main() {
  int failed = 0;
  for (const auto& check : bisteklov::verify::acceptance_checks()) {
    const auto r = check();
    std::printf("%s\n", bisteklov::verify::format_line(r).c_str());
    std::fflush(stdout);
    failed += !r.passed;
  }
  std::printf("%d/10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
