// Runs every acceptance criterion and prints one status line per criterion,
// followed by the individual checks of any criterion that failed.

#include <cstdio>
#include <cstring>

#include "rm2/verify.hpp"

int main(int argc, char** argv) {
  const bool verbose = argc > 1 && std::strcmp(argv[1], "-v") == 0;
  int failed = 0;
  for (int id = 1; id <= rm2::verify::kCriterionCount; ++id) {
    const rm2::verify::SuiteReport r = rm2::verify::criterion(id);
    const bool ok = r.passed();
    failed += ok ? 0 : 1;
    std::printf("criterion %2d: %s  (%zu checks, %.2f s)\n", id, ok ? "PASS" : "FAIL", r.checks.size(), r.seconds);
    for (const auto& c : r.checks)
      if (verbose || !c.passed)
        std::printf("    [%s] %s: value %.6g, threshold %.6g%s%s\n", c.passed ? "ok" : "FAIL", c.name.c_str(), c.value,
                    c.threshold, c.detail.empty() ? "" : " -- ", c.detail.c_str());
    for (const auto& n : r.notes) std::printf("    note: %s\n", n.c_str());
  }
  std::printf("%d of %d criteria failed\n", failed, rm2::verify::kCriterionCount);
  return failed == 0 ? 0 : 1;
}
