// Acceptance suite: one line per criterion, nonzero exit if any fails.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "mft/verify.hpp"

int main(int argc, char** argv) {
  bool verbose = false;
  for (int i = 1; i < argc; ++i) verbose = verbose || std::string(argv[i]) == "-v";
  int failed = 0;
  for (int id = 1; id <= 11; ++id) {
    mft::Criterion c;
    try {
      c = mft::acceptance_criterion(id);
    } catch (const std::exception& ex) {
      c.id = id;
      c.title = "criterion " + std::to_string(id);
      c.detail = std::string("exception: ") + ex.what();
    }
    std::printf("[%s] %2d %-30s max_dev=%.3e  %.2fs%s%s\n", c.pass ? "PASS" : "FAIL", id, c.title.c_str(), c.max_dev,
                c.seconds, c.detail.empty() ? "" : "  ", c.detail.c_str());
    if (verbose || !c.pass)
      for (auto& r : c.reports)
        std::printf("       %s %-50s dev=%.3e tol=%.1e %s\n", r.pass ? "ok " : "BAD", r.check.c_str(), r.max_dev, r.tol,
                    r.detail.c_str());
    std::fflush(stdout);
    if (!c.pass) ++failed;
  }
  std::printf("%d/11 criteria passed\n", 11 - failed);
  return failed ? EXIT_FAILURE : EXIT_SUCCESS;
}
