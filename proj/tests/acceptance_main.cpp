#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "isurf/rng.hpp"
#include "isurf/selftest.hpp"

// Runs the nine acceptance criteria at full scale, one verdict line each.
// Exit status is the number of failing criteria.
int main(int argc, char** argv) {
  int scale_div = 1;
  std::uint64_t seed = isurf::kDefaultSeed;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--smoke") scale_div = 10;
    else if (a == "--seed" && i + 1 < argc) seed = std::strtoull(argv[++i], nullptr, 0);
  }

  std::vector<isurf::CriterionResult> results = isurf::run_acceptance(scale_div, seed);
  int failures = 0;
  for (const isurf::CriterionResult& r : results) {
    if (r.pass) {
      std::printf("PASS %-22s (%6.2fs, limit %.0fs)\n", r.name.c_str(), r.seconds, r.limit);
    } else {
      ++failures;
      std::printf("FAIL %-22s (%6.2fs, limit %.0fs) %s\n", r.name.c_str(), r.seconds, r.limit,
                  r.detail.c_str());
    }
  }
  std::printf("%d/%d criteria passed (seed %llu, scale 1/%d)\n",
              static_cast<int>(results.size()) - failures, static_cast<int>(results.size()),
              static_cast<unsigned long long>(seed), scale_div);
  return failures;
}
