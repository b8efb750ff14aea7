// Runs the full acceptance suite and prints one PASS/FAIL line per criterion,
// followed by the measured values. Exit status 0 iff every criterion passes.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <thread>

#include "lomax_records/verification.hpp"

int main() {
  using namespace lomax_records;
  std::uint64_t seed = kDefaultSeed;
  if (const char* env = std::getenv("RECORD_LOMAX_SEED")) seed = std::strtoull(env, nullptr, 10);
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());

  const VerificationReport report = run_verification(Suite::Full, seed, workers);
  for (const auto& c : report.criteria) {
    std::printf("%s criterion %d: %s\n", c.passed ? "PASS" : "FAIL", c.id, c.title.c_str());
  }
  std::printf("\n");
  for (std::size_t i = 0; i < report.criteria.size(); ++i) {
    const auto& c = report.criteria[i];
    const auto& t = report.timings[i];
    if (t.budget_seconds > 0.0) {
      std::printf("criterion %d (%.2f s, budget %.0f s)\n", c.id, t.seconds, t.budget_seconds);
    } else {
      std::printf("criterion %d (%.2f s)\n", c.id, t.seconds);
    }
    for (const auto& d : c.details) std::printf("    %s\n", d.c_str());
  }
  return report.all_passed() ? EXIT_SUCCESS : EXIT_FAILURE;
}
