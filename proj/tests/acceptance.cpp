// Runs the twelve acceptance suites at full size and prints one line each.
// Exit status is nonzero when any suite fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "drinfeld/checks.hpp"

int main(int argc, char** argv) {
  const drinfeld::u64 seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20240611;
  const auto start = std::chrono::steady_clock::now();
  auto results = drinfeld::checks::run_all(seed);
  int failed = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& c = results[i];
    std::printf("[%s] %2zu. %s: %zu checks, %zu failures; %s\n", c.passed() ? "PASS" : "FAIL", i + 1,
                c.name.c_str(), c.trials, c.failures, c.note.c_str());
    failed += !c.passed();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of %zu criteria passed in %.1f s (seed %llu)\n", static_cast<int>(results.size()) - failed,
              results.size(), secs, static_cast<unsigned long long>(seed));
  return failed ? 1 : 0;
}
