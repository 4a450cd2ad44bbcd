// Acceptance suite runner: one PASS/FAIL line per criterion, nonzero exit on
// any failure. Also reachable as `pencilspec selftest` through the C API.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

#include "pencilspec/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 2026;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  const bool ok = pencilspec::run_acceptance(std::cout, seed);
  return ok ? 0 : 1;
}
