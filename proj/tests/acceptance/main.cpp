#include <cstdlib>
#include <iostream>
#include <string>

#include "criteria.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = treedyn::acceptance::kDefaultSeed;
  if (argc > 1) seed = std::stoull(argv[1]);
  const auto results = treedyn::acceptance::run_all(seed);
  return treedyn::acceptance::report(results, std::cout) ? EXIT_SUCCESS : EXIT_FAILURE;
}
